#include "doctest.h"

#include <cmath>

#include "gsum/certify.hpp"
#include "gsum/io.hpp"
#include "oracles.hpp"

using namespace gsum;

namespace {
ExponentialMixture single_atom(double rate) {
    ExponentialMixture m;
    m.name = "atom";
    m.atoms = {{1.0, rate}};
    return m;
}
} // namespace

TEST_CASE("centred mixture mean: pinned closed-form case") {
    // gamma = 1, c = 3, Phi = e^{-x}: the two ends of the majorization order.
    auto v11 = mixture_mean_centred(1.0, {1.0, 1.0}, 3.0, single_atom(1.0));
    auto v20 = mixture_mean_centred(1.0, {2.0, 0.0}, 3.0, single_atom(1.0));
    CHECK(v11.value == doctest::Approx(0.09196986029286058).epsilon(1e-12));
    CHECK(v20.value == doctest::Approx(0.084825419347453706).epsilon(1e-12));
    CHECK(v11.value - v20.value ==
          doctest::Approx(0.0071444409454068739).epsilon(1e-9));
    // reflexivity: identical vectors give margin zero
    CHECK(v11.value - v11.value == 0.0);
    // domain guard: sum a_j must stay below c^2/(gamma^2 n)
    CHECK_THROWS_AS(mixture_mean_centred(1.0, {3.0, 2.0}, 3.0, single_atom(1.0)),
                    DomainError);
}

TEST_CASE("centred mixture mean: Monte Carlo cross-check") {
    // gamma = 0.8, Phi = e^{-0.7 x}, c = 2.5
    const std::vector<double> w{0.6, 0.3};
    auto v = mixture_mean_centred(0.8, w, 2.5, single_atom(0.7));
    oracle::MonteCarlo mc(2718);
    const double mean_shift = 0.8 * (std::sqrt(0.6) + std::sqrt(0.3));
    auto est = oracle::estimate(
        [&] {
            const double s = mc.gamma_sum(0.8, w) - mean_shift;
            return std::exp(-0.7 * (2.5 + s));
        },
        2000000);
    CHECK(std::abs(est.mean - v.value) <= 4.0 * est.se_mean);
}

TEST_CASE("raw mixture mean: pinned values and power-law quadrature") {
    auto g20 = mixture_mean_raw(1.0, {2.0, 0.0}, single_atom(1.0));
    auto g11 = mixture_mean_raw(1.0, {1.0, 1.0}, single_atom(1.0));
    CHECK(g20.value == doctest::Approx(0.41421356237309505).epsilon(1e-12));
    CHECK(g11.value == doctest::Approx(0.25).epsilon(1e-13));

    // Phi(x) = x^{-1}: E (S)^{-1} for S = Gamma(2) is 1 (exact: E 1/X = 1/(k-1)).
    ExponentialMixture pw;
    pw.name = "power";
    pw.power_q = 1.0;
    auto v = mixture_mean_raw(2.0, {1.0}, pw);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-9));

    // divergent rate integral rejected
    CHECK_THROWS_AS(mixture_mean_raw(0.4, {0.5, 0.5}, pw), DomainError);
}

TEST_CASE("schur F and G: pinned values") {
    CHECK(schur_F(1.0, {2.0, 0.0}) == doctest::Approx(1.7037640923281590).epsilon(1e-12));
    CHECK(schur_F(1.0, {1.0, 1.0}) == doctest::Approx(1.8472640247326626).epsilon(1e-12));
    CHECK(schur_G(1.0, {2.0, 0.0}) == doctest::Approx(0.41421356237309505).epsilon(1e-12));
    CHECK(schur_G(1.0, {1.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-13));
    // Ostrowski signs at x = (1, 4), gamma = 2
    auto F = [](const std::vector<double>& x) { return schur_F(2.0, x); };
    auto G = [](const std::vector<double>& x) { return schur_G(2.0, x); };
    CHECK(schur_ostrowski_check(F, {1.0, 4.0}, 0, 1) < 0.0);
    CHECK(schur_ostrowski_check(G, {1.0, 4.0}, 0, 1) > 0.0);
    // the analytic log-derivative (gamma/2) / (1 + sqrt(x_k))
    const double h = 1e-6;
    const double fd = (std::log(schur_F(2.0, {1.0 + h, 4.0})) -
                       std::log(schur_F(2.0, {1.0 - h, 4.0}))) /
                      (2.0 * h);
    CHECK(fd == doctest::Approx(1.0 / (1.0 + 1.0)).epsilon(1e-6));
}

TEST_CASE("suite: phi passes with closed-form mixtures") {
    CertifyOptions opts;
    opts.trials = 60;
    opts.seed = 7;
    opts.mixtures = MixtureFamily::Canonical;
    CertificateReport rep = certify_run("phi", opts);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= -1e-9);
    CHECK(rep.cases.size() == 60);
}

TEST_CASE("suite: phi with the full mixture family (rate quadrature)") {
    CertifyOptions opts;
    opts.trials = 24;
    opts.seed = 11;
    CertificateReport rep = certify_run("phi", opts);
    CHECK(rep.pass);
}

TEST_CASE("suite: phi0 including the uniform-minimum check") {
    CertifyOptions opts;
    opts.trials = 40;
    opts.seed = 3;
    CertificateReport rep = certify_run("phi0", opts);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= -1e-9);
}

TEST_CASE("suite: fg products and Ostrowski signs") {
    CertifyOptions opts;
    opts.trials = 100;
    opts.seed = 5;
    CertificateReport rep = certify_run("fg", opts);
    CHECK(rep.pass);
}

TEST_CASE("suite: entropy with the pinned uniform value") {
    CertifyOptions opts;
    opts.trials = 9;
    opts.seed = 13;
    CertificateReport rep = certify_run("entropy", opts);
    CHECK(rep.pass);
    // case 0 is the uniform gamma=1, n=2 configuration
    CHECK(rep.cases[0].rhs == doctest::Approx(1.2306420746215602).epsilon(1e-12));
    CHECK(std::abs(rep.cases[0].margin) <= 1e-6 + rep.cases[0].err_est);
    CHECK(rep.cases[0].input.variant == "uniform");
    // precondition: gamma * n >= 1
    CertifyOptions bad = opts;
    bad.gamma = 0.3;
    bad.n = 2;
    CHECK_THROWS_AS(certify_run("entropy", bad), DomainError);
}

TEST_CASE("entropy replay at the extreme weight vector") {
    CertifyOptions opts;
    CaseInput in;
    in.suite = "entropy";
    in.gamma = 1.0;
    in.n = 2;
    in.a = {1.0, 0.0};
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r.margin == doctest::Approx(0.23064207462156024).epsilon(1e-6));
}

TEST_CASE("renyi replay with a vanishing weight takes the trivial-divergence path") {
    CertifyOptions opts;
    CaseInput in;
    in.suite = "renyi";
    in.gamma = 0.4;
    in.n = 2;
    in.alpha = 2.0;
    in.a = {1.0, 0.0}; // n_eff = 1: alpha (gamma - 1) + 1 = -0.2 <= 0
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    CHECK(r.tag == "trivial-divergent-lhs");
    CHECK(std::isinf(r.margin));
}

TEST_CASE("suite: renyi against the closed-form uniform oracle") {
    CertifyOptions opts;
    opts.trials = 12;
    opts.seed = 17;
    CertificateReport rep = certify_run("renyi", opts);
    CHECK(rep.pass);
    CHECK(rep.cases[0].rhs ==
          doctest::Approx(equal_weights_renyi(0.4, 2, 2.0)).epsilon(1e-12));
    CertifyOptions bad = opts;
    bad.gamma = 0.3;
    bad.n = 2;
    bad.alpha = 4.0;
    CHECK_THROWS_AS(certify_run("renyi", bad), DomainError);
}

TEST_CASE("suite: moments exact comparison and the pinned k=3 case") {
    CertifyOptions opts;
    opts.trials = 80;
    opts.seed = 23;
    CertificateReport rep = certify_run("moments", opts);
    CHECK(rep.pass);
    CHECK(rep.min_margin >= -1e-10);

    CaseInput in;
    in.suite = "moments";
    in.gamma = 1.0;
    in.n = 2;
    in.max_order = 3;
    in.a = {1.0, 0.0};
    in.b = {0.5, 0.5};
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    // the binding order is k = 2 where fixed-sum pairs tie exactly
    CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-14));
    // mu_3(1,0) = 2 vs mu_3(.5,.5) = sqrt(2): the strict part of the order
    MomentTable ta = central_moments(GammaSumModel(1.0, WeightVector({1.0, 0.0})), 3);
    MomentTable tb = central_moments(GammaSumModel(1.0, WeightVector({0.5, 0.5})), 3);
    CHECK(ta.central_moments[3] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tb.central_moments[3] == doctest::Approx(1.4142135623730950).epsilon(1e-12));
}

TEST_CASE("suite: maxdensity-g1 sandwich") {
    CertifyOptions opts;
    opts.trials = 12;
    opts.seed = 29;
    CertificateReport rep = certify_run("maxdensity-g1", opts);
    CHECK(rep.pass);
    CertifyOptions bad = opts;
    bad.gamma = 0.5;
    CHECK_THROWS_AS(certify_run("maxdensity-g1", bad), DomainError);
}

TEST_CASE("suite: maxdensity-g12 lower bound") {
    CertifyOptions opts;
    opts.trials = 9;
    opts.seed = 31;
    CertificateReport rep = certify_run("maxdensity-g12", opts);
    CHECK(rep.pass);
}

TEST_CASE("suite: bnu with the pinned equal-weights case") {
    CertifyOptions opts;
    opts.trials = 10;
    opts.seed = 37;
    CertificateReport rep = certify_run("bnu", opts);
    CHECK(rep.pass);

    CaseInput in;
    in.suite = "bnu";
    in.gamma = 0.5;
    in.n = 2;
    in.a = {0.5, 0.5};
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    CHECK(r.derived == doctest::Approx(1.4142135623730950).epsilon(1e-9)); // M
    CHECK(r.lhs == doctest::Approx(0.032103220761678443).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(2.6837530678616557).epsilon(1e-9));
}

TEST_CASE("suite: gk constants at the matched dimension") {
    // brute-force check of the Dirichlet integral behind the upper constant:
    // Int_0^1 t^{g-1} (1-t)^{-g} dt = Gamma(g) Gamma(1-g) for k = 1, g = 3/4.
    // Substituted so that both endpoint singularities disappear: t = v^{4/3}
    // below 1/2 and 1 - t = u^4 above it.
    const double g = 0.75;
    auto head = [g](double v) {
        const double t = std::pow(v, 4.0 / 3.0);
        return (4.0 / 3.0) * std::pow(1.0 - t, -g);
    };
    auto tail = [g](double u) {
        return 4.0 * std::pow(1.0 - u * u * u * u, g - 1.0);
    };
    const double brute = oracle::riemann(head, 0.0, std::pow(0.5, 0.75), 400000) +
                         oracle::riemann(tail, 0.0, std::pow(0.5, 0.25), 400000);
    const double want = std::exp(std::lgamma(g) + std::lgamma(1.0 - g));
    CHECK(brute == doctest::Approx(want).epsilon(1e-7));

    CertifyOptions opts;
    opts.trials = 12;
    opts.seed = 41;
    CertificateReport rep = certify_run("gk", opts);
    CHECK(rep.pass);
    CHECK(rep.notes.size() >= 1);

    CaseInput in;
    in.suite = "gk";
    in.gamma = 0.75;
    in.k = 1;
    in.n = 2;
    in.variant = "two-sided";
    in.a = {0.6, 0.4};
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    const double shape = std::pow(0.6, -0.375) * std::pow(0.4, -0.125);
    CHECK(r.rhs == doctest::Approx(1.2689223322859146 * shape).epsilon(1e-9));
    CHECK(r.lhs == doctest::Approx(0.4839414490382867 * shape).epsilon(1e-9));
}

TEST_CASE("suite: cf-envelope with equality at the extreme configuration") {
    CertifyOptions opts;
    opts.trials = 25;
    opts.seed = 43;
    CertificateReport rep = certify_run("cf-envelope", opts);
    CHECK(rep.pass);
    bool saw_extreme = false;
    for (const CaseResult& cr : rep.cases) {
        if (cr.input.variant == "extreme") {
            saw_extreme = true;
            CHECK(std::abs(cr.margin) <= 1e-7 + cr.err_est);
        }
    }
    CHECK(saw_extreme);

    // gamma = 1, m = 2: every qualifying model keeps M below 1/sqrt(2)
    CaseInput in;
    in.suite = "cf-envelope";
    in.gamma = 1.0;
    in.n = 2;
    in.m = 2;
    in.a = {0.5, 0.5};
    CaseResult r = certify_replay(in, opts);
    CHECK(r.pass);
    CHECK(r.derived == doctest::Approx(0.52026009502288896).epsilon(1e-7));
    CHECK(r.derived <= 0.70710678118654752);
}

TEST_CASE("suite: density-bounds sandwich") {
    CertifyOptions opts;
    opts.trials = 30;
    opts.seed = 47;
    CertificateReport rep = certify_run("density-bounds", opts);
    CHECK(rep.pass);
}

TEST_CASE("unknown suite rejected") {
    CertifyOptions opts;
    CHECK_THROWS_AS(certify_run("nope", opts), DomainError);
}

TEST_CASE("reports are deterministic and jobs-independent") {
    CertifyOptions a;
    a.trials = 30;
    a.seed = 99;
    CertifyOptions b = a;
    b.jobs = 4;
    for (const std::string suite : {"phi", "moments", "fg"}) {
        CertificateReport ra = certify_run(suite, a);
        CertificateReport rb = certify_run(suite, b);
        CHECK(io::report_to_json(ra) == io::report_to_json(rb));
        CertificateReport rc = certify_run(suite, a);
        CHECK(io::report_to_json(ra) == io::report_to_json(rc));
    }
}

TEST_CASE("replay reproduces a suite case bit for bit") {
    CertifyOptions opts;
    opts.trials = 6;
    opts.seed = 53;
    CertificateReport rep = certify_run("phi", opts);
    for (const CaseResult& cr : rep.cases) {
        const std::string text = io::case_to_json(cr.input);
        CaseInput back = io::case_from_json(text);
        CaseResult replayed = certify_replay(back, opts);
        CHECK(replayed.margin == cr.margin);
        CHECK(replayed.lhs == cr.lhs);
        CHECK(replayed.pass == cr.pass);
    }
}
