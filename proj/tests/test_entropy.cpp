#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "gsum/entropy.hpp"
#include "gsum/rng.hpp"
#include "oracles.hpp"

using namespace gsum;

namespace {
GammaSumModel make(double shape, std::vector<double> w) {
    return GammaSumModel(shape, WeightVector(std::move(w)));
}

std::vector<double> simplex_draw(Rng& rng, int n) {
    std::vector<double> w(n);
    double s = 0.0;
    for (double& v : w)
        s += (v = rng.exponential());
    for (double& v : w)
        v /= s;
    return w;
}
} // namespace

TEST_CASE("shannon entropy closed-form cases") {
    QuadratureConfig cfg;
    EntropyResult h1 = shannon_entropy(make(1.0, {1.0}), cfg);
    CHECK(h1.value == doctest::Approx(1.0).epsilon(1e-8));

    EntropyResult h2 = shannon_entropy(make(1.0, {0.5, 0.5}), cfg);
    CHECK(h2.value == doctest::Approx(1.2306420746215602).epsilon(1e-8));
    CHECK(equal_weights_entropy(1.0, 2) ==
          doctest::Approx(1.2306420746215602).epsilon(1e-13));

    // closed form vs direct quadrature across shapes
    for (double gamma : {0.6, 1.7}) {
        for (int n : {1, 3}) {
            const double w = 1.0 / n;
            EntropyResult h = shannon_entropy(make(gamma, std::vector<double>(n, w)), cfg);
            CHECK(h.value == doctest::Approx(equal_weights_entropy(gamma, n)).epsilon(1e-7));
        }
    }
}

TEST_CASE("shannon entropy scale covariance") {
    QuadratureConfig cfg;
    GammaSumModel base = make(1.3, {0.6, 0.4});
    GammaSumModel scaled = make(1.3, {2.4, 1.6}); // weights * 4 => S * 2
    EntropyResult hb = shannon_entropy(base, cfg);
    EntropyResult hs = shannon_entropy(scaled, cfg);
    CHECK(hs.value - hb.value == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-6));
}

TEST_CASE("renyi entropy: closed forms and the equal-weights oracle") {
    QuadratureConfig cfg;
    EntropyResult r2 = renyi_entropy(make(1.0, {1.0}), 2.0, cfg);
    CHECK(r2.value == doctest::Approx(0.69314718055994531).epsilon(1e-9));
    CHECK(equal_weights_renyi(1.0, 1, 2.0) ==
          doctest::Approx(0.69314718055994531).epsilon(1e-13));
    CHECK(equal_weights_renyi(1.0, 2, 2.0) ==
          doctest::Approx(1.0397207708399180).epsilon(1e-13));

    EntropyResult r = renyi_entropy(make(1.0, {0.5, 0.5}), 2.0, cfg);
    CHECK(r.value == doctest::Approx(1.0397207708399180).epsilon(1e-8));

    // quadrature vs closed form in the fractional regime
    EntropyResult rl = renyi_entropy(make(0.4, {0.5, 0.5}), 2.0, cfg);
    CHECK(rl.value == doctest::Approx(equal_weights_renyi(0.4, 2, 2.0)).epsilon(1e-7));

    CHECK_THROWS_AS(renyi_entropy(make(1.0, {1.0}), 1.0, cfg), DomainError);
    CHECK_THROWS_AS(renyi_entropy(make(1.0, {1.0}), 0.0, cfg), DomainError);
    CHECK_THROWS_AS(renyi_entropy(make(1.0, {1.0}), 65.0, cfg), DomainError);
    CHECK_THROWS_AS(equal_weights_renyi(0.3, 2, 4.0), DomainError);
}

TEST_CASE("renyi divergent regime reports infinities") {
    QuadratureConfig cfg;
    // n gamma = 0.6, alpha = 4: 4 * (0.6 - 1) + 1 = -0.6 <= 0
    EntropyResult r = renyi_entropy(make(0.3, {0.6, 0.4}), 4.0, cfg);
    CHECK(std::isinf(r.value));
    CHECK(r.value < 0.0);
    CHECK(r.engine == "divergent");
}

TEST_CASE("renyi continuity toward order one") {
    QuadratureConfig cfg;
    Rng rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + int(rng.bits() % 3);
        std::vector<double> w = simplex_draw(rng, n);
        const double gamma = rng.uniform(0.6, 2.5);
        GammaSumModel m(gamma, WeightVector(w));
        EntropyResult h = shannon_entropy(m, cfg);
        EntropyResult above = renyi_entropy(m, 1.001, cfg);
        EntropyResult below = renyi_entropy(m, 0.999, cfg);
        CHECK(std::abs(above.value - h.value) <= 5e-3);
        CHECK(std::abs(below.value - h.value) <= 5e-3);
    }
}

TEST_CASE("max density: pinned cases") {
    QuadratureConfig cfg;
    MaxDensityResult m1 = max_density(make(1.0, {1.0}), cfg);
    CHECK_FALSE(m1.infinite);
    CHECK(m1.m == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m1.argmax == doctest::Approx(0.0).epsilon(1e-9));

    MaxDensityResult m2 = max_density(make(1.0, {0.5, 0.5}), cfg);
    CHECK(m2.m == doctest::Approx(0.52026009502288896).epsilon(1e-8));
    CHECK(m2.argmax == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));

    MaxDensityResult m3 = max_density(make(0.5, {1.0}), cfg);
    CHECK(m3.infinite);
    CHECK(std::isinf(m3.m));

    // n gamma = 1 boundary: Exp(sqrt(2)) via the analytic limit
    MaxDensityResult m4 = max_density(make(0.5, {0.5, 0.5}), cfg);
    CHECK_FALSE(m4.infinite);
    CHECK(m4.m == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("max density agrees with a direct scan on random models") {
    QuadratureConfig cfg;
    Rng rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + int(rng.bits() % 3);
        std::vector<double> w = simplex_draw(rng, n);
        const double gamma = rng.uniform(0.8, 2.5);
        GammaSumModel m(gamma, WeightVector(w));
        MaxDensityResult md = max_density(m, cfg);
        DensityEvaluator eval(m, cfg);
        double scan_best = 0.0;
        for (int i = 1; i <= 2000; ++i) {
            const double x = (m.mean() + 6.0) * double(i) / 2000.0;
            scan_best = std::max(scan_best, eval.value(x).value);
        }
        CHECK(md.m >= scan_best - 1e-6);
        CHECK(md.m <= scan_best * 1.001 + 1e-6);
    }
}

TEST_CASE("Moriguti and log-concave bounds on the maximum") {
    QuadratureConfig cfg;
    Rng rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + int(rng.bits() % 4);
        std::vector<double> w = simplex_draw(rng, n);
        const double gamma = rng.uniform(0.5, 3.0);
        GammaSumModel m(gamma, WeightVector(w));
        if (m.shape() * double(m.n_effective()) < 1.0)
            continue;
        MaxDensityResult md = max_density(m, cfg);
        REQUIRE_FALSE(md.infinite);
        const double var = m.variance();
        CHECK(md.m >= 1.0 / std::sqrt(12.0 * var) - 1e-9);
        if (gamma >= 1.0)
            CHECK(md.m <= 1.0 / std::sqrt(var) + 1e-9);
    }
}

TEST_CASE("alpha-monotonicity of Renyi entropy") {
    QuadratureConfig cfg;
    Rng rng(55);
    int done = 0;
    while (done < 20) {
        const int n = 1 + int(rng.bits() % 4);
        std::vector<double> w = simplex_draw(rng, n);
        const double gamma = rng.uniform(0.4, 2.5);
        GammaSumModel m(gamma, WeightVector(w));
        if (m.shape() * double(m.n_effective()) < 1.0)
            continue;
        std::vector<double> orders{0.5, 0.8, 1.0, 2.0, 4.0,
                                   std::numeric_limits<double>::infinity()};
        double prev = std::numeric_limits<double>::infinity();
        for (double alpha : orders) {
            EntropyResult r = entropy_of_order(m, alpha, cfg);
            CHECK(r.value <= prev + 5e-4 + r.err_est);
            prev = r.value;
        }
        ++done;
    }
}

TEST_CASE("h_inf consistency with the large-alpha extrapolation") {
    QuadratureConfig cfg;
    GammaSumModel m = make(1.2, {0.5, 0.3, 0.2});
    // Laplace form h_alpha = h_inf + (A + B ln alpha)/(alpha - 1); fit the
    // three unknowns from alpha in {16, 32, 64} and read off h_inf.
    const double al[3] = {16.0, 32.0, 64.0};
    double mat[3][4];
    for (int i = 0; i < 3; ++i) {
        mat[i][0] = 1.0;
        mat[i][1] = 1.0 / (al[i] - 1.0);
        mat[i][2] = std::log(al[i]) / (al[i] - 1.0);
        mat[i][3] = renyi_entropy(m, al[i], cfg).value;
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(mat[r][c]) > std::abs(mat[piv][c]))
                piv = r;
        for (int k = 0; k < 4; ++k)
            std::swap(mat[c][k], mat[piv][k]);
        for (int r = 0; r < 3; ++r) {
            if (r == c)
                continue;
            const double f = mat[r][c] / mat[c][c];
            for (int k = 0; k < 4; ++k)
                mat[r][k] -= f * mat[c][k];
        }
    }
    const double extrap = mat[0][3] / mat[0][0];
    MaxDensityResult md = max_density(m, cfg);
    CHECK(-std::log(md.m) == doctest::Approx(extrap).epsilon(1e-3));
}

TEST_CASE("relative entropy to the matched Gaussian") {
    QuadratureConfig cfg;
    auto d1 = relative_entropy_to_gaussian(make(1.0, {1.0}), cfg);
    CHECK(d1.value == doctest::Approx(0.41893853320467274).epsilon(1e-7));

    // D decreases toward the uniform weights (gamma = 1, n = 2)
    auto d_extreme = relative_entropy_to_gaussian(make(1.0, {1.0, 0.0}), cfg);
    auto d_uniform = relative_entropy_to_gaussian(make(1.0, {0.5, 0.5}), cfg);
    CHECK(d_uniform.value < d_extreme.value);
    CHECK(d_extreme.value == doctest::Approx(0.41893853320467274).epsilon(1e-7));

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + int(rng.bits() % 4);
        std::vector<double> w = simplex_draw(rng, n);
        const double gamma = rng.uniform(0.4, 3.0);
        auto d = relative_entropy_to_gaussian(GammaSumModel(gamma, WeightVector(w)), cfg);
        CHECK(d.value >= -d.err_est - 1e-7);
    }
}

TEST_CASE("entropy_of_order dispatch") {
    QuadratureConfig cfg;
    GammaSumModel m = make(1.0, {1.0});
    CHECK(entropy_of_order(m, 1.0, cfg).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(entropy_of_order(m, 0.0, cfg).value ==
          std::numeric_limits<double>::infinity());
    EntropyResult inf_res =
        entropy_of_order(m, std::numeric_limits<double>::infinity(), cfg);
    CHECK(inf_res.value == doctest::Approx(0.0).epsilon(1e-8)); // -ln 1
}
