#include "gsum/density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "gsum/parallel.hpp"
#include "gsum/rng.hpp"
#include "gsum/transforms.hpp"

namespace gsum {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr std::size_t kSampleBlock = 65536;

double positive_product_log(const std::vector<double>& a, double gamma) {
    double s = 0.0;
    for (double v : a)
        s += std::log(v);
    return -0.5 * gamma * s; // ln (a_1...a_n)^{-gamma/2}
}

// Reduced-density convolution: p_k(x) = x^{k g - 1} q_k(x) with q_k smooth.
// q_1 is the exact scaled-gamma factor; each further stage is
//   q_k(x) = c_k Int_0^1 s^{(k-1)g-1} (1-s)^{g-1} q_{k-1}(x s) e^{-x(1-s)/sqrt(a_k)} ds,
// evaluated with endpoint-graded quadrature. Stages 2..n-1 are tabulated on a
// graded mesh and splined; the final stage is integrated on demand.
class Convolver {
public:
    Convolver(double gamma, std::vector<double> weights_desc, const QuadratureConfig& cfg,
              double x_max, int jobs)
        : gamma_(gamma), a_(std::move(weights_desc)), x_max_(x_max) {
        n_ = a_.size();
        ng_ = gamma_ * static_cast<double>(n_);
        inner_ = cfg;
        inner_.abs_tol = std::min(cfg.abs_tol * 0.05, 1e-13);
        inner_.rel_tol = std::min(cfg.rel_tol, 1e-11);
        inner_.max_subdivisions = std::max(256, cfg.max_subdivisions / 8);
        if (n_ >= 3)
            build_tables(jobs);
    }

    double x_max() const { return x_max_; }
    double n_gamma() const { return ng_; }

    // q_n(x); the density is x^{n g - 1} q_n(x).
    IntegralResult reduced(double x) const {
        if (n_ == 1)
            return {q1(x), 0.0};
        return stage_integral(n_, x, [this](double t) { return q_prev_final(t); });
    }

    IntegralResult value(double x) const {
        if (x <= 0.0)
            return {0.0, 0.0};
        IntegralResult q = reduced(x);
        const double pw = std::pow(x, ng_ - 1.0);
        return {pw * q.value, pw * q.err_est};
    }

    // q_n(0) limit constant (a_1...a_n)^{-g/2} / Gamma(n g).
    double reduced_at_zero() const {
        return std::exp(positive_product_log(a_, gamma_) - log_gamma(ng_));
    }

private:
    double q1(double t) const {
        return std::exp(-t / std::sqrt(a_[0]) - 0.5 * gamma_ * std::log(a_[0]) -
                        log_gamma(gamma_));
    }

    double q_prev_final(double t) const {
        if (n_ == 2)
            return q1(t);
        return std::max(0.0, spline_(std::min(t, x_max_)));
    }

    template <typename Q>
    IntegralResult stage_integral(std::size_t k, double x, const Q& q_prev) const {
        const double ck =
            std::exp(-0.5 * gamma_ * std::log(a_[k - 1]) - log_gamma(gamma_));
        const double beta0 = (static_cast<double>(k) - 1.0) * gamma_ - 1.0;
        const double beta1 = gamma_ - 1.0;
        if (x <= 0.0) {
            // Beta(kg - g, g) closed form at the origin.
            const double b = std::exp(log_gamma((k - 1) * gamma_) + log_gamma(gamma_) -
                                      log_gamma(k * gamma_));
            double q0;
            if (k == 2)
                q0 = q1(0.0);
            else
                q0 = q_prev(0.0);
            return {ck * b * q0, 0.0};
        }
        const double inv_sa = 1.0 / std::sqrt(a_[k - 1]);
        auto left = [&](double s) {
            return std::pow(s, beta0) * std::pow(1.0 - s, beta1) * q_prev(x * s) *
                   std::exp(-x * (1.0 - s) * inv_sa);
        };
        auto right = [&](double u) {
            return std::pow(1.0 - u, beta0) * std::pow(u, beta1) * q_prev(x * (1.0 - u)) *
                   std::exp(-x * u * inv_sa);
        };
        IntegralResult i1 = integrate(left, 0.0, 0.5, inner_, beta0 == 0.0 ? 0.0 : beta0);
        IntegralResult i2 = integrate(right, 0.0, 0.5, inner_, beta1 == 0.0 ? 0.0 : beta1);
        IntegralResult out{ck * (i1.value + i2.value), ck * (i1.err_est + i2.err_est)};
        // The x^{n g - 1} prefactor amplifies absolute quadrature error, so
        // relative accuracy in q is what matters; refine once when the first
        // pass converged on the absolute floor.
        if (out.value > 0.0 && out.err_est > 1e-10 * out.value) {
            QuadratureConfig tight = inner_;
            tight.abs_tol = std::max(out.value / ck * 1e-11, 1e-290);
            IntegralResult j1 = integrate(left, 0.0, 0.5, tight, beta0 == 0.0 ? 0.0 : beta0);
            IntegralResult j2 =
                integrate(right, 0.0, 0.5, tight, beta1 == 0.0 ? 0.0 : beta1);
            out = {ck * (j1.value + j2.value), ck * (j1.err_est + j2.err_est)};
        }
        return out;
    }

    void build_tables(int jobs) {
        const std::size_t points = 1025;
        std::vector<double> xs(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double u = static_cast<double>(i) / static_cast<double>(points - 1);
            xs[i] = x_max_ * u * u;
        }
        xs.front() = 0.0;
        std::vector<double> q(points);
        for (std::size_t k = 2; k + 1 <= n_; ++k) {
            std::vector<double> next(points);
            if (k == 2) {
                parallel_for(points, jobs, [&](std::size_t i) {
                    next[i] =
                        stage_integral(2, xs[i], [this](double t) { return q1(t); }).value;
                });
            } else {
                CubicSpline prev(xs, q);
                parallel_for(points, jobs, [&](std::size_t i) {
                    next[i] = stage_integral(k, xs[i],
                                             [&prev](double t) {
                                                 return std::max(0.0, prev(t));
                                             })
                                  .value;
                });
            }
            q.swap(next);
        }
        spline_ = CubicSpline(xs, q);
    }

    double gamma_;
    std::vector<double> a_; // positive, descending
    std::size_t n_ = 0;
    double ng_ = 0.0;
    double x_max_;
    QuadratureConfig inner_;
    CubicSpline spline_; // q_{n-1} for n >= 3
};

double closed_scaled(double gamma, const std::vector<double>& a_pos, double x) {
    // Equal positive weights w: S = sqrt(w n) * (sum X_j / sqrt(n)).
    const std::size_t n = a_pos.size();
    const double c = std::sqrt(a_pos[0] * static_cast<double>(n));
    return density_closed_equal(gamma, static_cast<int>(n), x / c) / c;
}

bool equal_positive_weights(const std::vector<double>& a_pos) {
    for (double v : a_pos)
        if (std::abs(v - a_pos[0]) > 1e-12 * a_pos[0])
            return false;
    return true;
}

} // namespace

std::string engine_name(DensityEngine e) {
    switch (e) {
    case DensityEngine::Auto: return "auto";
    case DensityEngine::Closed: return "closed";
    case DensityEngine::CfInversion: return "cf_inversion";
    case DensityEngine::Convolution: return "convolution";
    case DensityEngine::MonteCarlo: return "monte_carlo";
    }
    return "auto";
}

DensityEngine engine_from_name(const std::string& name) {
    if (name == "auto") return DensityEngine::Auto;
    if (name == "closed") return DensityEngine::Closed;
    if (name == "cf" || name == "cf_inversion") return DensityEngine::CfInversion;
    if (name == "convolution") return DensityEngine::Convolution;
    if (name == "mc" || name == "monte_carlo") return DensityEngine::MonteCarlo;
    throw DomainError("unknown density engine '" + name + "'");
}

double density_closed_equal(double gamma, int n, double x) {
    if (!(gamma > 0.0) || n < 1)
        throw DomainError("density_closed_equal: gamma > 0 and n >= 1 required");
    if (x <= 0.0)
        return 0.0;
    const double ng = gamma * n;
    const double log_v = 0.5 * ng * std::log(static_cast<double>(n)) - log_gamma(ng) +
                         (ng - 1.0) * std::log(x) - x * std::sqrt(static_cast<double>(n));
    return std::exp(log_v);
}

IntegralResult density_cf_inversion(const GammaSumModel& model, double x,
                                    const QuadratureConfig& cfg) {
    cfg.validate();
    const std::vector<double> a = model.positive_sorted_desc();
    const double gamma = model.shape();
    const double ng = gamma * static_cast<double>(a.size());
    if (ng <= 1.0)
        throw NumericError(
            "density_cf_inversion: requires shape * n_effective > 1 for integrability; "
            "use the convolution or Monte Carlo engine");
    if (x <= 0.0)
        return {0.0, 0.0};

    const double a_min = a.back();
    if (x / std::sqrt(a_min) < 1e-7) {
        // Within rounding of the x -> 0 limit of the convolution identity; the
        // pointwise sandwich pins p between bounds that agree to O(x).
        GammaSumModel positive(model.shape(), WeightVector(a));
        PointBounds b = density_bounds_pointwise(positive, x);
        return {0.5 * (b.lower + b.upper), 0.5 * (b.upper - b.lower)};
    }

    // Contour t = r e^{-i theta}, theta = pi/4: |e^{-itx}| = e^{-x r sin}.
    const double st = std::sqrt(0.5), ct = st;
    const double logC = positive_product_log(a, gamma); // prod a^{-g/2}
    const double K = std::pow(ct, -ng);                 // sector bound on |phi|
    const double tail_target = 0.5 * cfg.abs_tol * kPi;

    // Valid truncation bound for any R: both the constant-envelope exponential
    // tail and the pure polynomial envelope tail hold; take the smaller.
    auto tail_bound = [&](double r) {
        const double amp = std::min(K, std::exp(logC - ng * std::log(r * ct)));
        const double exp_tail = amp * std::exp(-x * r * st) / (x * st);
        const double poly_tail =
            std::exp(logC - ng * std::log(ct) + (1.0 - ng) * std::log(r)) / (ng - 1.0);
        return std::min(exp_tail, poly_tail);
    };
    // K e^{-x R st}/(x st) = tail_target is safe by construction; shrink
    // monotonically while the combined bound still meets the target.
    double R = std::max(2.0, std::log(std::max(K / (tail_target * x * st), 2.0)) / (x * st));
    for (int it = 0; it < 200 && R > 2.0; ++it) {
        const double candidate = std::max(2.0, R / 1.5);
        if (tail_bound(candidate) > tail_target)
            break;
        R = candidate;
    }
    const double tail = tail_bound(R);

    const std::complex<double> ray(ct, -st);
    auto integrand = [&](double r) {
        std::complex<double> phi = 1.0;
        const std::complex<double> t = r * ray;
        for (double aj : a)
            phi *= std::pow(1.0 - std::complex<double>(0.0, std::sqrt(aj)) * t, -gamma);
        const std::complex<double> val =
            ray * phi * std::exp(std::complex<double>(-x * r * st, -x * r * ct));
        return val.real();
    };
    QuadratureConfig quad = cfg;
    quad.abs_tol = 0.5 * cfg.abs_tol * kPi;
    IntegralResult res = integrate(integrand, 0.0, R, quad);
    return {res.value / kPi, (res.err_est + tail) / kPi};
}

DensityCurve density_convolution(const GammaSumModel& model, const std::vector<double>& grid,
                                 const QuadratureConfig& cfg, int jobs) {
    cfg.validate();
    if (grid.empty())
        throw DomainError("density_convolution: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw DomainError("density_convolution: grid must be positive and ascending");

    const std::vector<double> a = model.positive_sorted_desc();
    Convolver conv(model.shape(), a, cfg, grid.back() * 1.0000001, jobs);
    DensityCurve curve;
    curve.grid = grid;
    curve.values.assign(grid.size(), 0.0);
    curve.err.assign(grid.size(), 0.0);
    curve.engine = engine_name(DensityEngine::Convolution);
    curve.shape = model.shape();
    curve.weights = model.weights().values();
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        IntegralResult r = conv.value(grid[i]);
        curve.values[i] = std::max(0.0, r.value);
        curve.err[i] = r.err_est + 1e-10 * std::abs(r.value);
    });
    return curve;
}

std::vector<double> sample(const GammaSumModel& model, std::size_t count, std::uint64_t seed,
                           int jobs) {
    if (count < 1)
        throw DomainError("sample: count must be >= 1");
    const std::vector<double> coeff = [&] {
        std::vector<double> c;
        for (double a : model.weights().values())
            if (a > 0.0)
                c.push_back(std::sqrt(a));
        return c;
    }();
    const double gamma = model.shape();
    std::vector<double> out(count);
    const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
    parallel_for(blocks, jobs, [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        const std::size_t begin = b * kSampleBlock;
        const std::size_t end = std::min(count, begin + kSampleBlock);
        for (std::size_t i = begin; i < end; ++i) {
            double s = 0.0;
            for (double c : coeff)
                s += c * rng.gamma(gamma);
            out[i] = s;
        }
    });
    return out;
}

PointBounds density_bounds_pointwise(const GammaSumModel& model, double x) {
    if (!(x > 0.0))
        throw DomainError("density_bounds_pointwise: requires x > 0");
    const std::vector<double> a = model.positive_sorted_desc();
    if (a.size() != model.weights().size())
        throw DomainError("density_bounds_pointwise: weights must be strictly positive "
                          "(restrict to the positive sub-vector first)");
    const double ng = model.shape() * static_cast<double>(a.size());
    const double log_upper =
        positive_product_log(a, model.shape()) - log_gamma(ng) + (ng - 1.0) * std::log(x);
    PointBounds b;
    b.upper = std::exp(log_upper);
    b.lower = std::exp(log_upper - x / std::sqrt(a.back()));
    return b;
}

double density_lower_bound_max(const GammaSumModel& model) {
    const std::vector<double> a = model.positive_sorted_desc();
    const double ng = model.shape() * static_cast<double>(a.size());
    if (ng < 1.0)
        return std::numeric_limits<double>::infinity();
    const double c = ng - 1.0;
    // max over x of x^c e^{-x/sqrt(a_min)} at x* = c sqrt(a_min).
    const double log_peak = c > 0.0 ? c * (std::log(c) + 0.5 * std::log(a.back()) - 1.0) : 0.0;
    return std::exp(positive_product_log(a, model.shape()) - log_gamma(ng) + log_peak);
}

double fourier_density_bound(double gamma, int m) {
    if (m < 1)
        throw DomainError("fourier_density_bound: m must be a positive integer");
    if (!(m * gamma > 1.0))
        throw DomainError("fourier_density_bound: requires m * gamma > 1");
    const double mg = m * gamma;
    return 0.5 * std::sqrt(static_cast<double>(m) / kPi) *
           std::exp(log_gamma(0.5 * (mg - 1.0)) - log_gamma(0.5 * mg));
}

struct DensityEvaluator::Impl {
    GammaSumModel model;
    QuadratureConfig cfg;
    DensityEngine engine = DensityEngine::Auto;
    double x_max = 0.0;
    std::vector<double> a_pos;
    double ng = 0.0;
    std::unique_ptr<Convolver> conv;
    // Monte Carlo histogram
    std::vector<double> hist;
    double bin_width = 0.0;
    std::size_t mc_count = 0;

    explicit Impl(const GammaSumModel& m) : model(m) {}

    IntegralResult value(double x) const {
        if (x <= 0.0)
            return {0.0, 0.0};
        switch (engine) {
        case DensityEngine::Closed:
            return {closed_scaled(model.shape(), a_pos, x), 0.0};
        case DensityEngine::CfInversion:
            return density_cf_inversion(model, x, cfg);
        case DensityEngine::Convolution:
            return conv->value(x);
        case DensityEngine::MonteCarlo: {
            const std::size_t bin = static_cast<std::size_t>(x / bin_width);
            if (bin >= hist.size())
                return {0.0, 1.0 / (static_cast<double>(mc_count) * bin_width)};
            const double p = hist[bin];
            const double se =
                std::sqrt(std::max(p, 1.0 / (static_cast<double>(mc_count) * bin_width)) /
                          (static_cast<double>(mc_count) * bin_width));
            return {p, se};
        }
        default:
            throw NumericError("DensityEvaluator: unresolved engine");
        }
    }
};

DensityEvaluator::DensityEvaluator(const GammaSumModel& model, const QuadratureConfig& cfg,
                                   DensityEngine engine, double x_max_hint,
                                   std::uint64_t mc_seed, std::size_t mc_count, int jobs)
    : impl_(std::make_unique<Impl>(model)) {
    cfg.validate();
    impl_->cfg = cfg;
    impl_->a_pos = model.positive_sorted_desc();
    impl_->ng = model.shape() * static_cast<double>(impl_->a_pos.size());
    const double sigma = std::sqrt(model.variance());
    impl_->x_max = x_max_hint > 0.0 ? x_max_hint : model.mean() + 12.0 * sigma;

    DensityEngine chosen = engine;
    if (chosen == DensityEngine::Auto) {
        if (impl_->a_pos.size() == 1 || equal_positive_weights(impl_->a_pos))
            chosen = DensityEngine::Closed;
        else if (impl_->ng > 1.1)
            chosen = DensityEngine::CfInversion;
        else
            chosen = DensityEngine::Convolution;
    }
    if (chosen == DensityEngine::Closed && impl_->a_pos.size() > 1 &&
        !equal_positive_weights(impl_->a_pos))
        throw DomainError("closed engine requires equal positive weights");
    if (chosen == DensityEngine::CfInversion && impl_->ng <= 1.0)
        throw NumericError("cf_inversion engine requires shape * n_effective > 1; "
                          "use convolution or Monte Carlo");
    impl_->engine = chosen;
    if (chosen == DensityEngine::Convolution)
        impl_->conv = std::make_unique<Convolver>(model.shape(), impl_->a_pos, cfg,
                                                  impl_->x_max, jobs);
    if (chosen == DensityEngine::MonteCarlo) {
        std::vector<double> draws = sample(model, mc_count, mc_seed, jobs);
        const std::size_t bins = 512;
        impl_->bin_width = impl_->x_max / static_cast<double>(bins);
        impl_->hist.assign(bins, 0.0);
        for (double d : draws) {
            const std::size_t b = static_cast<std::size_t>(d / impl_->bin_width);
            if (b < bins)
                impl_->hist[b] += 1.0;
        }
        for (double& h : impl_->hist)
            h /= static_cast<double>(mc_count) * impl_->bin_width;
        impl_->mc_count = mc_count;
    }
}

DensityEvaluator::~DensityEvaluator() = default;
DensityEvaluator::DensityEvaluator(DensityEvaluator&&) noexcept = default;
DensityEvaluator& DensityEvaluator::operator=(DensityEvaluator&&) noexcept = default;

IntegralResult DensityEvaluator::value(double x) const { return impl_->value(x); }
DensityEngine DensityEvaluator::engine() const { return impl_->engine; }
double DensityEvaluator::x_max() const { return impl_->x_max; }

DensityCurve density_curve(const GammaSumModel& model, const std::vector<double>& grid,
                           const QuadratureConfig& cfg, DensityEngine engine, int jobs,
                           std::uint64_t mc_seed, std::size_t mc_count) {
    if (grid.empty())
        throw DomainError("density_curve: empty grid");
    DensityEvaluator eval(model, cfg, engine, grid.back() * 1.0000001, mc_seed, mc_count,
                          jobs);
    DensityCurve curve;
    curve.grid = grid;
    curve.values.assign(grid.size(), 0.0);
    curve.err.assign(grid.size(), 0.0);
    curve.engine = engine_name(eval.engine());
    curve.shape = model.shape();
    curve.weights = model.weights().values();
    parallel_for(grid.size(), jobs, [&](std::size_t i) {
        IntegralResult r = eval.value(grid[i]);
        curve.values[i] = std::max(0.0, r.value);
        curve.err[i] = r.err_est;
    });
    return curve;
}

double mc_quantile(const GammaSumModel& model, double p, std::size_t count,
                   std::uint64_t seed) {
    if (!(p > 0.0) || !(p < 1.0))
        throw DomainError("mc_quantile: p must lie in (0, 1)");
    std::vector<double> draws = sample(model, count, seed);
    std::sort(draws.begin(), draws.end());
    const double idx = p * static_cast<double>(count - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const double frac = idx - static_cast<double>(lo);
    if (lo + 1 >= count)
        return draws.back();
    return draws[lo] * (1.0 - frac) + draws[lo + 1] * frac;
}

std::vector<double> default_grid(const GammaSumModel& model, std::size_t count,
                                 std::uint64_t seed) {
    if (count < 16)
        throw DomainError("default_grid: count must be >= 16");
    const double sigma = std::sqrt(model.variance());
    const double x_max = model.mean() + 12.0 * sigma;
    const double split = std::min(model.mean(), 0.5 * x_max);
    double x_min = mc_quantile(model, 0.0005, 100000, seed);
    x_min = std::min(std::max(x_min * 0.5, x_max * 1e-7), 0.5 * split);
    const double g = std::max(1.0, 1.0 / model.shape());

    std::vector<double> grid;
    grid.reserve(count);
    const std::size_t head = count / 2;
    for (std::size_t i = 0; i < head; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(head);
        grid.push_back(x_min + (split - x_min) * std::pow(u, g));
    }
    for (std::size_t i = 0; i + head < count; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(count - head - 1);
        grid.push_back(split + (x_max - split) * u);
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace gsum
