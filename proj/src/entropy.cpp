#include "gsum/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace gsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tail_cutoff(const GammaSumModel& model) {
    // Slowest decay scale among the factors is sqrt(a_max).
    double a_max = 0.0;
    for (double a : model.weights().values())
        a_max = std::max(a_max, a);
    return model.mean() + 38.0 * std::max(std::sqrt(model.variance()), std::sqrt(a_max));
}

struct TrackedEval {
    const DensityEvaluator& eval;
    mutable double max_err = 0.0;
    double operator()(double x) const {
        IntegralResult r = eval.value(x);
        max_err = std::max(max_err, r.err_est);
        return std::max(r.value, 0.0);
    }
};

// Integral of f(p(x)) over (0, x_hi) with the x -> 0 power behavior
// x^singular_beta declared on the head piece.
IntegralResult split_integral(const std::function<double(double)>& f, double split,
                              double x_hi, const QuadratureConfig& cfg,
                              double singular_beta) {
    QuadratureConfig head_cfg = cfg;
    if (singular_beta < 0.0)
        head_cfg.singularity_grading = std::max(cfg.singularity_grading, 2.0);
    IntegralResult head = integrate(f, 0.0, split, head_cfg,
                                    std::abs(singular_beta) < 1e-12 ? 0.0 : singular_beta);
    IntegralResult tail = integrate(f, split, x_hi, cfg);
    return {head.value + tail.value, head.err_est + tail.err_est};
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
    const double phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

EntropyResult shannon_entropy(const GammaSumModel& model, const QuadratureConfig& cfg,
                              DensityEngine engine) {
    cfg.validate();
    const double x_hi = tail_cutoff(model);
    QuadratureConfig point_cfg = cfg;
    point_cfg.abs_tol = std::min(cfg.abs_tol * 1e-2, 1e-10);
    DensityEvaluator eval(model, point_cfg, engine, x_hi * 1.0000001);
    TrackedEval p{eval};

    auto integrand = [&p](double x) {
        const double v = p(x);
        return v > 0.0 ? -v * std::log(v) : 0.0;
    };
    const double ng = model.shape() * static_cast<double>(model.n_effective());
    const double split = std::max(1e-3 * x_hi, std::min(0.5 * model.mean(), 0.5 * x_hi));
    QuadratureConfig outer = cfg;
    outer.abs_tol = std::max(cfg.abs_tol, 1e-9);
    IntegralResult integral = split_integral(integrand, split, x_hi, outer, ng - 1.0);

    EntropyResult res;
    res.order = 1.0;
    res.value = integral.value;
    res.engine = engine_name(eval.engine());
    // Engine error enters through p ln p; weight it by a coarse |ln p| scale.
    res.err_est = integral.err_est + p.max_err * 50.0;
    return res;
}

EntropyResult renyi_entropy(const GammaSumModel& model, double alpha,
                            const QuadratureConfig& cfg, DensityEngine engine) {
    cfg.validate();
    if (!(alpha > 0.0) || alpha > 64.0)
        throw DomainError("renyi_entropy: finite orders accepted on (0, 64]");
    if (std::abs(alpha - 1.0) < 1e-12)
        throw DomainError("renyi_entropy: order 1 is Shannon entropy");

    const double ng = model.shape() * static_cast<double>(model.n_effective());
    const double beta = alpha * (ng - 1.0);
    if (beta + 1.0 <= 0.0) {
        // Int p^alpha diverges at 0; for alpha > 1 the entropy drops to -inf.
        EntropyResult res;
        res.order = alpha;
        res.value = alpha > 1.0 ? -kInf : kInf;
        res.engine = "divergent";
        return res;
    }

    const double x_hi = tail_cutoff(model);
    QuadratureConfig point_cfg = cfg;
    point_cfg.abs_tol = std::min(cfg.abs_tol * 1e-2, 1e-10);
    DensityEvaluator eval(model, point_cfg, engine, x_hi * 1.0000001);
    TrackedEval p{eval};

    // p^alpha collapses below any absolute tolerance for large alpha; scale
    // by a coarse-scan maximum so the integrand stays O(1) near the peak.
    // Only meaningful for bounded densities (n gamma > 1); the unbounded case
    // is confined to small alpha by the finiteness condition.
    double p_scale = 1.0;
    if (ng > 1.0 + 1e-12) {
        p_scale = 0.0;
        for (int i = 1; i <= 64; ++i) {
            const double u = static_cast<double>(i) / 64.0;
            p_scale = std::max(p_scale, p(x_hi * u * u * u));
        }
        if (!(p_scale > 0.0))
            throw NumericError("renyi_entropy: vanishing density on the scan grid");
    }

    auto integrand = [&p, alpha, p_scale](double x) {
        const double v = p(x) / p_scale;
        return v > 0.0 ? std::pow(v, alpha) : 0.0;
    };
    const double split = std::max(1e-3 * x_hi, std::min(0.5 * model.mean(), 0.5 * x_hi));
    IntegralResult integral = split_integral(integrand, split, x_hi, cfg, beta);
    if (!(integral.value > 0.0))
        throw NumericError("renyi_entropy: vanishing density integral");

    EntropyResult res;
    res.order = alpha;
    res.value = (alpha * std::log(p_scale) + std::log(integral.value)) / (1.0 - alpha);
    res.engine = engine_name(eval.engine());
    const double dI = integral.err_est + (p.max_err / p_scale) * alpha * 4.0;
    res.err_est = dI / (std::abs(1.0 - alpha) * integral.value);
    return res;
}

MaxDensityResult max_density(const GammaSumModel& model, const QuadratureConfig& cfg,
                             DensityEngine engine) {
    cfg.validate();
    MaxDensityResult res;
    const std::vector<double> a = model.positive_sorted_desc();
    const double ng = model.shape() * static_cast<double>(a.size());
    if (ng < 1.0 - 1e-9) {
        res.infinite = true;
        res.m = kInf;
        res.argmax = 0.0;
        res.engine = "pointwise_bound";
        return res;
    }
    if (std::abs(ng - 1.0) <= 1e-9) {
        // p(x) -> (a_1...a_n)^{-gamma/2} / Gamma(1) as x -> 0, and the upper
        // pointwise bound equals that constant, so the supremum sits at 0+.
        double logprod = 0.0;
        for (double v : a)
            logprod += std::log(v);
        res.m = std::exp(-0.5 * model.shape() * logprod);
        res.argmax = 0.0;
        res.engine = "analytic_limit";
        res.err_est = 0.0;
        return res;
    }

    const double x_hi = model.mean() + 12.0 * std::sqrt(model.variance());
    QuadratureConfig point_cfg = cfg;
    point_cfg.abs_tol = std::min(cfg.abs_tol, 1e-10);
    DensityEvaluator eval(model, point_cfg, engine, x_hi * 1.0000001);

    // The scan and golden refinement only need to locate the argmax, so run
    // them at a relaxed tolerance (a second inversion evaluator is stateless
    // and free; the convolution table is reused as is).
    std::unique_ptr<DensityEvaluator> scan_eval;
    if (eval.engine() == DensityEngine::CfInversion) {
        QuadratureConfig relaxed = cfg;
        relaxed.abs_tol = 1e-7;
        relaxed.rel_tol = 1e-7;
        scan_eval = std::make_unique<DensityEvaluator>(model, relaxed,
                                                       DensityEngine::CfInversion,
                                                       x_hi * 1.0000001);
    }
    auto p = [&](double x) {
        return (scan_eval ? *scan_eval : eval).value(x).value;
    };

    // Graded coarse scan (dense near 0 where small n*gamma - 1 exponents put
    // the mode), plus the analytic candidate from the pointwise lower bound.
    const int scan = 512;
    double best_x = 0.0, best_p = -1.0;
    for (int i = 1; i <= scan; ++i) {
        const double u = static_cast<double>(i) / scan;
        const double x = x_hi * u * u * u;
        const double v = p(x);
        if (v > best_p) {
            best_p = v;
            best_x = x;
        }
    }
    const double candidate = (ng - 1.0) * std::sqrt(a.back());
    if (candidate > 0.0 && candidate < x_hi) {
        const double v = p(candidate);
        if (v > best_p) {
            best_p = v;
            best_x = candidate;
        }
    }
    const double lo = std::max(best_x * 0.5, x_hi * 1e-12);
    const double hi = std::min(best_x * 1.5 + x_hi / scan, x_hi);
    const double x_star = golden_section_max(p, lo, hi, 1e-8);
    IntegralResult at = eval.value(x_star);
    res.m = at.value;
    res.argmax = x_star;
    res.err_est = at.err_est;
    if (best_p > res.m + 1e-7) {
        // The relaxed scan saw a larger value outside the refined bracket.
        IntegralResult alt = eval.value(best_x);
        if (alt.value > res.m) {
            res.m = alt.value;
            res.argmax = best_x;
            res.err_est = alt.err_est;
        }
    }
    res.err_est += 5e-9 * std::abs(res.m);
    res.engine = engine_name(eval.engine());
    return res;
}

IntegralResult relative_entropy_to_gaussian(const GammaSumModel& model,
                                            const QuadratureConfig& cfg) {
    EntropyResult h = shannon_entropy(model, cfg);
    const double h_gauss =
        0.5 * std::log(2.0 * 3.14159265358979323846 * 2.718281828459045235 *
                       model.variance());
    return {h_gauss - h.value, h.err_est};
}

double equal_weights_entropy(double gamma, int n) {
    if (!(gamma > 0.0) || n < 1)
        throw DomainError("equal_weights_entropy: gamma > 0 and n >= 1 required");
    const double ng = gamma * n;
    return ng + log_gamma(ng) + (1.0 - ng) * digamma(ng) - 0.5 * std::log(double(n));
}

double equal_weights_renyi(double gamma, int n, double alpha) {
    if (!(gamma > 0.0) || n < 1)
        throw DomainError("equal_weights_renyi: gamma > 0 and n >= 1 required");
    if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12)
        throw DomainError("equal_weights_renyi: requires alpha > 0, alpha != 1");
    const double ng = gamma * n;
    const double ex = alpha * (ng - 1.0) + 1.0;
    if (ex <= 0.0)
        throw DomainError("equal_weights_renyi: divergent (alpha (n gamma - 1) + 1 <= 0)");
    const double log_int = 0.5 * alpha * ng * std::log(double(n)) - alpha * log_gamma(ng) +
                           log_gamma(ex) - ex * (std::log(alpha) + 0.5 * std::log(double(n)));
    return log_int / (1.0 - alpha);
}

EntropyResult entropy_of_order(const GammaSumModel& model, double alpha,
                               const QuadratureConfig& cfg, DensityEngine engine) {
    if (alpha == 0.0) {
        // h_0 is the log support measure, infinite on (0, inf).
        EntropyResult res;
        res.order = 0.0;
        res.value = kInf;
        res.engine = "support";
        return res;
    }
    if (std::isinf(alpha)) {
        MaxDensityResult m = max_density(model, cfg, engine);
        EntropyResult res;
        res.order = kInf;
        res.engine = m.engine;
        if (m.infinite) {
            res.value = -kInf;
        } else {
            res.value = -std::log(m.m);
            res.err_est = m.err_est / m.m;
        }
        return res;
    }
    if (std::abs(alpha - 1.0) < 1e-12)
        return shannon_entropy(model, cfg, engine);
    return renyi_entropy(model, alpha, cfg, engine);
}

} // namespace gsum
