#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "gsum/common.hpp"

namespace gsum {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_subdivisions = 1 << 15;
    /// Exponent >= 1 for the graded substitution at a declared algebraic
    /// endpoint singularity; 1 maps the singular power exactly to u^0,
    /// larger values leave headroom for logarithmic factors.
    double singularity_grading = 2.0;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double err_est = 0.0;
};

/// ln Gamma(x), x > 0. Relative error <= 1e-12 on [1e-6, 1e6].
double log_gamma(double x);

/// psi(x) = d/dx ln Gamma(x), x > 0. Relative error <= 1e-10 on [1e-3, 1e6].
double digamma(double x);

/// Adaptive Gauss-Kronrod integral of f over [lo, hi]; hi may be +infinity.
/// A nonzero singular_beta declares f ~ (x - lo)^beta near lo (beta > -1);
/// the integral is then computed after the substitution x = lo + u^s with
/// s = singularity_grading / (1 + beta), which removes the algebraic
/// singularity. Throws NumericError on NaN integrand values or when
/// max_subdivisions is exhausted before the tolerance is met.
IntegralResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         const QuadratureConfig& cfg = {}, double singular_beta = 0.0);

/// Characteristic-function inversion integrand: phi(t) e^{-itx} on [0, inf)
/// with |phi(t)| <= envelope_scale * t^{-decay_exponent} for large t.
struct OscillatoryIntegrand {
    std::function<std::complex<double>(double)> phi;
    double x = 0.0;
    double decay_exponent = 2.0;
    double envelope_scale = 1.0;
};

/// (1/pi) * Integral_0^inf Re(phi(t) e^{-itx}) dt — the symmetric half of the
/// Fourier inversion (1/2pi) Integral_R phi e^{-itx}. Splits [0, T] into
/// half-period blocks, accelerates the alternating block sums with the Wynn
/// epsilon algorithm, and folds an analytic envelope bound for the omitted
/// tail into err_est. Requires decay_exponent > 1.
IntegralResult integrate_oscillatory(const OscillatoryIntegrand& g,
                                     const QuadratureConfig& cfg = {});

/// Not-a-knot cubic spline on strictly increasing nodes.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, b_, c_, d_; // y + ax + bx^2 + cx^3 per segment
};

} // namespace gsum
