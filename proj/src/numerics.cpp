#include "gsum/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gsum {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999235, 0.209482141084727828012999174892};
constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct PanelResult {
    double kronrod = 0.0;
    double err = 0.0;
    bool nan = false;
};

template <typename F>
PanelResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 7; ++i)
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
    resk += kWgk[7] * fv[7];
    resg = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    PanelResult r;
    r.kronrod = resk * h;
    r.err = std::abs((resk - resg) * h);
    r.nan = !std::isfinite(r.kronrod);
    return r;
}

struct Segment {
    double a, b, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

// Adaptive bisection on a finite interval.
IntegralResult adaptive_finite(const std::function<double(double)>& f, double a, double b,
                               const QuadratureConfig& cfg) {
    if (a == b)
        return {0.0, 0.0};
    PanelResult first = gk15(f, a, b);
    if (first.nan)
        throw NumericError("integrate: integrand returned a non-finite value");
    std::priority_queue<Segment> queue;
    queue.push({a, b, first.kronrod, first.err});
    double total = first.kronrod, total_err = first.err;
    double frozen_err = 0.0;
    int segments = 1;
    const double min_width = std::abs(b - a) * 1e-14;
    while (true) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (total_err + frozen_err <= tol || queue.empty())
            break;
        if (segments >= cfg.max_subdivisions)
            throw NumericError("integrate: no convergence within max_subdivisions");
        Segment worst = queue.top();
        queue.pop();
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a < min_width) {
            // Roundoff-limited panel; freeze it instead of splitting forever.
            frozen_err += worst.err;
            continue;
        }
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        if (left.nan || right.nan)
            throw NumericError("integrate: integrand returned a non-finite value");
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.err + right.err;
        queue.push({worst.a, mid, left.kronrod, left.err});
        queue.push({mid, worst.b, right.kronrod, right.err});
        ++segments;
    }
    return {total, total_err + frozen_err};
}

// [lo, inf) via x = lo + v/(1-v), v in [0, 1). Assumes the integrand decays
// faster than x^-2 (all non-oscillatory integrands in this library do).
IntegralResult adaptive_semi_infinite(const std::function<double(double)>& f, double lo,
                                      const QuadratureConfig& cfg) {
    auto mapped = [&f, lo](double v) {
        const double one_minus = 1.0 - v;
        const double x = lo + v / one_minus;
        return f(x) / (one_minus * one_minus);
    };
    return adaptive_finite(mapped, 0.0, 1.0, cfg);
}

// Wynn epsilon acceleration of the partial sums; returns the best even-column
// extrapolant and a residual estimate.
bool wynn_epsilon(const std::vector<double>& sums, double& value, double& residual) {
    const std::size_t n = sums.size();
    if (n < 3)
        return false;
    std::vector<double> prev2(n, 0.0); // epsilon_{-1}
    std::vector<double> prev(sums);    // epsilon_0
    double best = sums.back();
    double best_res = std::abs(n >= 2 ? sums[n - 1] - sums[n - 2] : sums.back());
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> cur(n - k, 0.0);
        bool degenerate = false;
        for (std::size_t i = 0; i + k < n; ++i) {
            const double diff = prev[i + 1] - prev[i];
            if (std::abs(diff) < 1e-300) {
                // Exactly converged tail; the current even column is final.
                degenerate = true;
                break;
            }
            cur[i] = prev2[i + 1] + 1.0 / diff;
        }
        if (degenerate) {
            value = prev.back();
            residual = 0.0;
            return true;
        }
        if (k % 2 == 0) {
            const double res = std::abs(cur.back() - best);
            if (res < best_res) {
                best_res = res;
                best = cur.back();
            }
        }
        prev2.swap(prev);
        prev.swap(cur);
    }
    value = best;
    residual = best_res;
    return true;
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 8)
        throw DomainError("QuadratureConfig: max_subdivisions must be >= 8");
    if (!(singularity_grading >= 1.0))
        throw DomainError("QuadratureConfig: singularity_grading must be >= 1");
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw DomainError("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double digamma(double x) {
    if (!(x > 0.0))
        throw DomainError("digamma: requires x > 0");
    // Recurrence up to x >= 8, then the Bernoulli asymptotic series.
    double result = 0.0;
    while (x < 8.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // B_2/2 x^-2, B_4/4 x^-4, ... for B_2..B_12.
    const double series =
        inv2 * (1.0 / 12.0 +
                inv2 * (-1.0 / 120.0 +
                        inv2 * (1.0 / 252.0 +
                                inv2 * (-1.0 / 240.0 +
                                        inv2 * (1.0 / 132.0 + inv2 * (-691.0 / 32760.0))))));
    return result + std::log(x) - 0.5 * inv - series;
}

IntegralResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         const QuadratureConfig& cfg, double singular_beta) {
    cfg.validate();
    if (!(singular_beta > -1.0))
        throw DomainError("integrate: singularity exponent must be > -1");
    if (!(hi > lo))
        throw DomainError("integrate: requires hi > lo");

    const bool infinite = std::isinf(hi);
    if (singular_beta == 0.0) {
        return infinite ? adaptive_semi_infinite(f, lo, cfg) : adaptive_finite(f, lo, hi, cfg);
    }

    // x = lo + u^s removes the (x - lo)^beta singularity.
    const double s = cfg.singularity_grading / (1.0 + singular_beta);
    const double head_hi = infinite ? lo + 1.0 : hi;
    auto substituted = [&f, lo, s](double u) {
        if (u <= 0.0)
            return 0.0;
        const double x = lo + std::pow(u, s);
        return f(x) * s * std::pow(u, s - 1.0);
    };
    IntegralResult head =
        adaptive_finite(substituted, 0.0, std::pow(head_hi - lo, 1.0 / s), cfg);
    if (!infinite)
        return head;
    IntegralResult tail = adaptive_semi_infinite(f, head_hi, cfg);
    return {head.value + tail.value, head.err_est + tail.err_est};
}

IntegralResult integrate_oscillatory(const OscillatoryIntegrand& g, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(g.decay_exponent > 1.0))
        throw DomainError("integrate_oscillatory: decay_exponent must exceed 1");
    if (!g.phi)
        throw DomainError("integrate_oscillatory: missing integrand");

    const double x = g.x;
    const double d = g.decay_exponent;
    const double C = g.envelope_scale;
    auto integrand = [&](double t) {
        const std::complex<double> v =
            g.phi(t) * std::exp(std::complex<double>(0.0, -t * x));
        return v.real() / kPi;
    };
    // Envelope integral of C t^-d / pi over [a, b].
    auto envelope_piece = [&](double a, double b) {
        if (a <= 0.0)
            return kInf;
        const double upper = std::isinf(b) ? 0.0 : std::pow(b, 1.0 - d);
        return C * (std::pow(a, 1.0 - d) - upper) / ((d - 1.0) * kPi);
    };

    QuadratureConfig block_cfg = cfg;
    block_cfg.abs_tol = cfg.abs_tol / 20.0;
    block_cfg.max_subdivisions = std::max(64, cfg.max_subdivisions / 32);

    // Half-period blocks where the phase oscillates; geometric blocks when
    // e^{-itx} is essentially constant over the envelope's support.
    const double half_period = x > 0.0 ? kPi / x : kInf;
    const bool oscillating = half_period <= 128.0;
    const int max_blocks = oscillating ? 512 : 64;

    std::vector<double> sums;
    sums.reserve(64);
    double value = 0.0, quad_err = 0.0;
    double t_end = 0.0;
    double last_block = kInf;
    IntegralResult out;
    for (int k = 0; k < max_blocks; ++k) {
        const double t_next =
            oscillating ? (k + 1) * half_period : (k == 0 ? 1.0 : 2.0 * t_end);
        IntegralResult block = adaptive_finite(integrand, t_end, t_next, block_cfg);
        value += block.value;
        quad_err += block.err_est;
        last_block = std::abs(block.value);
        t_end = t_next;
        sums.push_back(value);

        double tail_bound = std::min(envelope_piece(t_end, kInf),
                                     envelope_piece(t_end, oscillating
                                                               ? t_end + half_period
                                                               : 2.0 * t_end));
        tail_bound = std::min(tail_bound, last_block);

        double extrap = value, residual = tail_bound;
        const bool have_extrap = wynn_epsilon(sums, extrap, residual);
        const double est_err = quad_err + (have_extrap ? residual : 0.0) + tail_bound;
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(extrap));
        if (k >= 3 && est_err <= tol) {
            out.value = have_extrap ? extrap : value;
            out.err_est = est_err;
            return out;
        }
    }
    // Report the extrapolant with an honest error estimate; refuse only if
    // even that failed to materialize.
    double extrap = value, residual = kInf;
    if (wynn_epsilon(sums, extrap, residual) && std::isfinite(residual)) {
        const double tail_bound = std::min(envelope_piece(t_end, kInf), last_block);
        out.value = extrap;
        out.err_est = quad_err + residual + tail_bound;
        if (out.err_est <= std::max(cfg.abs_tol * 1e3, cfg.rel_tol * 1e3 * std::abs(extrap)))
            return out;
    }
    throw NumericError("integrate_oscillatory: block sums did not converge");
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4 || y_.size() != n)
        throw DomainError("CubicSpline: need >= 4 nodes and matching values");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw DomainError("CubicSpline: nodes must be strictly increasing");

    // Second derivatives m_i with not-a-knot end conditions:
    //   h1 m0 - (h0+h1) m1 + h0 m2 = 0   and mirrored on the right.
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        h[i] = x_[i + 1] - x_[i];
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i];
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    // Express m0 and m_{n-1} through the boundary conditions and solve the
    // reduced tridiagonal system on m[1..n-2] by the Thomas algorithm.
    std::vector<double> m(n, 0.0);
    {
        const std::size_t k = n - 2;
        std::vector<double> cp(n, 0.0), dp(n, 0.0);
        const double d1 = diag[1] + sub[1] * (h[0] + h[1]) / h[1];
        const double s1 = sup[1] - sub[1] * h[0] / h[1];
        const double sb = sub[k] - sup[k] * h[n - 2] / h[n - 3];
        const double dn = diag[k] + sup[k] * (h[n - 3] + h[n - 2]) / h[n - 3];
        cp[1] = s1 / d1;
        dp[1] = rhs[1] / d1;
        for (std::size_t i = 2; i + 1 <= k; ++i) {
            const double den = diag[i] - sub[i] * cp[i - 1];
            cp[i] = sup[i] / den;
            dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / den;
        }
        m[k] = (rhs[k] - sb * dp[k - 1]) / (dn - sb * cp[k - 1]);
        for (std::size_t i = k - 1; i >= 1; --i)
            m[i] = dp[i] - cp[i] * m[i + 1];
        m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
        m[n - 1] = ((h[n - 3] + h[n - 2]) * m[n - 2] - h[n - 2] * m[n - 3]) / h[n - 3];
    }

    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        c_[i] = m[i] / 2.0;
        d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
}

double CubicSpline::operator()(double x) const {
    if (x_.empty())
        throw DomainError("CubicSpline: empty spline");
    std::size_t i;
    if (x <= x_.front())
        i = 0;
    else if (x >= x_.back())
        i = x_.size() - 2;
    else
        i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    const double t = x - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

} // namespace gsum
