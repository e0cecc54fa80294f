#include "gsum/transforms.hpp"

#include <cmath>

#include "gsum/numerics.hpp"

namespace gsum {

namespace {

double max_weight(const GammaSumModel& model) {
    double m = 0.0;
    for (double a : model.weights().values())
        m = std::max(m, a);
    return m;
}

} // namespace

double mgf(const GammaSumModel& model, double t) {
    const double a_max = max_weight(model);
    if (t * std::sqrt(a_max) >= 1.0)
        throw DomainError("mgf: diverges for t >= 1/sqrt(a_max)");
    double log_val = 0.0;
    for (double a : model.weights().values()) {
        if (a == 0.0)
            continue;
        log_val -= model.shape() * std::log1p(-t * std::sqrt(a));
    }
    return std::exp(log_val);
}

double centred_log_mgf(const GammaSumModel& model, double t) {
    const double a_max = max_weight(model);
    if (t * std::sqrt(a_max) >= 1.0)
        throw DomainError("centred_log_mgf: diverges for t >= 1/sqrt(a_max)");
    double val = 0.0;
    for (double a : model.weights().values()) {
        if (a == 0.0)
            continue;
        const double u = t * std::sqrt(a);
        val -= model.shape() * (u + std::log1p(-u));
    }
    return val;
}

std::complex<double> cf(const GammaSumModel& model, double t) {
    std::complex<double> val = 1.0;
    for (double a : model.weights().values()) {
        if (a == 0.0)
            continue;
        val *= std::pow(std::complex<double>(1.0, -std::sqrt(a) * t), -model.shape());
    }
    return val;
}

double cf_modulus(const GammaSumModel& model, double t) {
    double log_val = 0.0;
    for (double a : model.weights().values())
        log_val -= 0.5 * model.shape() * std::log1p(a * t * t);
    return std::exp(log_val);
}

double cf_envelope(const GammaSumModel& model, int m, double t) {
    if (m < 1)
        throw DomainError("cf_envelope: m must be a positive integer");
    const double sum = model.weight_sum();
    if (max_weight(model) / sum > 1.0 / m + 1e-12)
        throw DomainError("cf_envelope: requires normalized a_max <= 1/m");
    return std::exp(-0.5 * m * model.shape() * std::log1p(t * t / m));
}

double cumulant(const GammaSumModel& model, int k) {
    if (k < 2)
        throw DomainError("cumulant: defined for k >= 2 (centred sum has kappa_1 = 0)");
    double s = 0.0;
    for (double a : model.weights().values()) {
        if (a == 0.0)
            continue;
        s += std::pow(a, 0.5 * k);
    }
    if (s == 0.0)
        return 0.0;
    // Log-domain factorial above order 20 delays intermediate overflow.
    if (k > 20)
        return std::exp(std::log(model.shape()) + log_gamma(static_cast<double>(k)) +
                        std::log(s));
    double fact = 1.0;
    for (int i = 2; i < k; ++i)
        fact *= i;
    return model.shape() * fact * s;
}

MomentTable central_moments(const GammaSumModel& model, int max_order) {
    if (max_order < 1)
        throw DomainError("central_moments: max_order must be >= 1");
    if (max_order > 60)
        throw NumericError("central_moments: orders beyond 60 overflow double precision");
    MomentTable table;
    table.shape = model.shape();
    table.weights = model.weights().values();
    table.max_order = max_order;
    table.cumulants.assign(max_order + 1, 0.0);
    for (int k = 2; k <= max_order; ++k)
        table.cumulants[k] = cumulant(model, k);

    // Pascal triangle row by row; C(m-1, j-1) stays exact in double for m <= 60.
    std::vector<std::vector<double>> choose(max_order + 1);
    for (int r = 0; r <= max_order; ++r) {
        choose[r].assign(r + 1, 1.0);
        for (int c = 1; c < r; ++c)
            choose[r][c] = choose[r - 1][c - 1] + choose[r - 1][c];
    }

    table.central_moments.assign(max_order + 1, 0.0);
    table.central_moments[0] = 1.0;
    if (max_order >= 1)
        table.central_moments[1] = 0.0;
    for (int m = 2; m <= max_order; ++m) {
        double mu = 0.0;
        for (int j = 2; j <= m; ++j)
            mu += choose[m - 1][j - 1] * table.cumulants[j] * table.central_moments[m - j];
        if (!std::isfinite(mu))
            throw NumericError("central_moments: overflow in the moment recursion");
        table.central_moments[m] = mu;
    }
    return table;
}

} // namespace gsum
