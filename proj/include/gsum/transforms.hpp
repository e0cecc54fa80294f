#pragma once

#include <complex>
#include <vector>

#include "gsum/model.hpp"

namespace gsum {

/// Cumulants and central moments of the centred sum S = sum sqrt(a_j)(X_j - shape).
struct MomentTable {
    double shape = 0.0;
    std::vector<double> weights;
    int max_order = 0;
    std::vector<double> cumulants;       // kappa_2 .. kappa_K at [2..K]; [0], [1] unused
    std::vector<double> central_moments; // mu_0 .. mu_K
};

/// E e^{tS} = prod_j (1 - t sqrt(a_j))^{-shape}; requires t < 1/sqrt(a_max).
double mgf(const GammaSumModel& model, double t);

/// ln E e^{t (S - E S)} = -shape * sum_j [t sqrt(a_j) + ln(1 - t sqrt(a_j))].
double centred_log_mgf(const GammaSumModel& model, double t);

/// prod_j (1 - i sqrt(a_j) t)^{-shape}, principal branch per factor.
std::complex<double> cf(const GammaSumModel& model, double t);

/// |cf| of the sum-normalized model, exactly prod (1 + a_j t^2)^{-shape/2}.
double cf_modulus(const GammaSumModel& model, double t);

/// (1 + t^2/m)^{-m*shape/2}; dominates |cf| whenever the normalized largest
/// weight is <= 1/m. Throws when it is not (or the weights do not sum to ~1).
double cf_envelope(const GammaSumModel& model, int m, double t);

/// kappa_k = shape * (k-1)! * sum_j a_j^{k/2}, k >= 2 (all nonnegative).
double cumulant(const GammaSumModel& model, int k);

/// Central moments mu_0..mu_K of the centred sum via the cumulant-to-moment
/// recursion mu_m = sum_{j=2..m} C(m-1, j-1) kappa_j mu_{m-j}. K <= 60.
MomentTable central_moments(const GammaSumModel& model, int max_order);

} // namespace gsum
