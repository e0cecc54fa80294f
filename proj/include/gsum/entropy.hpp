#pragma once

#include <string>

#include "gsum/density.hpp"
#include "gsum/model.hpp"
#include "gsum/numerics.hpp"

namespace gsum {

struct EntropyResult {
    double order = 1.0; // alpha; infinity allowed
    double value = 0.0; // nats; +-infinity for divergent regimes
    double err_est = 0.0;
    std::string engine;
};

/// Shannon entropy -Int p ln p with singularity-aware quadrature near 0.
EntropyResult shannon_entropy(const GammaSumModel& model, const QuadratureConfig& cfg = {},
                              DensityEngine engine = DensityEngine::Auto);

/// Renyi entropy (1-alpha)^{-1} ln Int p^alpha for finite alpha in (0, 64],
/// alpha != 1. Outside the finiteness regime alpha (n_eff gamma - 1) + 1 > 0
/// the result is reported as -infinity (alpha > 1) with engine "divergent".
EntropyResult renyi_entropy(const GammaSumModel& model, double alpha,
                            const QuadratureConfig& cfg = {},
                            DensityEngine engine = DensityEngine::Auto);

struct MaxDensityResult {
    bool infinite = false; // n_eff * gamma < 1: density unbounded at 0
    double m = 0.0;        // sup of the density when finite
    double argmax = 0.0;
    double err_est = 0.0;
    std::string engine;
};

/// M = ||p||_inf. Infinite iff n_eff * gamma < 1; the analytic x -> 0 limit
/// (a_1...a_n)^{-gamma/2} at n_eff * gamma = 1; otherwise a graded coarse scan
/// refined by golden section on the selected engine.
MaxDensityResult max_density(const GammaSumModel& model, const QuadratureConfig& cfg = {},
                             DensityEngine engine = DensityEngine::Auto);

/// D(S || G) = 0.5 ln(2 pi e Var) - h(S) >= 0 at matched variance.
IntegralResult relative_entropy_to_gaussian(const GammaSumModel& model,
                                            const QuadratureConfig& cfg = {});

/// Closed-form entropy of sum_j X_j / sqrt(n) (equal weights, sum 1).
double equal_weights_entropy(double gamma, int n);

/// Closed-form Renyi entropy of the same; requires alpha (n gamma - 1) + 1 > 0.
double equal_weights_renyi(double gamma, int n, double alpha);

/// Unified order dispatch: alpha = 1 -> Shannon, alpha = inf -> -ln M,
/// alpha = 0 -> +infinity (support on (0, inf)). Finite orders above 64 are
/// rejected.
EntropyResult entropy_of_order(const GammaSumModel& model, double alpha,
                               const QuadratureConfig& cfg = {},
                               DensityEngine engine = DensityEngine::Auto);

} // namespace gsum
