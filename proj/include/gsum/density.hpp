#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsum/model.hpp"
#include "gsum/numerics.hpp"

namespace gsum {

enum class DensityEngine { Auto, Closed, CfInversion, Convolution, MonteCarlo };

std::string engine_name(DensityEngine e);
DensityEngine engine_from_name(const std::string& name); // throws DomainError

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> err; // per-point estimates
    std::string engine;
    double shape = 0.0;
    std::vector<double> weights;
    // resolved run configuration echoed into the CSV header (optional)
    std::vector<std::pair<std::string, std::string>> config;
};

/// Density of sum_j X_j / sqrt(n), X_j i.i.d. Gamma(gamma):
/// n^{gamma n/2} / Gamma(gamma n) * x^{gamma n - 1} e^{-x sqrt(n)}.
/// Returns 0 for x <= 0.
double density_closed_equal(double gamma, int n, double x);

/// Fourier inversion of the product characteristic function along the ray
/// t = r e^{-i pi/4}, where the integrand decays like e^{-x r / sqrt(2)}.
/// Requires shape * n_effective > 1 (absolute integrability).
IntegralResult density_cf_inversion(const GammaSumModel& model, double x,
                                    const QuadratureConfig& cfg = {});

/// Sequential numerical convolution of the scaled Gamma(shape) factors, done
/// on the smooth reduced density q(x) = p(x) / x^{n gamma - 1}. Valid in
/// every regime, including n_effective * shape <= 1.
DensityCurve density_convolution(const GammaSumModel& model, const std::vector<double>& grid,
                                 const QuadratureConfig& cfg = {}, int jobs = 1);

/// count i.i.d. draws of S. Deterministic in seed and independent of jobs:
/// fixed-size blocks each use a generator seeded by the block index mixed
/// into the base seed.
std::vector<double> sample(const GammaSumModel& model, std::size_t count, std::uint64_t seed,
                           int jobs = 1);

struct PointBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Pointwise sandwich for strictly positive weights:
/// Gamma(n g)^{-1} (a_1...a_n)^{-g/2} x^{n g - 1} e^{-x/sqrt(a_min)}
///   <= p(x) <= same without the exponential factor.
PointBounds density_bounds_pointwise(const GammaSumModel& model, double x);

/// Maximum over x of the pointwise lower bound; a guaranteed lower bound
/// for the density supremum M for any weight vector.
double density_lower_bound_max(const GammaSumModel& model);

/// sqrt(m) Gamma((m g - 1)/2) / (2 sqrt(pi) Gamma(m g / 2)); upper-bounds M
/// for every sum-normalized model with a_1 <= 1/m. Requires m * gamma > 1.
double fourier_density_bound(double gamma, int m);

/// Engine-backed pointwise density p(x) with an error estimate. Auto picks
/// closed form for equal weights or a single summand, characteristic-function
/// inversion when shape * n_effective > 1.1, and convolution otherwise.
class DensityEvaluator {
public:
    DensityEvaluator(const GammaSumModel& model, const QuadratureConfig& cfg = {},
                     DensityEngine engine = DensityEngine::Auto, double x_max_hint = 0.0,
                     std::uint64_t mc_seed = 0x5eed, std::size_t mc_count = 1000000,
                     int jobs = 1);
    ~DensityEvaluator();
    DensityEvaluator(DensityEvaluator&&) noexcept;
    DensityEvaluator& operator=(DensityEvaluator&&) noexcept;

    IntegralResult value(double x) const;
    DensityEngine engine() const;
    double x_max() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Curve over an ascending positive grid with the chosen engine.
DensityCurve density_curve(const GammaSumModel& model, const std::vector<double>& grid,
                           const QuadratureConfig& cfg = {},
                           DensityEngine engine = DensityEngine::Auto, int jobs = 1,
                           std::uint64_t mc_seed = 0x5eed, std::size_t mc_count = 1000000);

/// Monte Carlo quantile (order statistic of `count` draws); used for grid
/// placement only.
double mc_quantile(const GammaSumModel& model, double p, std::size_t count = 100000,
                   std::uint64_t seed = 0x5eed);

/// Default evaluation grid: geometric refinement toward 0 (exponent
/// max(1, 1/gamma)) up to the bulk, linear out to mean + 12 sigma.
std::vector<double> default_grid(const GammaSumModel& model, std::size_t count = 4096,
                                 std::uint64_t seed = 0x5eed);

} // namespace gsum
