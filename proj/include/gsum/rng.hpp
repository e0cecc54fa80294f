#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gsum {

/// SplitMix64 step, used for seed mixing only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Deterministic sub-stream seed: base seed with a worker/case index mixed in.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ull * (index + 1);
    return splitmix64(s);
}

/// Seeded generator with the variate recipes spelled out (uniform bits ->
/// double, Box-Muller normal, Marsaglia-Tsang gamma), so a given seed yields
/// the same sequence on every platform. The gamma sampler is valid for all
/// shape > 0; shape < 1 goes through the boost-to-shape+1 identity
/// X_g = X_{g+1} * U^{1/g}.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform on (0, 1); never returns exactly 0.
    double uniform() {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Gamma(shape) with unit rate, shape > 0.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double boost = std::pow(uniform(), 1.0 / shape);
            return gamma_mt(shape + 1.0) * boost;
        }
        return gamma_mt(shape);
    }

    /// Exponential(1).
    double exponential() { return -std::log(uniform()); }

private:
    // Marsaglia-Tsang squeeze method, shape >= 1.
    double gamma_mt(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x)
                return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gsum
