#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsum/model.hpp"
#include "gsum/numerics.hpp"

namespace gsum {

/// Completely monotone test function Phi(x) = sum_i w_i e^{-s_i x}, optionally
/// the power law Phi(x) = x^{-q} realized as a gamma mixture of exponentials.
struct ExponentialMixture {
    struct Atom {
        double weight = 0.0;
        double rate = 0.0;
    };
    std::vector<Atom> atoms;
    std::optional<double> power_q;
    std::string name;

    void validate() const; // all weights/rates > 0; q > 0 when present
};

/// E Phi(c + sum sqrt(a_j)(X_j - gamma)): exact per atom via the mgf at -s,
/// quadrature over rates for the power law. Requires sum a_j < c^2/(gamma^2 n).
IntegralResult mixture_mean_centred(double gamma, const std::vector<double>& weights,
                                    double c, const ExponentialMixture& mix,
                                    const QuadratureConfig& quad = {});

/// E Phi(sum sqrt(a_j) X_j): exact per atom; the power law needs
/// q < gamma * n_effective for the rate integral to converge.
IntegralResult mixture_mean_raw(double gamma, const std::vector<double>& weights,
                                const ExponentialMixture& mix,
                                const QuadratureConfig& quad = {});

/// F(x) = prod e^{gamma sqrt(x_j)} (1 + sqrt(x_j))^{-gamma} (Schur-concave).
double schur_F(double gamma, const std::vector<double>& x);
/// G(x) = prod (1 + sqrt(x_j))^{-gamma} (Schur-convex).
double schur_G(double gamma, const std::vector<double>& x);

/// Everything needed to replay one certification case.
struct CaseInput {
    std::string suite;
    double gamma = 0.0;
    int n = 0;
    double c = 0.0;      // shift in the centred functional suite
    double alpha = 0.0;  // Renyi order
    int m = 0;           // envelope block count
    int k = 0;           // regime index for the small-shape bound
    double x = 0.0;      // evaluation point for pointwise suites
    int max_order = 0;   // moment suite cap
    std::size_t coord_i = 0, coord_j = 0;
    std::vector<double> a;     // primary weights (descending)
    std::vector<double> b;     // majorized partner, when applicable
    std::vector<double> point; // Schur-Ostrowski evaluation point
    std::vector<ExponentialMixture> mixtures;
    std::string variant;
};

struct CaseResult {
    long index = 0;
    CaseInput input;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // >= -tolerance passes
    double err_est = 0.0;
    double derived = 0.0; // suite-specific reported quantity (no verdict)
    bool pass = false;
    std::string tag;
};

struct CertificateReport {
    std::string suite;
    std::uint64_t seed = 0;
    long trials = 0;
    double tolerance = 0.0;
    std::vector<CaseResult> cases;
    double min_margin = 0.0;
    bool pass = false;
    std::vector<std::string> notes;
};

enum class MixtureFamily { Canonical, Full };

struct CertifyOptions {
    long trials = 200;
    std::uint64_t seed = 1;
    double tolerance = -1.0; // < 0 selects the per-suite default
    int jobs = 1;
    std::optional<double> gamma;
    std::optional<int> n;
    double c = 3.0;
    std::optional<double> alpha;
    int max_order = 12;
    MixtureFamily mixtures = MixtureFamily::Full;
    QuadratureConfig quad{};
};

const std::vector<std::string>& certify_suite_names(); // excludes "all"
double certify_default_tolerance(const std::string& suite);

/// Run one suite; cases are generated deterministically from (seed, index)
/// and may be evaluated concurrently (jobs), with results ordered by index.
CertificateReport certify_run(const std::string& suite, const CertifyOptions& opts);

/// Run every suite in order.
std::vector<CertificateReport> certify_all(const CertifyOptions& opts);

/// Re-evaluate a single serialized case (deterministic; no generation).
CaseResult certify_replay(const CaseInput& input, const CertifyOptions& opts);

} // namespace gsum
