#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsum/common.hpp"

namespace gsum {

/// Nonnegative weights a_j; the summands of the model carry coefficients
/// sqrt(a_j). At least one entry must be positive.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> values);
    static WeightVector parse(const std::string& comma_separated);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double sum() const;
    std::size_t n_effective() const; // strictly positive entries
    bool canonical_order() const { return canonical_; }

    WeightVector sorted_desc() const;
    WeightVector normalized() const; // scaled so the sum is 1
    std::vector<double> positive_sorted_desc() const;

private:
    std::vector<double> values_;
    bool canonical_ = false;
};

/// S = sum_j sqrt(a_j) X_j with X_j i.i.d. Gamma(shape), unit rate.
class GammaSumModel {
public:
    GammaSumModel(double shape, WeightVector weights);

    double shape() const { return shape_; }
    const WeightVector& weights() const { return weights_; }
    std::size_t n_effective() const { return weights_.n_effective(); }
    double weight_sum() const { return weights_.sum(); }
    double variance() const { return shape_ * weights_.sum(); } // = shape when sum a_j = 1
    double mean() const;                                        // shape * sum sqrt(a_j)
    std::vector<double> positive_sorted_desc() const { return weights_.positive_sorted_desc(); }

private:
    double shape_;
    WeightVector weights_;
};

struct MajorizationPair {
    WeightVector upper;           // a with a majorizing b
    WeightVector lower;           // b
    std::vector<double> witness;  // prefix-sum differences of the sorted vectors
};

/// True iff a majorizes b: equal sums and every descending prefix sum of a
/// dominates the corresponding prefix sum of b. Throws on length or sum
/// mismatch (tolerance 1e-12 relative to the totals).
bool is_majorized(const WeightVector& a, const WeightVector& b);

/// Draw a on the scaled simplex (sum = total) and derive b by 1-3 Robin-Hood
/// transfers, guaranteeing a majorizes b with a != b. Deterministic in seed.
MajorizationPair random_majorization_pair(int n, double total, std::uint64_t seed);

/// Central-difference Schur-Ostrowski statistic
/// (x_i - x_j) (df/dx_i - df/dx_j); negative indicates a locally
/// Schur-concave direction, positive Schur-convex. h <= 0 selects the
/// default step 1e-5 * max(1, |x_i|, |x_j|).
double schur_ostrowski_check(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x, std::size_t i, std::size_t j,
                             double h = 0.0);

} // namespace gsum
