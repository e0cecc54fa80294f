#include "gsum/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsum/rng.hpp"

namespace gsum {

namespace {

bool sorted_descending(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1])
            return false;
    return true;
}

} // namespace

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty())
        throw DomainError("WeightVector: empty weight list");
    bool any_positive = false;
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("WeightVector: weights must be finite and >= 0");
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive)
        throw DomainError("WeightVector: at least one weight must be positive");
    canonical_ = sorted_descending(values_);
}

WeightVector WeightVector::parse(const std::string& comma_separated) {
    std::vector<double> out;
    std::stringstream ss(comma_separated);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw DomainError("WeightVector: cannot parse '" + item + "'");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
            ++pos;
        if (pos != item.size())
            throw DomainError("WeightVector: cannot parse '" + item + "'");
        out.push_back(v);
    }
    return WeightVector(std::move(out));
}

double WeightVector::sum() const {
    double s = 0.0;
    for (double v : values_)
        s += v;
    return s;
}

std::size_t WeightVector::n_effective() const {
    std::size_t n = 0;
    for (double v : values_)
        n += v > 0.0 ? 1 : 0;
    return n;
}

WeightVector WeightVector::sorted_desc() const {
    std::vector<double> v = values_;
    std::sort(v.begin(), v.end(), std::greater<double>());
    return WeightVector(std::move(v));
}

WeightVector WeightVector::normalized() const {
    const double s = sum();
    std::vector<double> v = values_;
    for (double& x : v)
        x /= s;
    return WeightVector(std::move(v));
}

std::vector<double> WeightVector::positive_sorted_desc() const {
    std::vector<double> v;
    v.reserve(values_.size());
    for (double x : values_)
        if (x > 0.0)
            v.push_back(x);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}

GammaSumModel::GammaSumModel(double shape, WeightVector weights)
    : shape_(shape), weights_(std::move(weights)) {
    if (!(shape > 0.0) || !std::isfinite(shape))
        throw DomainError("GammaSumModel: shape must be positive");
}

double GammaSumModel::mean() const {
    double s = 0.0;
    for (double a : weights_.values())
        s += std::sqrt(a);
    return shape_ * s;
}

bool is_majorized(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size())
        throw DomainError("is_majorized: length mismatch");
    const double sa = a.sum(), sb = b.sum();
    const double tol = 1e-12 * std::max(1.0, std::max(sa, sb));
    if (std::abs(sa - sb) > tol)
        throw DomainError("is_majorized: sums differ beyond tolerance");
    std::vector<double> av = a.sorted_desc().values();
    std::vector<double> bv = b.sorted_desc().values();
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) {
        pa += av[k];
        pb += bv[k];
        if (pa < pb - tol)
            return false;
    }
    return true;
}

MajorizationPair random_majorization_pair(int n, double total, std::uint64_t seed) {
    if (n < 2)
        throw DomainError("random_majorization_pair: requires n >= 2");
    if (!(total > 0.0))
        throw DomainError("random_majorization_pair: total must be positive");
    Rng rng(seed);
    std::vector<double> a(n);
    for (;;) {
        double s = 0.0;
        for (double& v : a) {
            v = rng.exponential(); // Dirichlet(1) on the simplex
            s += v;
        }
        for (double& v : a)
            v *= total / s;
        std::sort(a.begin(), a.end(), std::greater<double>());
        if (a[0] - a[n - 1] > 1e-6 * total)
            break; // need two unequal coordinates for a nontrivial transfer
    }

    std::vector<double> b = a;
    const int transfers = 1 + static_cast<int>(rng.bits() % 3);
    int applied = 0;
    for (int t = 0; (t < transfers || applied == 0) && t < 128; ++t) {
        const std::size_t i = rng.bits() % n;
        const std::size_t j = rng.bits() % n;
        const std::size_t hi = b[i] >= b[j] ? i : j;
        const std::size_t lo = b[i] >= b[j] ? j : i;
        const double gap = b[hi] - b[lo];
        if (hi == lo || gap <= 1e-9 * total)
            continue;
        // Move mass from the larger to the smaller without crossing.
        const double delta = 0.5 * gap * rng.uniform(0.05, 0.95);
        b[hi] -= delta;
        b[lo] += delta;
        ++applied;
    }
    if (applied == 0) {
        const auto hi = std::max_element(b.begin(), b.end()) - b.begin();
        const auto lo = std::min_element(b.begin(), b.end()) - b.begin();
        const double delta = 0.25 * (b[hi] - b[lo]);
        b[hi] -= delta;
        b[lo] += delta;
    }

    MajorizationPair pair{WeightVector(a), WeightVector(b), {}};
    std::vector<double> bs = pair.lower.sorted_desc().values();
    double pa = 0.0, pb = 0.0;
    pair.witness.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        pa += a[k];
        pb += bs[k];
        pair.witness.push_back(pa - pb);
    }
    return pair;
}

double schur_ostrowski_check(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x, std::size_t i, std::size_t j,
                             double h) {
    if (i >= x.size() || j >= x.size() || i == j)
        throw DomainError("schur_ostrowski_check: bad coordinate indices");
    if (x[i] == x[j])
        throw DomainError("schur_ostrowski_check: requires x_i != x_j");
    if (h <= 0.0)
        h = 1e-5 * std::max({1.0, std::abs(x[i]), std::abs(x[j])});
    if (x[i] - h < 0.0 || x[j] - h < 0.0)
        throw DomainError("schur_ostrowski_check: step leaves the nonnegative domain");

    auto partial = [&](std::size_t k) {
        std::vector<double> xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        return (f(xp) - f(xm)) / (2.0 * h);
    };
    return (x[i] - x[j]) * (partial(i) - partial(j));
}

} // namespace gsum
