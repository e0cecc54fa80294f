#include "doctest.h"

#include <cmath>

#include "gsum/model.hpp"
#include "gsum/rng.hpp"

using namespace gsum;

TEST_CASE("weight vector validation and parsing") {
    CHECK_THROWS_AS(WeightVector({}), DomainError);
    CHECK_THROWS_AS(WeightVector({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(WeightVector({-0.1, 1.0}), DomainError);
    WeightVector w = WeightVector::parse("0.5, 0.3,0.2");
    CHECK(w.size() == 3);
    CHECK(w.sum() == doctest::Approx(1.0));
    CHECK(w.canonical_order());
    CHECK_FALSE(WeightVector({0.2, 0.8}).canonical_order());
    CHECK(WeightVector({0.2, 0.8}).sorted_desc().values()[0] == 0.8);
    CHECK(WeightVector({2.0, 2.0}).normalized().sum() == doctest::Approx(1.0));
    CHECK(WeightVector({0.5, 0.0, 0.5}).n_effective() == 2);
    CHECK_THROWS_AS(WeightVector::parse("0.5,abc"), DomainError);
}

TEST_CASE("model invariants") {
    GammaSumModel m(1.5, WeightVector({0.5, 0.25, 0.25}));
    CHECK(m.variance() == doctest::Approx(1.5));
    CHECK(m.mean() ==
          doctest::Approx(1.5 * (std::sqrt(0.5) + std::sqrt(0.25) + std::sqrt(0.25))));
    CHECK_THROWS_AS(GammaSumModel(0.0, WeightVector({1.0})), DomainError);
}

TEST_CASE("is_majorized on fixed cases") {
    CHECK(is_majorized(WeightVector({1.0, 0.0}), WeightVector({0.5, 0.5})));
    CHECK(is_majorized(WeightVector({0.7, 0.2, 0.1}), WeightVector({0.5, 0.3, 0.2})));
    CHECK_FALSE(is_majorized(WeightVector({0.6, 0.4}), WeightVector({0.7, 0.3})));
    CHECK_THROWS_AS(is_majorized(WeightVector({1.0}), WeightVector({0.5, 0.5})),
                    DomainError);
    CHECK_THROWS_AS(is_majorized(WeightVector({1.0, 0.1}), WeightVector({0.5, 0.5})),
                    DomainError);
}

TEST_CASE("random majorization pairs satisfy the order") {
    for (int i = 0; i < 1000; ++i) {
        MajorizationPair p = random_majorization_pair(5, 1.0, 1000 + i);
        CHECK(is_majorized(p.upper, p.lower));
        bool distinct = false;
        for (std::size_t k = 0; k < p.upper.size(); ++k)
            distinct = distinct || std::abs(p.upper.values()[k] - p.lower.values()[k]) > 1e-14;
        CHECK(distinct);
        for (double w : p.witness)
            CHECK(w >= -1e-12);
    }
    // determinism
    MajorizationPair a = random_majorization_pair(4, 2.0, 99);
    MajorizationPair b = random_majorization_pair(4, 2.0, 99);
    CHECK(a.upper.values() == b.upper.values());
    CHECK(a.lower.values() == b.lower.values());
}

TEST_CASE("single Robin-Hood transfer preserves majorization") {
    Rng rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + int(rng.bits() % 5);
        std::vector<double> a(n);
        double s = 0.0;
        for (double& v : a)
            s += (v = rng.exponential());
        for (double& v : a)
            v /= s;
        std::size_t i = rng.bits() % n, j = rng.bits() % n;
        if (i == j || std::abs(a[i] - a[j]) < 1e-9)
            continue;
        if (a[i] < a[j])
            std::swap(i, j);
        std::vector<double> b = a;
        const double delta = 0.5 * (a[i] - a[j]) * rng.uniform();
        b[i] -= delta;
        b[j] += delta;
        CHECK(is_majorized(WeightVector(a), WeightVector(b)));
    }
}

TEST_CASE("majorization chains are transitive") {
    for (int i = 0; i < 200; ++i) {
        MajorizationPair p1 = random_majorization_pair(5, 1.0, 7000 + i);
        // chain: upper > lower > lower2
        MajorizationPair p2{p1.lower, p1.lower, {}};
        // apply another independent transfer to p1.lower via a fresh pair draw
        // anchored at p1.lower by scaling trick: use random pair on same total
        // and compose manually.
        std::vector<double> b = p1.lower.sorted_desc().values();
        std::vector<double> c = b;
        const std::size_t n = c.size();
        Rng rng(9000 + i);
        const double delta = 0.25 * (c[0] - c[n - 1]) * rng.uniform();
        c[0] -= delta;
        c[n - 1] += delta;
        CHECK(is_majorized(p1.upper, WeightVector(b)));
        CHECK(is_majorized(WeightVector(b), WeightVector(c)));
        CHECK(is_majorized(p1.upper, WeightVector(c)));
    }
}

TEST_CASE("uniform vector is majorized by every vector of the same sum") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + int(rng.bits() % 6);
        const double total = rng.uniform(0.5, 4.0);
        std::vector<double> a(n);
        double s = 0.0;
        for (double& v : a)
            s += (v = rng.exponential());
        for (double& v : a)
            v *= total / s;
        std::vector<double> u(n, total / n);
        CHECK(is_majorized(WeightVector(a), WeightVector(u)));
    }
}

TEST_CASE("schur_ostrowski_check signs") {
    auto sum_f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x)
            s += v;
        return s;
    };
    const std::vector<double> x{1.0, 4.0};
    CHECK(std::abs(schur_ostrowski_check(sum_f, x, 0, 1)) <= 1e-8);

    auto sq = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double t : v)
            s += t * t;
        return s;
    };
    CHECK(schur_ostrowski_check(sq, x, 0, 1) > 0.0); // Schur-convex

    CHECK_THROWS_AS(schur_ostrowski_check(sum_f, x, 0, 0), DomainError);
    CHECK_THROWS_AS(schur_ostrowski_check(sum_f, {1.0, 1.0}, 0, 1), DomainError);
    CHECK_THROWS_AS(schur_ostrowski_check(sum_f, {1e-9, 1.0}, 0, 1, 0.5), DomainError);
}
