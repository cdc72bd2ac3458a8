#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "cl3/error.hpp"
#include "cl3/lfunc.hpp"
#include "cl3/quadfield.hpp"

using namespace cl3;

namespace {

std::vector<i64> values(const std::vector<FundamentalDiscriminant>& ds) {
    std::vector<i64> v;
    for (auto d : ds) v.push_back(d.value());
    return v;
}

// f(px + qy, rx + sy) for a unimodular substitution.
QuadraticForm substitute(const QuadraticForm& f, i64 p, i64 q, i64 r, i64 s) {
    return {f.a * p * p + f.b * p * r + f.c * r * r, 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.a * q * q + f.b * q * s + f.c * s * s};
}

}  // namespace

TEST_CASE("fundamental discriminants: small bounds") {
    CHECK(values(fundamental_discriminants(8)) == std::vector<i64>{-3, -4, 5, -7, 8, -8});
    CHECK(values(fundamental_discriminants(3)) == std::vector<i64>{-3});
    CHECK_THROWS_AS(FundamentalDiscriminant(12 * 4), Error);
    CHECK_THROWS_AS(FundamentalDiscriminant(1), Error);
    CHECK_THROWS_AS(fundamental_discriminants(2), Error);
}

TEST_CASE("fundamental discriminants agree with the direct definition") {
    auto ds = fundamental_discriminants(100000);
    std::size_t i = 0;
    for (i64 n = 3; n <= 100000; ++n) {
        for (i64 d : {n, -n}) {
            if (!is_fundamental_discriminant(d)) continue;
            REQUIRE(i < ds.size());
            CHECK(ds[i].value() == d);
            ++i;
        }
    }
    CHECK(i == ds.size());
}

TEST_CASE("fundamental discriminant count at 10^6") {
    double expected = 6e6 / (M_PI * M_PI);
    double got = static_cast<double>(fundamental_discriminants(1000000).size());
    CHECK(std::fabs(got / expected - 1.0) < 0.01);
}

TEST_CASE("reduce: examples") {
    CHECK(reduce({1, 0, 1}) == QuadraticForm{1, 0, 1});
    CHECK(reduce({2, 2, 3}) == QuadraticForm{2, 2, 3});
    CHECK(reduce({1, 5, 7}) == QuadraticForm{1, 1, 1});
    CHECK_THROWS_AS(reduce({1, 3, 1}), Error);
}

TEST_CASE("reduce is idempotent and class-canonical on random translates") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> step(0, 3);
    auto ds = fundamental_discriminants(3000);
    std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
    int done = 0;
    while (done < 10000) {
        auto d = ds[pick(rng)];
        if (d.is_real()) continue;
        ClassGroup cg(d);
        QuadraticForm f = cg.representative(static_cast<int>(rng() % cg.order()));
        QuadraticForm g = f;
        for (int k = 0; k < 6; ++k) {
            switch (step(rng)) {
                case 0: g = substitute(g, 1, 1, 0, 1); break;
                case 1: g = substitute(g, 1, -1, 0, 1); break;
                case 2: g = substitute(g, 0, -1, 1, 0); break;
                default: g = substitute(g, 1, 0, 1, 1); break;
            }
        }
        REQUIRE(g.discriminant() == d.value());
        QuadraticForm r = reduce(g);
        CHECK(r.discriminant() == d.value());
        CHECK(is_reduced(r));
        CHECK(reduce(r) == r);
        CHECK(r == f);
        ++done;
    }
}

TEST_CASE("class_group: examples") {
    auto q4 = class_group(FundamentalDiscriminant(-4));
    CHECK(q4.h == 1);
    CHECK(q4.h3 == 1);
    CHECK(q4.w == 4);
    CHECK(q4.cl_invariants.empty());

    auto q23 = class_group(FundamentalDiscriminant(-23));
    CHECK(q23.h == 3);
    CHECK(q23.cl_invariants == std::vector<i64>{3});
    CHECK(q23.h3 == 3);
    ClassGroup cg23(FundamentalDiscriminant(-23));
    std::set<QuadraticForm> forms;
    for (int x = 0; x < 3; ++x) forms.insert(cg23.representative(x));
    CHECK(forms == std::set<QuadraticForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    CHECK(cg23.power(1, 3) == cg23.identity());
    CHECK(cg23.power(1, 1) != cg23.identity());

    auto q5 = class_group(FundamentalDiscriminant(5));
    CHECK(q5.h == 1);
    CHECK(q5.r1 == 2);
    CHECK(q5.regulator.contains(std::log((1.0 + std::sqrt(5.0)) / 2.0)));
    CHECK(q5.regulator.mid() == doctest::Approx(0.481212).epsilon(1e-6));

    CHECK(three_torsion(FundamentalDiscriminant(-23)) == 3);
    CHECK(three_torsion(FundamentalDiscriminant(-4)) == 1);
    CHECK(three_torsion(FundamentalDiscriminant(-31)) == 3);
}

TEST_CASE("real quadratic fields: known units and class numbers") {
    CHECK(regulator(FundamentalDiscriminant(12)).contains(std::log(2.0 + std::sqrt(3.0))));
    CHECK(regulator(FundamentalDiscriminant(8)).contains(std::log(1.0 + std::sqrt(2.0))));
    CHECK(regulator(FundamentalDiscriminant(13)).contains(std::log((3.0 + std::sqrt(13.0)) / 2.0)));
    CHECK(regulator(FundamentalDiscriminant(21)).contains(std::log((5.0 + std::sqrt(21.0)) / 2.0)));
    CHECK(class_group(FundamentalDiscriminant(229)).h == 3);
    CHECK(class_group(FundamentalDiscriminant(316)).h == 3);
    CHECK(class_group(FundamentalDiscriminant(40)).h == 2);
    CHECK(class_group(FundamentalDiscriminant(12)).h == 1);
    auto q = class_group(FundamentalDiscriminant(3 * 5 * 7 * 11 * 13 * 4));
    CHECK(q.h % 8 == 0);  // genus theory: 2-rank >= (number of prime divisors) - 2
    ClassGroup c5(FundamentalDiscriminant(5));
    CHECK(c5.norm_minus_one());
    ClassGroup c12(FundamentalDiscriminant(12));
    CHECK_FALSE(c12.norm_minus_one());
}

TEST_CASE("imaginary class numbers match the analytic class number formula") {
    for (auto d : fundamental_discriminants(3000)) {
        if (d.is_real()) continue;
        ClassGroup cg(d);
        CertifiedReal h = CertifiedReal::from_int(roots_of_unity(d)) * sqrt(CertifiedReal::from_int(d.abs())) *
                          l_at_1(d) / (CertifiedReal::exact(2.0) * CertifiedReal::pi());
        CHECK(h.contains(static_cast<double>(cg.order())));
        CHECK(h.rad() < 1e-6);
    }
}

TEST_CASE("class group axioms and trivial bounds") {
    for (auto d : fundamental_discriminants(2000)) {
        auto F = class_group(d);
        i64 prod = 1;
        for (i64 n : F.cl_invariants) prod *= n;
        CHECK(prod == F.h);
        for (std::size_t i = 1; i < F.cl_invariants.size(); ++i)
            CHECK(F.cl_invariants[i] % F.cl_invariants[i - 1] == 0);
        CHECK(F.h3 <= F.h);
        double D = static_cast<double>(d.abs());
        CHECK(static_cast<double>(F.h) <= std::sqrt(D) * (2.0 + std::log(D)) / M_PI + 1.0);
        CHECK(F.r1 + 2 * F.r2 == 2);
    }
    for (i64 dv : {-23, -47, -71, -239, -3299, -4027, 229, 321, 1957}) {
        ClassGroup cg(FundamentalDiscriminant{dv});
        i64 h = cg.order();
        for (int x = 0; x < h; ++x) {
            CHECK(cg.multiply(x, cg.identity()) == x);
            CHECK(cg.multiply(x, cg.inverse(x)) == cg.identity());
            CHECK(cg.power(x, h) == cg.identity());
            for (int y = 0; y < h && y < 8; ++y) {
                CHECK(cg.multiply(x, y) == cg.multiply(y, x));
                int z = (x + 3 * y) % static_cast<int>(h);
                CHECK(cg.multiply(cg.multiply(x, y), z) == cg.multiply(x, cg.multiply(y, z)));
            }
        }
    }
}

TEST_CASE("known class group structures") {
    // 2-part from genus theory, 3-part from standard tables.
    CHECK(class_group(FundamentalDiscriminant(-3299)).cl_invariants == std::vector<i64>{3, 9});
    CHECK(class_group(FundamentalDiscriminant(-4027)).cl_invariants == std::vector<i64>{3, 3});
    CHECK(class_group(FundamentalDiscriminant(-84)).cl_invariants == std::vector<i64>{2, 2});
    CHECK(class_group(FundamentalDiscriminant(-3299)).h3 == 9);
    CHECK(class_group(FundamentalDiscriminant(-4027)).h3 == 9);
}

TEST_CASE("bulk imaginary table matches per-field class groups") {
    auto t1 = imaginary_class_table(6000, 1);
    auto t3 = imaginary_class_table(6000, 3);
    REQUIRE(t1.size() == t3.size());
    std::size_t i = 0;
    for (auto d : fundamental_discriminants(6000)) {
        if (d.is_real()) continue;
        REQUIRE(i < t1.size());
        CHECK(t1[i].d == d.value());
        ClassGroup cg(d);
        CHECK(t1[i].h == cg.order());
        CHECK(t1[i].h3 == cg.three_torsion());
        CHECK(t3[i].d == t1[i].d);
        CHECK(t3[i].h == t1[i].h);
        CHECK(t3[i].h3 == t1[i].h3);
        ++i;
    }
    CHECK(i == t1.size());
}
