#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "cl3/orders.hpp"

using namespace cl3;

namespace {

const std::vector<BinaryCubicForm>& field_forms() {
    static const std::vector<BinaryCubicForm> forms = {
        {1, 0, -1, -1},  // -23
        {1, 0, 1, 1},    // -31
        {1, 1, -2, -1},  // 49
        {1, 0, -3, 1},   // 81
        {1, 0, -4, -1},  // 229
    };
    return forms;
}

}  // namespace

TEST_CASE("field forms have the expected discriminants") {
    std::vector<i64> expect{-23, -31, 49, 81, 229};
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(disc(field_forms()[i]) == expect[i]);
        CHECK(CubicAlgebra(field_forms()[i]).kind() == AlgebraKind::CubicField);
    }
    CHECK(CubicAlgebra::split().disc() == 1);
    CHECK(CubicAlgebra::split().kind() == AlgebraKind::Split);
    CHECK(CubicAlgebra::quadratic_times_q(FundamentalDiscriminant(-4)).disc() == -4);
    CHECK(CubicAlgebra::quadratic_times_q(FundamentalDiscriminant(5)).kind() == AlgebraKind::QuadraticTimesQ);
    CHECK_THROWS(CubicAlgebra(BinaryCubicForm{1, 0, 0, -4}));
}

TEST_CASE("splitting type examples") {
    CubicAlgebra k23(field_forms()[0]);
    CHECK(k23.splitting_type(2) == SplittingType::Inert);
    CHECK(k23.splitting_type(23) == SplittingType::PartialRamified);
    CHECK(k23.splitting_type(59) == SplittingType::Split);  // x^3 - x - 1 = (x-4)(x-13)(x-42) mod 59
    for (i64 p : {2, 3, 5, 7, 11}) CHECK(CubicAlgebra::split().splitting_type(p) == SplittingType::Split);
    CHECK(CubicAlgebra(field_forms()[2]).splitting_type(7) == SplittingType::TotallyRamified);
    CHECK(CubicAlgebra(field_forms()[3]).splitting_type(3) == SplittingType::TotallyRamified);
}

TEST_CASE("splitting types agree with the discriminant valuation") {
    for (const auto& f : field_forms()) {
        CubicAlgebra A(f);
        for (u64 p : primes_up_to(200)) {
            SplittingType t = A.splitting_type(static_cast<i64>(p));
            bool ramified = t == SplittingType::PartialRamified || t == SplittingType::TotallyRamified;
            CHECK(ramified == (A.disc() % static_cast<i64>(p) == 0));
            // (1,2) and (3) are distinguished by the Kronecker symbol of disc:
            // an odd permutation of the roots of Frobenius has chi = -1.
            if (!ramified && p > 2) {
                int chi = kronecker(A.disc(), static_cast<i64>(p));
                CHECK((t == SplittingType::PartialInert) == (chi == -1));
            }
        }
    }
}

TEST_CASE("multiplication tables satisfy the trace identity") {
    for (const auto& f : field_forms()) CHECK(trace_form_disc(mult_table(f)) == disc(f));
    CHECK(trace_form_disc(mult_table({0, 1, -1, 0})) == 1);
    CHECK(trace_form_disc(mult_table({3, -2, 5, 7})) == disc({3, -2, 5, 7}));
    MultTable bad = mult_table({1, 0, -1, -1});
    bad.c[1][2][0] += 1;
    bad.c[2][1][0] += 1;
    CHECK_THROWS_AS(brute_subrings(bad, 2), Error);
}

TEST_CASE("dw coefficient examples") {
    CHECK(dw_coefficients(CubicAlgebra::split(), 30).at(1) == 1);
    CHECK(dw_coefficients(CubicAlgebra::split(), 30).at(4) == 3);
    CHECK(dw_coefficients(CubicAlgebra(field_forms()[0]), 30).at(4) == 0);
    auto c = dw_coefficients(CubicAlgebra(field_forms()[1]), 50);
    for (u64 n = 1; n <= 50; ++n)
        if (!is_square(static_cast<i64>(n))) CHECK(c.at(n) == 0);
}

TEST_CASE("Euler product matches the lattice oracle") {
    std::vector<CubicAlgebra> algebras;
    for (const auto& f : field_forms()) algebras.emplace_back(f);
    algebras.push_back(CubicAlgebra::split());
    algebras.push_back(CubicAlgebra::quadratic_times_q(FundamentalDiscriminant(-4)));
    for (const auto& A : algebras) {
        auto c = dw_coefficients(A, 49);
        MultTable t = mult_table(A.form());
        for (u64 m = 1; m <= 6; ++m) REQUIRE(c.at(m * m) == brute_subrings(t, m));
    }
}

TEST_CASE("index-7 orders in the cyclic field of conductor 7") {
    CubicAlgebra A(field_forms()[2]);
    CHECK(dw_coefficients(A, 49).at(49) == brute_subrings(mult_table(A.form()), 7));
}

TEST_CASE("dw coefficients are multiplicative") {
    for (const auto& f : field_forms()) {
        auto c = dw_coefficients(CubicAlgebra(f), 400 * 400);
        for (u64 m = 1; m <= 400; ++m)
            for (u64 k = 1; m * k <= 400; ++k)
                if (std::gcd(m, k) == 1) REQUIRE(c.at(m * m * k * k) == c.at(m * m) * c.at(k * k));
    }
}

TEST_CASE("squarefree ideal classes") {
    // Q(i): every class is trivial, so c(N) counts squarefree ideals.
    auto c = cube_class_squarefree_ideals(FundamentalDiscriminant(-4), 10);
    CHECK(c[1] == 1);
    CHECK(c[2] == 1);   // (1 + i)
    CHECK(c[3] == 0);
    CHECK(c[4] == 0);   // (2) = (1+i)^2 is not squarefree
    CHECK(c[5] == 2);
    CHECK(c[9] == 1);   // (3)
    CHECK(c[10] == 2);
    // Q(sqrt -23): primes above 2 have order 3, so they are not cubes.
    auto c23 = cube_class_squarefree_ideals(FundamentalDiscriminant(-23), 6);
    CHECK(c23[2] == 0);
    CHECK(c23[4] == 1);  // (2)
}

TEST_CASE("resolvent series examples") {
    auto r23 = resolvent_series_check(FundamentalDiscriminant(-23), 1);
    CHECK(r23.h3 == 3);
    CHECK(r23.rows[0].lhs == Rational(3, 2));
    CHECK(r23.rows[0].rhs == Rational(3, 2));
    auto r4 = resolvent_series_check(FundamentalDiscriminant(-4), 1);
    CHECK(r4.rows[0].lhs == Rational(1, 2));
    CHECK(r4.rows[0].rhs == Rational(1, 2));
    CHECK_THROWS_AS(resolvent_series_check(FundamentalDiscriminant(-4), 4), Error);
}

TEST_CASE("resolvent series holds to depth 2 for small discriminants") {
    for (auto d : fundamental_discriminants(100)) {
        auto r = resolvent_series_check(d, 2);
        CHECK(r.rows[0].rhs == Rational(r.h3, 2));
        for (const auto& row : r.rows) {
            INFO("d = " << d.value() << ", n = " << row.n << ": " << row.lhs.str() << " vs " << row.rhs.str());
            CHECK(row.equal());
        }
    }
}

TEST_CASE("resolvent series holds to depth 3 on a sample") {
    for (i64 d : {-3, -4, -23, -31, 5, 8, 12, 229, -107}) {
        auto r = resolvent_series_check(FundamentalDiscriminant(d), 3);
        for (const auto& row : r.rows) {
            INFO("d = " << d << ", n = " << row.n << ": " << row.lhs.str() << " vs " << row.rhs.str());
            CHECK(row.equal());
        }
    }
}
