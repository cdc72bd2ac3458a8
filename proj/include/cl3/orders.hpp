#ifndef CL3_ORDERS_HPP
#define CL3_ORDERS_HPP

// Orders in cubic etale algebras over Q: the Euler product counting them,
// a lattice oracle, and the generating series over a fixed quadratic resolvent.

#include <array>
#include <map>
#include <vector>

#include "cl3/cubicforms.hpp"
#include "cl3/quadfield.hpp"
#include "cl3/rational.hpp"

namespace cl3 {

enum class AlgebraKind { Split, QuadraticTimesQ, CubicField };

/// How p decomposes in the maximal order: (1,1,1), (1,2), (3), (1^2,1), (1^3).
enum class SplittingType { Split, PartialInert, Inert, PartialRamified, TotallyRamified };

const char* to_string(SplittingType t);

class CubicAlgebra {
public:
    /// From a form whose ring is maximal.
    explicit CubicAlgebra(const BinaryCubicForm& maximal_form);
    /// Q^3.
    static CubicAlgebra split();
    /// Q x F.
    static CubicAlgebra quadratic_times_q(FundamentalDiscriminant d);

    AlgebraKind kind() const { return kind_; }
    const BinaryCubicForm& form() const { return form_; }
    i64 disc() const { return cl3::disc(form_); }
    /// |Aut(A)|: 6 for Q^3, 2 for Q x F, 3 for cyclic fields, 1 otherwise.
    int aut_order() const;

    SplittingType splitting_type(i64 p) const;

private:
    BinaryCubicForm form_;
    AlgebraKind kind_;
    mutable std::map<i64, SplittingType> cache_;
};

/// a_1..a_N of f_A(s) = zeta(4s) zeta(6s-1) zeta_A(2s) / zeta_A(4s); entry
/// n - 1 is the number of orders of index sqrt(n) (zero off squares).
struct DirichletCoefficients {
    u64 bound = 0;
    std::vector<u64> coefficients;
    u64 at(u64 n) const { return coefficients.at(n - 1); }
};

DirichletCoefficients dw_coefficients(const CubicAlgebra& A, u64 bound);

/// Structure constants: e_i e_j = sum_k c[i][j][k] e_k with e_0 = 1.
struct MultTable {
    std::array<std::array<std::array<i64, 3>, 3>, 3> c{};
};

/// Delone-Faddeev basis: w t = -ad, w^2 = -ac + b w - a t, t^2 = -bd + d w - c t.
MultTable mult_table(const BinaryCubicForm& f);

/// det of the trace form, which equals disc(f) for mult_table(f).
i64 trace_form_disc(const MultTable& t);

/// Sublattices of index m containing 1 and closed under multiplication.
/// Rejects tables that are not commutative, associative and unital.
u64 brute_subrings(const MultTable& t, u64 m);

struct ResolventRow {
    u64 n = 0;
    /// Sum over ring classes of disc(F) n^2 in the family of 1/|Aut(R)|.
    Rational lhs;
    /// Same classes weighted by 1/|Aut(A)|.
    Rational lhs_algebra_weight;
    /// (h3/2) times the n-th coefficient of zeta(t) zeta(3t-1) sum Nm(a)^{-t}.
    Rational rhs;
    u64 rings = 0;
    bool equal() const { return lhs == rhs; }
};

struct ResolventReport {
    i64 disc = 0;
    i64 h3 = 1;
    std::vector<ResolventRow> rows;
    bool all_equal() const;
};

/// Compares both sides of the resolvent generating series for n = 1..depth.
/// depth <= 3 so the index of every ring in its maximal order is read off
/// the local maximality test.
ResolventReport resolvent_series_check(FundamentalDiscriminant F, int depth);

/// Number of squarefree ideals of O_F of norm N whose class is a cube, for N <= bound.
std::vector<u64> cube_class_squarefree_ideals(FundamentalDiscriminant F, u64 bound);

}  // namespace cl3

#endif
