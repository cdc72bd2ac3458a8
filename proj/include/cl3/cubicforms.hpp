#ifndef CL3_CUBICFORMS_HPP
#define CL3_CUBICFORMS_HPP

// Integral binary cubic forms a x^3 + b x^2 y + c x y^2 + d y^3 up to the
// twisted GL2(Z) action (g.f)(x, y) = det(g)^{-1} f((x, y) g), i.e. cubic rings.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "cl3/arith.hpp"
#include "cl3/certified.hpp"
#include "cl3/quadfield.hpp"

namespace cl3 {

struct BinaryCubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;

    friend bool operator==(const BinaryCubicForm&, const BinaryCubicForm&) = default;
    friend auto operator<=>(const BinaryCubicForm&, const BinaryCubicForm&) = default;
};

/// 2x2 integer matrix [[p, q], [r, s]].
struct Mat2 {
    i64 p, q, r, s;
    i64 det() const { return p * s - q * r; }
};

i64 disc(const BinaryCubicForm& f);

/// det(g)^{-1} f(p x + r y, q x + s y); g must be unimodular.
BinaryCubicForm act(const Mat2& g, const BinaryCubicForm& f);

/// f(x, 1) evaluated at an integer.
i128 evaluate(const BinaryCubicForm& f, i64 x, i64 y);

/// Canonical representative of the class of f (disc(f) != 0): the smallest
/// form, in lexicographic order of (a, b, c, d), among the reduced forms of
/// the class. Reduced means: for disc > 0 the Hessian
/// (b^2 - 3ac, bc - 9ad, c^2 - 3bd) satisfies |Q| <= P <= R; for disc < 0 the
/// inequalities of Belabas's reduction; in both cases a >= 0, b >= 0 and b > 0
/// when a = 0.
BinaryCubicForm reduce(const BinaryCubicForm& f);
bool is_reduced(const BinaryCubicForm& f);
/// True iff f is reduced and equals reduce(f).
bool is_canonical(const BinaryCubicForm& f);

/// Order of the stabilizer of f in GL2(Z) under the twisted action, which is
/// |Aut| of the cubic ring.
int stabilizer_order(const BinaryCubicForm& f);

/// True iff f has no linear factor over Q.
bool is_irreducible(const BinaryCubicForm& f);

/// True iff the cubic ring of f is maximal at p.
bool is_maximal_at(const BinaryCubicForm& f, i64 p);
/// True iff the cubic ring of f is maximal at every prime.
bool is_maximal(const BinaryCubicForm& f);

struct CubicRingClass {
    BinaryCubicForm form;
    i64 disc = 0;
    int aut_order = 1;
    bool maximal = false;
    bool irreducible = false;
};

struct EnumerateOptions {
    /// Multiplies every coefficient bound; the doubling check compares 1 and 2.
    double box_scale = 1.0;
    int jobs = 1;
};

/// All classes with 0 < sign * disc <= bound, each once by its canonical
/// form, ordered by |disc| then form.
std::vector<CubicRingClass> enumerate(u64 bound, int sign, const EnumerateOptions& opts = {});

/// Aggregated statistics of one enumeration.
struct CubicCensus {
    u64 bound = 0;
    int sign = 1;
    u64 classes = 0;
    /// Number of classes with stabilizer order 1, 2, 3, 6.
    std::array<u64, 4> by_aut{};
    u64 fields_s3 = 0;
    u64 fields_c3 = 0;
    /// Number of cubic fields of each discriminant.
    std::map<i64, u64> fields_by_disc;
    u64 fields() const { return fields_s3 + fields_c3; }
    /// sum over classes of 1/aut.
    CertifiedReal weighted_count() const;
};

CubicCensus census(u64 bound, int sign, const EnumerateOptions& opts = {});
CubicCensus census_of(const std::vector<CubicRingClass>& classes, u64 bound, int sign);

struct FieldCount {
    u64 s3 = 0;
    u64 c3 = 0;
    u64 total() const { return s3 + c3; }
};
FieldCount count_fields(u64 bound, int sign, const EnumerateOptions& opts = {});

/// sum of 1/aut over all classes with 0 < sign * disc <= bound.
CertifiedReal weighted_ring_count(u64 bound, int sign, const EnumerateOptions& opts = {});

/// 1 + 2 * (number of cubic fields of discriminant exactly d).
i64 h3_via_fields(FundamentalDiscriminant d);

/// h3 for every fundamental d with 0 < sign * d <= bound, computed from one
/// enumeration; keyed by d.
std::map<i64, i64> h3_table_via_fields(u64 bound, int sign, const EnumerateOptions& opts = {});

enum class CubicSignature { TotallyReal, Mixed };

struct ShintaniResidues {
    /// Residue at s = 1 (the leading term of the count).
    CertifiedReal primary;
    /// Residue at s = 5/6 (coefficient of X^{5/6} after dividing by 5/6).
    CertifiedReal secondary;
};

ShintaniResidues shintani_residue(CubicSignature alpha);

}  // namespace cl3

#endif
