#ifndef CL3_QUADFIELD_HPP
#define CL3_QUADFIELD_HPP

// Class groups of quadratic fields through binary quadratic forms.

#include <compare>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cl3/arith.hpp"
#include "cl3/certified.hpp"

namespace cl3 {

/// Discriminant of a quadratic field. Construction validates the value.
class FundamentalDiscriminant {
public:
    /// Throws ErrorCode::InvalidDiscriminant unless value is fundamental.
    explicit FundamentalDiscriminant(i64 value);

    i64 value() const { return value_; }
    u64 abs() const { return static_cast<u64>(value_ < 0 ? -value_ : value_); }
    bool is_real() const { return value_ > 0; }

    friend bool operator==(FundamentalDiscriminant, FundamentalDiscriminant) = default;

private:
    i64 value_;
};

/// Fundamental discriminants with |d| <= bound, ordered by |d| and then
/// positive before negative.
std::vector<FundamentalDiscriminant> fundamental_discriminants(u64 bound);

/// Squarefree/fundamental flags for all 0 < n <= bound: entry n is bit 0 set
/// when n is a fundamental discriminant, bit 1 when -n is.
std::vector<std::uint8_t> fundamental_flags(u64 bound);

/// The form a x^2 + b xy + c y^2.
struct QuadraticForm {
    i64 a = 0, b = 0, c = 0;

    i64 discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Reduced representative of a positive definite form: |b| <= a <= c with
/// b >= 0 when |b| = a or a = c.
QuadraticForm reduce(const QuadraticForm& f);
bool is_reduced(const QuadraticForm& f);

/// Indefinite forms (non-square positive discriminant D):
/// reduced means |sqrt(D) - 2|a|| < b < sqrt(D).
bool is_reduced_indefinite(const QuadraticForm& f);
/// One step (a,b,c) -> (c, r, (r^2 - D)/4c) of the reduction operator;
/// properly equivalent to f.
QuadraticForm rho(const QuadraticForm& f);
QuadraticForm reduce_indefinite(const QuadraticForm& f);

/// Gauss composition of two primitive forms of equal discriminant; the
/// result is not reduced.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);

/// The ideal class group Cl_F (wide sense for real F), with classes indexed
/// 0..h-1 and class 0 the principal class.
class ClassGroup {
public:
    explicit ClassGroup(FundamentalDiscriminant d);

    FundamentalDiscriminant discriminant() const { return disc_; }
    i64 order() const { return static_cast<i64>(reps_.size()); }
    int identity() const { return 0; }

    /// Class of any primitive form of discriminant d.
    int class_of(const QuadraticForm& f) const;
    int multiply(int x, int y) const;
    int inverse(int x) const;
    int power(int x, i64 n) const;
    const QuadraticForm& representative(int x) const { return reps_[x]; }

    /// Invariant factors n_1 | n_2 | ... (all > 1); empty for the trivial group.
    std::vector<i64> invariants() const;
    /// |Cl_F[3]|.
    i64 three_torsion() const;
    /// True iff the class lies in 3 Cl_F.
    bool is_cube(int x) const;

    /// Number of reduced forms in the principal rho-cycle and whether the
    /// fundamental unit has norm -1 (real fields only).
    const std::vector<QuadraticForm>& principal_cycle() const { return principal_cycle_; }
    bool norm_minus_one() const { return norm_minus_one_; }

private:
    FundamentalDiscriminant disc_;
    std::vector<QuadraticForm> reps_;
    // Reduced form -> class index.
    std::vector<std::pair<QuadraticForm, int>> index_;
    std::vector<QuadraticForm> principal_cycle_;
    bool norm_minus_one_ = false;
    mutable std::vector<char> cube_cache_;

    int lookup_reduced(const QuadraticForm& f) const;
};

/// Everything downstream modules need about a quadratic field.
struct QuadFieldData {
    FundamentalDiscriminant disc{-4};
    i64 h = 1;
    std::vector<i64> cl_invariants;
    i64 h3 = 1;
    int r1 = 0, r2 = 1;
    int w = 2;
    CertifiedReal regulator;
};

/// Regulator log(eps) of a real quadratic field from the principal cycle.
CertifiedReal regulator(FundamentalDiscriminant d);

/// Full class-group data. For d > 0, h is obtained by rounding
/// sqrt(d) L(1, chi_d) / (2 Reg) and cross-checked against the form cycles.
/// Throws ErrorCode::PrecisionFailure if the rounding cannot be certified.
QuadFieldData class_group(FundamentalDiscriminant d);

i64 three_torsion(FundamentalDiscriminant d);

/// Number of roots of unity in the field.
int roots_of_unity(FundamentalDiscriminant d);

/// Class number and 3-torsion of one imaginary quadratic field.
struct ImaginaryClassRecord {
    i64 d;
    i64 h;
    i64 h3;
};

/// h and h3 for every fundamental d with -bound <= d < 0, ordered by |d|.
/// Work is split across `jobs` threads; the result does not depend on jobs.
std::vector<ImaginaryClassRecord> imaginary_class_table(u64 bound, int jobs = 1);

}  // namespace cl3

#endif
