#ifndef CL3_LFUNC_HPP
#define CL3_LFUNC_HPP

// Certified values of L(s, chi_d) at s = 1, 2, Dedekind zeta residues of
// quadratic fields and ideal counts.

#include <cstdint>
#include <vector>

#include "cl3/arith.hpp"
#include "cl3/certified.hpp"
#include "cl3/quadfield.hpp"

namespace cl3 {

CertifiedReal zeta2();
CertifiedReal zeta4();
/// zeta(1/3) = -0.97336024835078...; the unit tests recompute it with an
/// accelerated alternating series.
CertifiedReal zeta_one_third();
/// Gamma(1/3) = 2.67893853470774763...
CertifiedReal gamma_one_third();

/// Upper bound for |sum_{a < n <= b} chi_d(n)| over all intervals, from
/// the Gauss-sum expansion of the primitive character.
double character_sum_bound(u64 q);

/// L(1, chi_d) from the finite closed forms (cost O(|d|)).
CertifiedReal l_at_1(FundamentalDiscriminant d);

/// L(2, chi_d) with radius <= tol.
CertifiedReal l_at_2(FundamentalDiscriminant d, double tol = 1e-10);

/// zeta_F(2) = zeta(2) L(2, chi_d).
CertifiedReal dedekind_zeta_at_2(FundamentalDiscriminant d, double tol = 1e-10);

/// Res_{s=1} zeta_F(s) = 2^{r1} (2 pi)^{r2} h Reg / (w sqrt|d|).
CertifiedReal residue(const QuadFieldData& F);

/// Number of integral ideals of norm <= X.
u64 ideal_count(FundamentalDiscriminant d, u64 X);

/// Truncated Dirichlet series for many discriminants: chi_d(n) for n <= N is
/// built from per-prime Legendre tables, so a call costs O(N).
class BatchLEvaluator {
public:
    explicit BatchLEvaluator(u64 max_terms);

    u64 max_terms() const { return max_terms_; }
    /// L(1, chi_d) from n <= n1 terms and L(2, chi_d) from n <= n2 terms,
    /// each with the Abel-summation tail in the radius.
    /// Pass 0 to skip a value.
    void evaluate(FundamentalDiscriminant d, u64 n1, u64 n2, CertifiedReal* l1,
                  CertifiedReal* l2) const;

private:
    u64 max_terms_;
    std::vector<u64> primes_;
    std::vector<std::uint32_t> spf_;
    // legendre_[offset_[i] + r] = (r / p_i) for odd primes.
    std::vector<std::int8_t> legendre_;
    std::vector<u64> offset_;
    mutable std::vector<std::int8_t> chi_;
};

}  // namespace cl3

#endif
