#ifndef CL3_ARITH_HPP
#define CL3_ARITH_HPP

// Elementary integer arithmetic shared by every module: factorization,
// squarefreeness, fundamental discriminants and the Kronecker symbol.

#include <cstdint>
#include <utility>
#include <vector>

namespace cl3 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Floor of the square root of n.
u64 isqrt(u64 n);

/// True if n is a perfect square (n >= 0).
bool is_square(i64 n);

/// Prime factorization of n > 0 by trial division, ascending primes.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_squarefree(u64 n);

/// True iff d is the discriminant of a quadratic field.
bool is_fundamental_discriminant(i64 d);

/// The fundamental discriminant d0 with d = d0 * f^2, for d a non-square
/// discriminant (d = 0 or 1 mod 4). Returns 1 for perfect squares.
i64 fundamental_part(i64 d);

/// The Kronecker symbol (a/n), extended to all integers n.
int kronecker(i64 a, i64 n);

/// Primes p <= n in ascending order.
std::vector<u64> primes_up_to(u64 n);

/// Smallest-prime-factor table for bulk factorization of n <= limit.
class FactorSieve {
public:
    explicit FactorSieve(u64 limit);

    u64 limit() const { return limit_; }
    /// Factorization of 1 <= n <= limit.
    std::vector<std::pair<u64, int>> factorize(u64 n) const;
    u64 smallest_factor(u64 n) const { return spf_[n]; }

private:
    u64 limit_;
    std::vector<std::uint32_t> spf_;
};

/// Nonnegative residue of a modulo m > 0.
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// p-adic valuation of n != 0.
int valuation(i64 n, i64 p);

}  // namespace cl3

#endif
