#include "cl3/arith.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "cl3/error.hpp"

namespace cl3 {

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n) {
    if (n < 0) return false;
    u64 r = isqrt(static_cast<u64>(n));
    return r * r == static_cast<u64>(n);
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    if (n == 0) fail(ErrorCode::InvalidArgument, "factorize: zero");
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(u64 n) {
    if (n == 0) return false;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    i64 r = mod(d, 4);
    if (r == 1) return is_squarefree(static_cast<u64>(std::llabs(d)));
    if (r != 0) return false;
    i64 m = d / 4;
    i64 rm = mod(m, 4);
    if (rm != 2 && rm != 3) return false;
    return is_squarefree(static_cast<u64>(std::llabs(m)));
}

i64 fundamental_part(i64 d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "fundamental_part: zero");
    if (is_square(d)) return 1;
    i64 sign = d < 0 ? -1 : 1;
    u64 core = 1;
    for (auto [p, e] : factorize(static_cast<u64>(std::llabs(d))))
        if (e % 2 == 1) core *= p;
    i64 m = sign * static_cast<i64>(core);
    return mod(m, 4) == 1 ? m : 4 * m;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        i64 r8 = mod(a, 8);
        if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // Jacobi symbol (a/n) for odd n > 0.
    i64 x = mod(a, n);
    i64 m = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            i64 r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

FactorSieve::FactorSieve(u64 limit) : limit_(limit), spf_(limit + 1, 0) {
    for (u64 i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        for (u64 j = i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
}

std::vector<std::pair<u64, int>> FactorSieve::factorize(u64 n) const {
    if (n == 0 || n > limit_) fail(ErrorCode::InvalidArgument, "FactorSieve: out of range");
    std::vector<std::pair<u64, int>> out;
    while (n > 1) {
        u64 p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

int valuation(i64 n, i64 p) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace cl3
