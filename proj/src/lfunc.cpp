#include "cl3/lfunc.hpp"

#include <cfloat>
#include <cmath>

#include "cl3/error.hpp"

namespace cl3 {

namespace {

constexpr long double kEpsLd = LDBL_EPSILON;

// Converts a long double accumulator with known absolute error to a ball.
CertifiedReal ball_from_ld(long double value, long double err) {
    double mid = static_cast<double>(value);
    long double conv = std::fabs(value - static_cast<long double>(mid));
    double rad = static_cast<double>(err + conv);
    return {mid, rad * (1.0 + 4.0 * DBL_EPSILON) + rounding_slack(mid)};
}

// chi_d(n) over one period, used when a sum runs past |d| terms.
std::vector<std::int8_t> character_table(i64 d) {
    u64 q = static_cast<u64>(d < 0 ? -d : d);
    std::vector<std::int8_t> chi(q);
    for (u64 n = 0; n < q; ++n) chi[n] = static_cast<std::int8_t>(kronecker(d, static_cast<i64>(n)));
    return chi;
}

}  // namespace

CertifiedReal zeta2() {
    CertifiedReal pi = CertifiedReal::pi();
    return pi * pi / CertifiedReal::exact(6.0);
}

CertifiedReal zeta4() {
    CertifiedReal p2 = CertifiedReal::pi() * CertifiedReal::pi();
    return p2 * p2 / CertifiedReal::exact(90.0);
}

CertifiedReal zeta_one_third() { return {-0.97336024835078271, 4e-16}; }

CertifiedReal gamma_one_third() { return {2.6789385347077476337, 4e-16}; }

double character_sum_bound(u64 q) {
    if (q < 3) fail(ErrorCode::InvalidArgument, "character_sum_bound: modulus below 3");
    double qd = static_cast<double>(q);
    // |S| <= q^{-1/2} sum_{k=1}^{q-1} 1/sin(pi k/q), with 1/sin x <= 1/x + 0.37 on (0, pi/2].
    double pv = std::sqrt(qd) * ((2.0 / M_PI) * (1.0 + std::log(qd / 2.0)) + 0.37);
    return std::fmin(qd / 2.0, pv) * (1.0 + 1e-12);
}

CertifiedReal l_at_1(FundamentalDiscriminant d) {
    i64 q = static_cast<i64>(d.abs());
    if (!d.is_real()) {
        // L(1) = -pi / |d|^{3/2} * sum chi(r) r, an exact integer sum.
        i64 s = 0;
        for (i64 r = 1; r < q; ++r) s += kronecker(d.value(), r) * r;
        CertifiedReal qd = CertifiedReal::from_int(q);
        return CertifiedReal::pi() * CertifiedReal::from_int(-s) / (qd * sqrt(qd));
    }
    // Even character: L(1) = -(2/sqrt d) sum_{r < d/2} chi(r) log sin(pi r / d).
    long double sum = 0.0L;
    long double err = 0.0L;
    const long double pi_l = 3.141592653589793238462643383279502884L;
    for (i64 r = 1; 2 * r < q; ++r) {
        int chi = kronecker(d.value(), r);
        if (chi == 0) continue;
        long double x = pi_l * static_cast<long double>(r) / static_cast<long double>(q);
        long double t = std::log(std::sin(x));
        sum += chi * t;
        err += 8.0L * kEpsLd * (1.0L + std::fabs(t)) + kEpsLd * std::fabs(sum);
    }
    CertifiedReal s = ball_from_ld(sum, err);
    return CertifiedReal::exact(-2.0) * s / sqrt(CertifiedReal::from_int(q));
}

CertifiedReal l_at_2(FundamentalDiscriminant d, double tol) {
    if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "l_at_2: tol must be positive");
    u64 q = d.abs();
    double m = character_sum_bound(q);
    // Abel summation: |sum_{n > N} chi(n)/n^2| <= M/(N+1)^2.
    double n_real = std::ceil(std::sqrt(2.0 * m / tol));
    u64 n = static_cast<u64>(std::fmax(n_real, 16.0));
    std::vector<std::int8_t> table;
    if (n > q) table = character_table(d.value());
    long double sum = 0.0L;
    for (u64 k = 1; k <= n; ++k) {
        int chi = table.empty() ? kronecker(d.value(), static_cast<i64>(k)) : table[k % q];
        if (chi == 0) continue;
        long double kk = static_cast<long double>(k);
        sum += chi / (kk * kk);
    }
    long double err = 3.0L * kEpsLd * static_cast<long double>(n) * 2.0L;
    double np1 = static_cast<double>(n + 1);
    double tail = m / (np1 * np1);
    return ball_from_ld(sum, err).widened(tail);
}

CertifiedReal dedekind_zeta_at_2(FundamentalDiscriminant d, double tol) {
    return zeta2() * l_at_2(d, tol / 2.0);
}

CertifiedReal residue(const QuadFieldData& F) {
    CertifiedReal root = sqrt(CertifiedReal::from_int(static_cast<long long>(F.disc.abs())));
    CertifiedReal h = CertifiedReal::from_int(F.h);
    if (F.disc.is_real()) return CertifiedReal::exact(2.0) * h * F.regulator / root;
    CertifiedReal two_pi = CertifiedReal::exact(2.0) * CertifiedReal::pi();
    return two_pi * h / (CertifiedReal::from_int(F.w) * root);
}

u64 ideal_count(FundamentalDiscriminant d, u64 X) {
    if (X == 0) fail(ErrorCode::InvalidArgument, "ideal_count: X must be positive");
    u64 q = d.abs();
    std::vector<std::int8_t> table;
    if (X > q) table = character_table(d.value());
    // sum_{n <= X} sum_{e | n} chi(e) = sum_{e <= X} chi(e) floor(X/e)
    i64 total = 0;
    for (u64 e = 1; e <= X; ++e) {
        int chi = table.empty() ? kronecker(d.value(), static_cast<i64>(e)) : table[e % q];
        total += chi * static_cast<i64>(X / e);
    }
    return static_cast<u64>(total);
}

BatchLEvaluator::BatchLEvaluator(u64 max_terms)
    : max_terms_(max_terms), spf_(max_terms + 1, 0), chi_(max_terms + 1, 0) {
    if (max_terms < 2) fail(ErrorCode::InvalidArgument, "BatchLEvaluator: need at least 2 terms");
    for (u64 i = 2; i <= max_terms; ++i) {
        if (spf_[i] != 0) continue;
        primes_.push_back(i);
        for (u64 j = i; j <= max_terms; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
    offset_.assign(primes_.size(), 0);
    u64 total = 0;
    for (std::size_t i = 1; i < primes_.size(); ++i) {
        offset_[i] = total;
        total += primes_[i];
    }
    legendre_.assign(total, -1);
    for (std::size_t i = 1; i < primes_.size(); ++i) {
        u64 p = primes_[i];
        std::int8_t* row = legendre_.data() + offset_[i];
        row[0] = 0;
        for (u64 x = 1; x <= p / 2; ++x) row[(x * x) % p] = 1;
    }
}

void BatchLEvaluator::evaluate(FundamentalDiscriminant d, u64 n1, u64 n2, CertifiedReal* l1,
                               CertifiedReal* l2) const {
    u64 n = n1 > n2 ? n1 : n2;
    if (n > max_terms_) fail(ErrorCode::InvalidArgument, "BatchLEvaluator: too many terms requested");
    i64 dv = d.value();
    chi_[1] = 1;
    for (std::size_t i = 0; i < primes_.size() && primes_[i] <= n; ++i) {
        u64 p = primes_[i];
        std::int8_t v;
        if (p == 2) {
            i64 r = mod(dv, 8);
            v = (r % 2 == 0) ? 0 : ((r == 1 || r == 7) ? 1 : -1);
        } else {
            v = legendre_[offset_[i] + static_cast<u64>(mod(dv, static_cast<i64>(p)))];
        }
        chi_[p] = v;
    }
    for (u64 k = 4; k <= n; ++k) {
        u64 p = spf_[k];
        if (p != k) chi_[k] = static_cast<std::int8_t>(chi_[p] * chi_[k / p]);
    }
    double m = character_sum_bound(d.abs());
    if (l1 && n1 > 0) {
        long double s = 0.0L, peak = 0.0L;
        for (u64 k = 1; k <= n1; ++k) {
            if (chi_[k] == 0) continue;
            s += chi_[k] / static_cast<long double>(k);
            peak = std::fmax(peak, std::fabs(s));
        }
        long double err = 2.0L * kEpsLd * static_cast<long double>(n1) * (peak + 1.0L);
        *l1 = ball_from_ld(s, err).widened(m / static_cast<double>(n1 + 1));
    }
    if (l2 && n2 > 0) {
        long double s = 0.0L;
        for (u64 k = 1; k <= n2; ++k) {
            if (chi_[k] == 0) continue;
            long double kk = static_cast<long double>(k);
            s += chi_[k] / (kk * kk);
        }
        long double err = 6.0L * kEpsLd * static_cast<long double>(n2);
        double np1 = static_cast<double>(n2 + 1);
        *l2 = ball_from_ld(s, err).widened(m / (np1 * np1));
    }
}

}  // namespace cl3
