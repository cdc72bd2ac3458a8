#include "cl3/quadfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "cl3/error.hpp"
#include "cl3/lfunc.hpp"

namespace cl3 {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// u*a + v*b = g = gcd(a, b) >= 0.
i64 extended_gcd(i64 a, i64 b, i64& u, i64& v) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    u = old_s;
    v = old_t;
    return old_r;
}

std::vector<std::uint8_t> squarefree_sieve(u64 bound) {
    std::vector<std::uint8_t> sqf(bound + 1, 1);
    sqf[0] = 0;
    for (u64 p = 2; p * p <= bound; ++p)
        for (u64 j = p * p; j <= bound; j += p * p) sqf[j] = 0;
    return sqf;
}

// Invariant factors from the orders of all elements of a finite abelian group.
std::vector<i64> invariants_from_orders(const std::vector<i64>& orders) {
    i64 h = static_cast<i64>(orders.size());
    std::vector<std::vector<int>> columns;  // per prime: exponents of cyclic factors, descending
    std::vector<i64> primes;
    for (auto [p64, e] : factorize(static_cast<u64>(h))) {
        i64 p = static_cast<i64>(p64);
        // count[k] = #{x : v_p(ord x) <= k}
        std::vector<i64> count(e + 1, 0);
        for (i64 o : orders) {
            int v = 0;
            while (o % p == 0) {
                o /= p;
                ++v;
            }
            for (int k = v; k <= e; ++k) ++count[k];
        }
        std::vector<int> ge;  // ge[k-1] = number of cyclic factors of order >= p^k
        for (int k = 1; k <= e; ++k) {
            i64 ratio = count[k] / count[k - 1];
            int r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            ge.push_back(r);
        }
        std::vector<int> exps;  // exponents of the cyclic p-factors, descending
        for (int k = e; k >= 1; --k) {
            int here = ge[k - 1] - (k < e ? ge[k] : 0);
            for (int i = 0; i < here; ++i) exps.push_back(k);
        }
        primes.push_back(p);
        columns.push_back(exps);
    }
    std::size_t rank = 0;
    for (auto& c : columns) rank = std::max(rank, c.size());
    std::vector<i64> inv(rank, 1);  // inv[0] largest
    for (std::size_t j = 0; j < primes.size(); ++j)
        for (std::size_t i = 0; i < columns[j].size(); ++i)
            for (int k = 0; k < columns[j][i]; ++k) inv[i] *= primes[j];
    std::reverse(inv.begin(), inv.end());
    return inv;
}

}  // namespace

FundamentalDiscriminant::FundamentalDiscriminant(i64 value) : value_(value) {
    if (!is_fundamental_discriminant(value))
        fail(ErrorCode::InvalidDiscriminant, "not a fundamental discriminant: " + std::to_string(value));
}

std::vector<std::uint8_t> fundamental_flags(u64 bound) {
    auto sqf = squarefree_sieve(bound);
    std::vector<std::uint8_t> flags(bound + 1, 0);
    for (u64 n = 2; n <= bound; ++n) {
        u64 r = n % 4;
        if (r == 1 && sqf[n]) flags[n] |= 1;
        if (r == 3 && sqf[n]) flags[n] |= 2;
        if (r == 0) {
            u64 m = n / 4;
            if ((m % 4 == 2 || m % 4 == 3) && sqf[m]) flags[n] |= 1;
            // -n = 4(-m) with -m = 2 or 3 mod 4, i.e. m = 2 or 1 mod 4
            if ((m % 4 == 2 || m % 4 == 1) && sqf[m]) flags[n] |= 2;
        }
    }
    return flags;
}

std::vector<FundamentalDiscriminant> fundamental_discriminants(u64 bound) {
    if (bound < 3) fail(ErrorCode::InvalidArgument, "fundamental_discriminants: bound must be >= 3");
    auto flags = fundamental_flags(bound);
    std::vector<FundamentalDiscriminant> out;
    for (u64 n = 3; n <= bound; ++n) {
        if (flags[n] & 1) out.emplace_back(static_cast<i64>(n));
        if (flags[n] & 2) out.emplace_back(-static_cast<i64>(n));
    }
    return out;
}

QuadraticForm reduce(const QuadraticForm& f) {
    i64 D = f.discriminant();
    if (D >= 0) fail(ErrorCode::InvalidArgument, "reduce: discriminant must be negative");
    if (f.a <= 0) fail(ErrorCode::InvalidArgument, "reduce: form must be positive definite");
    i64 a = f.a, b = f.b, c = f.c;
    for (;;) {
        // x -> x + k y puts b into (-a, a].
        i64 k = floor_div(a - b, 2 * a);
        c = a * k * k + b * k + c;
        b = b + 2 * a * k;
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (a == c && b < 0) b = -b;
        break;
    }
    return {a, b, c};
}

bool is_reduced(const QuadraticForm& f) {
    if (f.a <= 0 || f.discriminant() >= 0) return false;
    if (!(-f.a < f.b && f.b <= f.a && f.a <= f.c)) return false;
    if (f.a == f.c && f.b < 0) return false;
    return true;
}

bool is_reduced_indefinite(const QuadraticForm& f) {
    i64 D = f.discriminant();
    if (D <= 0 || is_square(D)) return false;
    i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
    i64 a = f.a < 0 ? -f.a : f.a;
    return f.b > 0 && f.b <= s && 2 * a + f.b > s && 2 * a - f.b <= s;
}

QuadraticForm rho(const QuadraticForm& f) {
    i64 D = f.discriminant();
    if (D <= 0 || is_square(D)) fail(ErrorCode::InvalidArgument, "rho: needs a non-square positive discriminant");
    i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
    i64 c = f.c;
    i64 ac = c < 0 ? -c : c;
    i64 m = 2 * ac;
    i64 lo = ac > s ? -ac + 1 : s + 1 - 2 * ac;
    // unique r = -b (mod 2|c|) in [lo, lo + 2|c| - 1]
    i64 r = lo + mod(-f.b - lo, m);
    return {c, r, (r * r - D) / (4 * c)};
}

QuadraticForm reduce_indefinite(const QuadraticForm& f) {
    QuadraticForm g = f;
    for (int steps = 0; !is_reduced_indefinite(g); ++steps) {
        if (steps > 10000) fail(ErrorCode::DataIntegrity, "reduce_indefinite did not converge");
        g = rho(g);
    }
    return g;
}

QuadraticForm compose(const QuadraticForm& f1, const QuadraticForm& f2) {
    if (f1.discriminant() != f2.discriminant())
        fail(ErrorCode::InvalidArgument, "compose: discriminants differ");
    // The algorithm below assumes positive leading coefficients.
    auto positive = [](const QuadraticForm& f) {
        if (f.a > 0) return f;
        QuadraticForm g = reduce_indefinite(f);
        while (g.a < 0) g = rho(g);
        return g;
    };
    QuadraticForm x = positive(f1), y = positive(f2);
    auto absl = [](i64 v) { return v < 0 ? -v : v; };
    if (absl(x.a) > absl(y.a)) std::swap(x, y);
    i64 a1 = x.a, b1 = x.b;
    i64 a2 = y.a, b2 = y.b, c2 = y.c;
    i64 s = (b1 + b2) / 2;
    i64 n = b2 - s;
    i64 y1, d;
    if (a2 % a1 == 0) {
        y1 = 0;
        d = absl(a1);
    } else {
        i64 u, v;
        d = extended_gcd(a2, a1, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = extended_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i64 v1 = a1 / d1, v2 = a2 / d1;
    i64 m = absl(v1);
    i128 rr = (static_cast<i128>(y1) * y2 % m * (n % m) - static_cast<i128>(x2) * (c2 % m)) % m;
    if (rr < 0) rr += m;
    i64 r = static_cast<i64>(rr);
    i64 b3 = b2 + 2 * v2 * r;
    i64 a3 = v1 * v2;
    i64 D = f1.discriminant();
    i64 c3 = static_cast<i64>((static_cast<i128>(b3) * b3 - D) / (4 * static_cast<i128>(a3)));
    return {a3, b3, c3};
}

ClassGroup::ClassGroup(FundamentalDiscriminant d) : disc_(d) {
    i64 D = d.value();
    if (D < 0) {
        i64 N = -D;
        for (i64 a = 1; 3 * a * a <= N; ++a) {
            for (i64 b = -a + 1; b <= a; ++b) {
                i64 num = b * b + N;
                if (num % (4 * a) != 0) continue;
                i64 c = num / (4 * a);
                if (c < a || (c == a && b < 0)) continue;
                reps_.push_back({a, b, c});
            }
        }
        std::sort(reps_.begin(), reps_.end());
        for (std::size_t i = 0; i < reps_.size(); ++i) index_.emplace_back(reps_[i], static_cast<int>(i));
        return;
    }
    // Real field: all reduced forms, rho-cycles (narrow classes), then the
    // wide classes by identifying (a, b, c) with (-a, b, -c).
    i64 s = static_cast<i64>(isqrt(static_cast<u64>(D)));
    std::vector<QuadraticForm> forms;
    for (i64 b = (s % 2 == D % 2) ? s : s - 1; b > 0; b -= 2) {
        i64 m = (D - b * b) / 4;
        for (i64 A = 1; A * A <= m; ++A) {
            if (m % A != 0) continue;
            for (i64 a : {A, m / A}) {
                if (2 * a + b > s && 2 * a - b <= s) {
                    forms.push_back({a, b, -m / a});
                    forms.push_back({-a, b, m / a});
                }
                if (A * A == m) break;
            }
        }
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    auto pos = [&](const QuadraticForm& f) {
        auto it = std::lower_bound(forms.begin(), forms.end(), f);
        if (it == forms.end() || !(*it == f)) fail(ErrorCode::DataIntegrity, "reduced form missing from table");
        return static_cast<std::size_t>(it - forms.begin());
    };
    std::vector<int> parent(forms.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    for (std::size_t i = 0; i < forms.size(); ++i) {
        unite(static_cast<int>(i), static_cast<int>(pos(rho(forms[i]))));
        unite(static_cast<int>(i), static_cast<int>(pos({-forms[i].a, forms[i].b, -forms[i].c})));
    }
    i64 b0 = (s % 2 == D % 2) ? s : s - 1;
    QuadraticForm principal{1, b0, (b0 * b0 - D) / 4};
    int proot = find(static_cast<int>(pos(principal)));
    std::map<int, int> root_to_class;
    root_to_class[proot] = 0;
    reps_.push_back(principal);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (root_to_class.count(r)) continue;
        root_to_class[r] = static_cast<int>(reps_.size());
        // forms are sorted, so the first positive-a form of a class is its smallest
        std::size_t j = i;
        while (forms[j].a < 0 || find(static_cast<int>(j)) != r) ++j;
        reps_.push_back(forms[j]);
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
        index_.emplace_back(forms[i], root_to_class[find(static_cast<int>(i))]);
    QuadraticForm negp{-1, b0, -principal.c};
    QuadraticForm g = principal;
    for (;;) {
        principal_cycle_.push_back(g);
        g = rho(g);
        if (g == principal) break;
        if (g == negp) {
            norm_minus_one_ = true;
            break;
        }
    }
}

int ClassGroup::lookup_reduced(const QuadraticForm& f) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), f,
                               [](const auto& e, const QuadraticForm& g) { return e.first < g; });
    if (it == index_.end() || !(it->first == f))
        fail(ErrorCode::InvalidArgument, "form is not primitive of this discriminant");
    return it->second;
}

int ClassGroup::class_of(const QuadraticForm& f) const {
    if (f.discriminant() != disc_.value()) fail(ErrorCode::InvalidArgument, "class_of: wrong discriminant");
    if (disc_.value() < 0) {
        if (f.a <= 0) fail(ErrorCode::InvalidArgument, "class_of: form is not positive definite");
        return lookup_reduced(reduce(f));
    }
    return lookup_reduced(reduce_indefinite(f));
}

int ClassGroup::multiply(int x, int y) const { return class_of(compose(reps_[x], reps_[y])); }

int ClassGroup::inverse(int x) const {
    const QuadraticForm& f = reps_[x];
    return class_of({f.a, -f.b, f.c});
}

int ClassGroup::power(int x, i64 n) const {
    if (n < 0) return power(inverse(x), -n);
    int result = identity();
    int base = x;
    while (n > 0) {
        if (n & 1) result = multiply(result, base);
        n >>= 1;
        if (n) base = multiply(base, base);
    }
    return result;
}

std::vector<i64> ClassGroup::invariants() const {
    i64 h = order();
    auto fac = factorize(static_cast<u64>(h));
    std::vector<i64> orders(h);
    for (int x = 0; x < h; ++x) {
        i64 o = h;
        for (auto [p, e] : fac) {
            for (int k = 0; k < e && power(x, o / static_cast<i64>(p)) == identity(); ++k)
                o /= static_cast<i64>(p);
        }
        orders[x] = o;
    }
    return invariants_from_orders(orders);
}

i64 ClassGroup::three_torsion() const {
    if (order() % 3 != 0) return 1;
    i64 count = 0;
    for (int x = 0; x < order(); ++x)
        if (power(x, 3) == identity()) ++count;
    return count;
}

bool ClassGroup::is_cube(int x) const {
    if (cube_cache_.empty()) {
        cube_cache_.assign(order(), 0);
        for (int y = 0; y < order(); ++y) cube_cache_[power(y, 3)] = 1;
    }
    return cube_cache_[x] != 0;
}

int roots_of_unity(FundamentalDiscriminant d) {
    if (d.value() == -3) return 6;
    if (d.value() == -4) return 4;
    return 2;
}

CertifiedReal regulator(FundamentalDiscriminant d) {
    if (!d.is_real()) return CertifiedReal::exact(0.0);
    ClassGroup cg(d);
    CertifiedReal root = sqrt(CertifiedReal::from_int(d.value()));
    CertifiedReal reg = CertifiedReal::exact(0.0);
    // eps = prod (b_i + sqrt D) / (2 |a_i|) over the principal cycle
    for (const auto& f : cg.principal_cycle()) {
        i64 a = f.a < 0 ? -f.a : f.a;
        reg += log((CertifiedReal::from_int(f.b) + root) / CertifiedReal::from_int(2 * a));
    }
    return reg;
}

QuadFieldData class_group(FundamentalDiscriminant d) {
    ClassGroup cg(d);
    QuadFieldData out;
    out.disc = d;
    out.cl_invariants = cg.invariants();
    out.h3 = 1;
    for (i64 n : out.cl_invariants)
        if (n % 3 == 0) out.h3 *= 3;
    out.w = roots_of_unity(d);
    if (!d.is_real()) {
        out.h = cg.order();
        out.r1 = 0;
        out.r2 = 1;
        out.regulator = CertifiedReal::exact(0.0);
        return out;
    }
    out.r1 = 2;
    out.r2 = 0;
    out.regulator = regulator(d);
    CertifiedReal hb = sqrt(CertifiedReal::from_int(d.value())) * l_at_1(d) /
                       (CertifiedReal::exact(2.0) * out.regulator);
    double n = std::nearbyint(hb.mid());
    if (!(hb.lower() > n - 0.5 && hb.upper() < n + 0.5) || n < 1.0)
        fail(ErrorCode::PrecisionFailure, "class number of " + std::to_string(d.value()) +
                                              " not certified: " + hb.to_string());
    out.h = static_cast<i64>(n);
    if (out.h != cg.order())
        fail(ErrorCode::DataIntegrity, "class number from L(1) disagrees with the form cycles for d=" +
                                           std::to_string(d.value()));
    return out;
}

i64 three_torsion(FundamentalDiscriminant d) { return ClassGroup(d).three_torsion(); }

namespace {

// h3 from the sorted list of reduced forms of one negative discriminant.
i64 h3_from_forms(const std::vector<QuadraticForm>& forms) {
    if (forms.size() % 3 != 0) return 1;
    QuadraticForm id = forms.front();
    i64 count = 0;
    for (const auto& f : forms) {
        QuadraticForm f3 = reduce(compose(reduce(compose(f, f)), f));
        if (f3 == id) ++count;
    }
    return count;
}

}  // namespace

std::vector<ImaginaryClassRecord> imaginary_class_table(u64 bound, int jobs) {
    if (bound < 3) fail(ErrorCode::InvalidArgument, "imaginary_class_table: bound must be >= 3");
    if (jobs < 1) jobs = 1;
    auto flags = fundamental_flags(bound);
    const i64 block = 8192;
    i64 nblocks = (static_cast<i64>(bound) + block) / block;
    std::vector<std::vector<ImaginaryClassRecord>> results(nblocks);
    std::atomic<i64> next{0};
    auto worker = [&]() {
        std::vector<std::vector<QuadraticForm>> bucket(block);
        for (i64 blk = next++; blk < nblocks; blk = next++) {
            i64 lo = blk * block;                                       // |D| >= lo
            i64 hi = std::min<i64>(lo + block, static_cast<i64>(bound) + 1);  // |D| < hi
            for (auto& v : bucket) v.clear();
            for (i64 a = 1; 3 * a * a < hi; ++a) {
                for (i64 b = -a + 1; b <= a; ++b) {
                    i64 cmin = std::max<i64>(a, (lo + b * b + 4 * a - 1) / (4 * a));
                    i64 cmax = (hi - 1 + b * b) / (4 * a);
                    for (i64 c = cmin; c <= cmax; ++c) {
                        if (c == a && b < 0) continue;
                        i64 D = 4 * a * c - b * b;
                        if (D < lo || D >= hi || !(flags[D] & 2)) continue;
                        bucket[D - lo].push_back({a, b, c});
                    }
                }
            }
            auto& out = results[blk];
            for (i64 D = lo; D < hi; ++D) {
                auto& forms = bucket[D - lo];
                if (forms.empty()) continue;
                std::sort(forms.begin(), forms.end());
                out.push_back({-D, static_cast<i64>(forms.size()), h3_from_forms(forms)});
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<ImaginaryClassRecord> all;
    for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
    return all;
}

}  // namespace cl3
