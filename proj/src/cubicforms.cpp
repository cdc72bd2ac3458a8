#include "cl3/cubicforms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cl3/error.hpp"
#include "cl3/lfunc.hpp"

namespace cl3 {

namespace {

// Unimodular matrices with entries in {-1, 0, 1}. Two reduced forms of the
// same class differ by one of these, since their covariant quadratic forms
// are both reduced; the property tests check this against random translates.
const std::vector<Mat2>& small_matrices() {
    static const std::vector<Mat2> mats = [] {
        std::vector<Mat2> out;
        for (i64 p = -1; p <= 1; ++p)
            for (i64 q = -1; q <= 1; ++q)
                for (i64 r = -1; r <= 1; ++r)
                    for (i64 s = -1; s <= 1; ++s) {
                        Mat2 m{p, q, r, s};
                        if (m.det() == 1 || m.det() == -1) out.push_back(m);
                    }
        return out;
    }();
    return mats;
}

BinaryCubicForm negate(const BinaryCubicForm& f) { return {-f.a, -f.b, -f.c, -f.d}; }

// f(x + k y, y)
BinaryCubicForm translate(const BinaryCubicForm& f, i64 k) {
    return {f.a, 3 * f.a * k + f.b, 3 * f.a * k * k + 2 * f.b * k + f.c,
            f.a * k * k * k + f.b * k * k + f.c * k + f.d};
}

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

bool signs_normalized(const BinaryCubicForm& f) {
    if (f.a < 0 || f.b < 0) return false;
    return f.a > 0 || f.b > 0;
}

BinaryCubicForm normalize_signs(BinaryCubicForm f) {
    if (f.a < 0 || (f.a == 0 && f.b < 0)) f = negate(f);
    if (f.b < 0) f = {f.a, -f.b, f.c, -f.d};  // diag(-1, 1)
    return f;
}

bool reduced_positive(const BinaryCubicForm& f) {
    i64 P = f.b * f.b - 3 * f.a * f.c;
    i64 Q = f.b * f.c - 9 * f.a * f.d;
    i64 R = f.c * f.c - 3 * f.b * f.d;
    return (Q < 0 ? -Q : Q) <= P && P <= R;
}

bool reduced_negative(const BinaryCubicForm& f) {
    i64 a = f.a, b = f.b, c = f.c, d = f.d;
    // Non-strict so that boundary classes (e.g. reducible forms over Q(i))
    // keep a representative; ties are broken by the canonical minimum.
    if (d * d - a * a + a * c - b * d < 0) return false;
    i64 t = a * d - b * c;
    return -(a - b) * (a - b) - a * c <= t && t <= (a + b) * (a + b) + a * c;
}

// Moves f to a reduced form of its class.
BinaryCubicForm reduce_to_reduced(BinaryCubicForm f, i64 D) {
    for (int steps = 0;; ++steps) {
        if (steps > 100000) fail(ErrorCode::DataIntegrity, "cubic form reduction did not terminate");
        if (D > 0) {
            f = normalize_signs(f);
            i64 P = f.b * f.b - 3 * f.a * f.c;
            i64 Q = f.b * f.c - 9 * f.a * f.d;
            i64 R = f.c * f.c - 3 * f.b * f.d;
            if (P > R) {
                f = {f.d, f.c, f.b, f.a};  // f(y, x), up to the sign absorbed above
                continue;
            }
            if ((Q < 0 ? -Q : Q) > P) {
                // Hessian goes to (P, Q + 2Pk, ...)
                f = translate(f, floor_div(P - Q, 2 * P));
                continue;
            }
            return f;
        }
        // Belabas's loop for negative discriminant.
        i64 a = f.a, b = f.b, c = f.c, d = f.d;
        if (d * d - a * a + a * c - b * d < 0) {
            f = {d, c, b, a};
        } else if (a < 0) {
            f = {-a, b, -c, d};
        } else if (b < 0 || (b == 0 && d < 0)) {
            f = {a, -b, c, -d};
        } else if (a * d - b * c > (a + b) * (a + b) + a * c) {
            f = translate(f, 1);
        } else if (a * d - b * c < -(a - b) * (a - b) - a * c) {
            f = translate(f, -1);
        } else {
            return f;
        }
    }
}

i128 eval128(const BinaryCubicForm& f, i128 x, i128 y) {
    return ((f.a * x + f.b * y) * x + f.c * y * y) * x + f.d * y * y * y;
}

// Real roots of a t^3 + b t^2 + c t + d (a != 0) by bisection on monotone pieces.
std::vector<long double> real_roots(const BinaryCubicForm& f) {
    long double a = static_cast<long double>(f.a), b = static_cast<long double>(f.b),
                c = static_cast<long double>(f.c), d = static_cast<long double>(f.d);
    auto p = [&](long double t) { return ((a * t + b) * t + c) * t + d; };
    long double bound = 1.0L + std::max({std::fabs(b), std::fabs(c), std::fabs(d)}) / std::fabs(a);
    std::vector<long double> cuts{-bound};
    long double dc = 4.0L * b * b - 12.0L * a * c;
    if (dc > 0) {
        long double s = std::sqrt(dc);
        long double t1 = (-2.0L * b - s) / (6.0L * a), t2 = (-2.0L * b + s) / (6.0L * a);
        if (t1 > t2) std::swap(t1, t2);
        cuts.push_back(std::clamp(t1, -bound, bound));
        cuts.push_back(std::clamp(t2, -bound, bound));
    }
    cuts.push_back(bound);
    std::vector<long double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        long double lo = cuts[i], hi = cuts[i + 1];
        long double plo = p(lo), phi = p(hi);
        if (plo == 0) {
            roots.push_back(lo);
            continue;
        }
        if ((plo < 0) == (phi < 0)) continue;
        for (int it = 0; it < 200 && hi - lo > 0; ++it) {
            long double mid = 0.5L * (lo + hi);
            if (mid == lo || mid == hi) break;
            long double pm = p(mid);
            if ((pm < 0) == (plo < 0)) {
                lo = mid;
                plo = pm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5L * (lo + hi));
    }
    return roots;
}

std::vector<i64> prime_square_divisors(i64 D) {
    std::vector<i64> out;
    for (auto [p, e] : factorize(static_cast<u64>(D < 0 ? -D : D)))
        if (e >= 2) out.push_back(static_cast<i64>(p));
    return out;
}

}  // namespace

i64 disc(const BinaryCubicForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 v = 18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d;
    return static_cast<i64>(v);
}

BinaryCubicForm act(const Mat2& g, const BinaryCubicForm& f) {
    i64 det = g.det();
    if (det != 1 && det != -1) fail(ErrorCode::InvalidArgument, "act: matrix is not unimodular");
    i64 p = g.p, q = g.q, r = g.r, s = g.s;
    // X = p x + r y, Y = q x + s y
    i64 A = f.a * p * p * p + f.b * p * p * q + f.c * p * q * q + f.d * q * q * q;
    i64 B = f.a * 3 * p * p * r + f.b * (p * p * s + 2 * p * q * r) + f.c * (2 * p * q * s + q * q * r) +
            f.d * 3 * q * q * s;
    i64 C = f.a * 3 * p * r * r + f.b * (2 * p * r * s + q * r * r) + f.c * (p * s * s + 2 * q * r * s) +
            f.d * 3 * q * s * s;
    i64 Dd = f.a * r * r * r + f.b * r * r * s + f.c * r * s * s + f.d * s * s * s;
    return {det * A, det * B, det * C, det * Dd};
}

i128 evaluate(const BinaryCubicForm& f, i64 x, i64 y) { return eval128(f, x, y); }

bool is_reduced(const BinaryCubicForm& f) {
    i64 D = disc(f);
    if (D == 0 || !signs_normalized(f)) return false;
    return D > 0 ? reduced_positive(f) : reduced_negative(f);
}

BinaryCubicForm reduce(const BinaryCubicForm& f) {
    i64 D = disc(f);
    if (D == 0) fail(ErrorCode::InvalidArgument, "reduce: zero discriminant");
    BinaryCubicForm g = reduce_to_reduced(f, D);
    if (!is_reduced(g)) g = normalize_signs(g);
    if (!is_reduced(g)) fail(ErrorCode::DataIntegrity, "reduction ended outside the reduced domain");
    BinaryCubicForm best = g;
    for (const Mat2& m : small_matrices()) {
        BinaryCubicForm h = act(m, g);
        if (h < best && is_reduced(h)) best = h;
    }
    return best;
}

bool is_canonical(const BinaryCubicForm& f) {
    if (!is_reduced(f)) return false;
    for (const Mat2& m : small_matrices()) {
        BinaryCubicForm h = act(m, f);
        if (h < f && is_reduced(h)) return false;
    }
    return true;
}

int stabilizer_order(const BinaryCubicForm& f) {
    BinaryCubicForm g = reduce(f);
    int n = 0;
    for (const Mat2& m : small_matrices())
        if (act(m, g) == g) ++n;
    return n;
}

bool is_irreducible(const BinaryCubicForm& f) {
    if (f.a == 0 || f.d == 0) return false;
    i64 absa = f.a < 0 ? -f.a : f.a;
    for (long double t : real_roots(f)) {
        for (i64 q = 1; q <= absa; ++q) {
            if (absa % q != 0) continue;
            long double pq = std::nearbyint(static_cast<long double>(q) * t);
            if (std::fabs(pq) > 9.0e18L) continue;
            i64 p0 = static_cast<i64>(pq);
            for (i64 p = p0 - 1; p <= p0 + 1; ++p)
                if (eval128(f, p, q) == 0) return false;
        }
    }
    return true;
}

bool is_maximal_at(const BinaryCubicForm& f, i64 p) {
    i64 D = disc(f);
    if (D == 0) fail(ErrorCode::InvalidArgument, "is_maximal_at: zero discriminant");
    if (D % (p * p) != 0) return true;
    if (f.a % p == 0 && f.b % p == 0 && f.c % p == 0 && f.d % p == 0) return false;
    // root at infinity
    if (f.a % (p * p) == 0 && f.b % p == 0) return false;
    i128 p2 = static_cast<i128>(p) * p;
    for (i64 r = 0; r < p; ++r) {
        i128 v = eval128(f, r, 1);
        if (v % p != 0) continue;
        if (v % p2 == 0 && eval128(f, r + p, 1) % p2 == 0) return false;
    }
    return true;
}

bool is_maximal(const BinaryCubicForm& f) {
    i64 D = disc(f);
    if (D == 0) fail(ErrorCode::InvalidArgument, "is_maximal: zero discriminant");
    for (i64 p : prime_square_divisors(D))
        if (!is_maximal_at(f, p)) return false;
    return true;
}

namespace {

struct Box {
    u64 X;
    int sign;
    double scale;
};

// Candidate d range for fixed (a, b, c): all d with 0 < sign*disc <= X lie in
// the returned interval (padded by one on each side).
bool d_interval(i64 a, i64 b, i64 c, const Box& box, i64& lo, i64& hi) {
    long double X = static_cast<long double>(box.X);
    if (a == 0) {
        // disc = b^2 c^2 - 4 b^3 d
        long double b3 = 4.0L * b * b * b;
        long double base = static_cast<long double>(b) * b * c * c;
        long double t1, t2;
        if (box.sign > 0) {
            t1 = (base - X) / b3;
            t2 = base / b3;
        } else {
            t1 = base / b3;
            t2 = (base + X) / b3;
        }
        lo = static_cast<i64>(std::floor(std::min(t1, t2))) - 1;
        hi = static_cast<i64>(std::ceil(std::max(t1, t2))) + 1;
        return true;
    }
    // disc(d) = -27 a^2 d^2 + B1 d + C0, concave in d
    long double A2 = 27.0L * a * a;
    long double B1 = 18.0L * a * b * c - 4.0L * b * b * b;
    long double C0 = static_cast<long double>(b) * b * c * c - 4.0L * a * c * c * c;
    long double shift = box.sign > 0 ? 0.0L : X;  // region where disc + shift >= 0
    long double dd = B1 * B1 + 4.0L * A2 * (C0 + shift);
    if (dd < 0) return false;
    long double s = std::sqrt(dd);
    long double r1 = (B1 - s) / (2.0L * A2), r2 = (B1 + s) / (2.0L * A2);
    lo = static_cast<i64>(std::floor(r1)) - 1;
    hi = static_cast<i64>(std::ceil(r2)) + 1;
    return true;
}

// Enumerates every reduced form in the box with leading coefficient a and
// reports the canonical ones.
void scan_leading(i64 a, const Box& box, std::vector<CubicRingClass>& out) {
    double X = static_cast<double>(box.X);
    double q = std::pow(X, 0.25);
    double rx = std::sqrt(X);
    double s = box.scale;
    auto consider = [&](i64 b, i64 c, i64 d) {
        BinaryCubicForm f{a, b, c, d};
        i64 D = disc(f);
        if (D == 0 || (D > 0) != (box.sign > 0)) return;
        if (static_cast<u64>(D < 0 ? -D : D) > box.X) return;
        if (!is_reduced(f) || !is_canonical(f)) return;
        CubicRingClass cls;
        cls.form = f;
        cls.disc = D;
        int n = 0;
        for (const Mat2& m : small_matrices())
            if (act(m, f) == f) ++n;
        cls.aut_order = n;
        cls.irreducible = is_irreducible(f);
        cls.maximal = is_maximal(f);
        out.push_back(cls);
    };
    if (a == 0) {
        // a = 0: P = b^2 <= sqrt(X) (positive) and |c| <= b in both cases.
        i64 bmax = static_cast<i64>(s * q) + 1;
        for (i64 b = 1; b <= bmax; ++b)
            for (i64 c = -b; c <= b; ++c) {
                i64 lo, hi;
                if (!d_interval(0, b, c, box, lo, hi)) continue;
                for (i64 d = lo; d <= hi; ++d) consider(b, c, d);
            }
        return;
    }
    if (box.sign > 0) {
        // P = b^2 - 3ac in [1, sqrt(X)] and |Q| = |bc - 9ad| <= P.
        i64 bmax = static_cast<i64>(1.5 * a + 1.2 * s * q) + 2;
        for (i64 b = 0; b <= bmax; ++b) {
            i64 cmin = ceil_div(b * b - static_cast<i64>(std::ceil(s * rx)), 3 * a) - 1;
            i64 cmax = floor_div(b * b - 1, 3 * a);
            for (i64 c = cmin; c <= cmax; ++c) {
                i64 P = b * b - 3 * a * c;
                if (P <= 0) continue;
                i64 lo, hi;
                if (!d_interval(a, b, c, box, lo, hi)) continue;
                lo = std::max(lo, ceil_div(b * c - P, 9 * a));
                hi = std::min(hi, floor_div(b * c + P, 9 * a));
                for (i64 d = lo; d <= hi; ++d) consider(b, c, d);
            }
        }
        return;
    }
    // Negative discriminant: b and c windows measured empirically (see the
    // doubling test); d from -(a-b)^2 - ac < ad - bc < (a+b)^2 + ac.
    i64 bmax = static_cast<i64>(std::sqrt(1.2 * s * a * rx)) + 2;
    for (i64 b = 0; b <= bmax; ++b) {
        i64 cmin = floor_div(b * b - static_cast<i64>(std::ceil(s * rx)), 3 * a) - 1;
        i64 cmax = ceil_div(b * b + static_cast<i64>(std::ceil(2.0 * s * rx)), 3 * a) + 1;
        for (i64 c = cmin; c <= cmax; ++c) {
            i64 lo, hi;
            if (!d_interval(a, b, c, box, lo, hi)) continue;
            lo = std::max(lo, floor_div(b * c - (a - b) * (a - b) - a * c, a));
            hi = std::min(hi, ceil_div(b * c + (a + b) * (a + b) + a * c, a));
            for (i64 d = lo; d <= hi; ++d) consider(b, c, d);
        }
    }
}

bool class_less(const CubicRingClass& x, const CubicRingClass& y) {
    i64 ax = x.disc < 0 ? -x.disc : x.disc, ay = y.disc < 0 ? -y.disc : y.disc;
    if (ax != ay) return ax < ay;
    return x.form < y.form;
}

}  // namespace

std::vector<CubicRingClass> enumerate(u64 bound, int sign, const EnumerateOptions& opts) {
    if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "enumerate: sign must be +1 or -1");
    if (!(opts.box_scale >= 1.0)) fail(ErrorCode::InvalidArgument, "enumerate: box_scale must be >= 1");
    if (bound > 4000000000ULL) fail(ErrorCode::Unsupported, "enumerate: bound too large for 64-bit arithmetic");
    std::vector<CubicRingClass> all;
    if (bound == 0) return all;
    Box box{bound, sign, opts.box_scale};
    double q = std::pow(static_cast<double>(bound), 0.25);
    // a <= (4/27)^{1/2} X^{1/4} for positive discriminant (from 4P^3 >= 27 D a^2);
    // a <= (16/27)^{1/4} X^{1/4} for negative discriminant.
    double amax_real = sign > 0 ? std::sqrt(4.0 / 27.0) * q : std::pow(16.0 / 27.0, 0.25) * q;
    i64 amax = static_cast<i64>(opts.box_scale * amax_real) + 1;
    int jobs = std::max(1, opts.jobs);
    std::vector<std::vector<CubicRingClass>> parts(amax + 1);
    std::atomic<i64> next{0};
    auto worker = [&]() {
        for (i64 a = next++; a <= amax; a = next++) scan_leading(a, box, parts[a]);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end(), class_less);
    return all;
}

CertifiedReal CubicCensus::weighted_count() const {
    // Exact rational sum n1 + n2/2 + n3/3 + n6/6, formed over the denominator 6.
    u64 num = 6 * by_aut[0] + 3 * by_aut[1] + 2 * by_aut[2] + by_aut[3];
    return CertifiedReal::from_int(static_cast<long long>(num)) / CertifiedReal::exact(6.0);
}

CubicCensus census_of(const std::vector<CubicRingClass>& classes, u64 bound, int sign) {
    CubicCensus out;
    out.bound = bound;
    out.sign = sign;
    for (const auto& c : classes) {
        ++out.classes;
        switch (c.aut_order) {
            case 1: ++out.by_aut[0]; break;
            case 2: ++out.by_aut[1]; break;
            case 3: ++out.by_aut[2]; break;
            case 6: ++out.by_aut[3]; break;
            default: fail(ErrorCode::DataIntegrity, "unexpected stabilizer order " + std::to_string(c.aut_order));
        }
        if (c.maximal && c.irreducible) {
            if (c.aut_order == 3)
                ++out.fields_c3;
            else
                ++out.fields_s3;
            ++out.fields_by_disc[c.disc];
        }
    }
    return out;
}

CubicCensus census(u64 bound, int sign, const EnumerateOptions& opts) {
    return census_of(enumerate(bound, sign, opts), bound, sign);
}

FieldCount count_fields(u64 bound, int sign, const EnumerateOptions& opts) {
    CubicCensus c = census(bound, sign, opts);
    return {c.fields_s3, c.fields_c3};
}

CertifiedReal weighted_ring_count(u64 bound, int sign, const EnumerateOptions& opts) {
    if (bound == 0) return CertifiedReal::exact(0.0);
    return census(bound, sign, opts).weighted_count();
}

i64 h3_via_fields(FundamentalDiscriminant d) {
    int sign = d.is_real() ? 1 : -1;
    CubicCensus c = census(d.abs(), sign);
    auto it = c.fields_by_disc.find(d.value());
    return 1 + 2 * static_cast<i64>(it == c.fields_by_disc.end() ? 0 : it->second);
}

std::map<i64, i64> h3_table_via_fields(u64 bound, int sign, const EnumerateOptions& opts) {
    CubicCensus c = census(bound, sign, opts);
    std::map<i64, i64> out;
    for (auto d : fundamental_discriminants(std::max<u64>(bound, 3))) {
        if ((d.value() > 0) != (sign > 0) || d.abs() > bound) continue;
        auto it = c.fields_by_disc.find(d.value());
        out[d.value()] = 1 + 2 * static_cast<i64>(it == c.fields_by_disc.end() ? 0 : it->second);
    }
    return out;
}

ShintaniResidues shintani_residue(CubicSignature alpha) {
    // Over Q: A = zeta(2) / 4, B = 3 zeta(1/3) / 12 * Gamma(1/3)^3 / (2 pi).
    int r_alpha = alpha == CubicSignature::TotallyReal ? 1 : 0;
    CertifiedReal A = zeta2() / CertifiedReal::exact(4.0);
    CertifiedReal g = gamma_one_third();
    CertifiedReal B = CertifiedReal::exact(3.0) * zeta_one_third() / CertifiedReal::exact(12.0) * (g * g * g) /
                      (CertifiedReal::exact(2.0) * CertifiedReal::pi());
    ShintaniResidues out;
    // 1 + 3^{-r(alpha)}
    CertifiedReal factor = r_alpha ? CertifiedReal::exact(4.0) / CertifiedReal::exact(3.0) : CertifiedReal::exact(2.0);
    out.primary = A * factor;
    out.secondary = r_alpha ? B / sqrt(CertifiedReal::exact(3.0)) : B;
    return out;
}

}  // namespace cl3
