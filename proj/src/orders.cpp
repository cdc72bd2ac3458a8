#include "cl3/orders.hpp"

#include <functional>

#include "cl3/error.hpp"

namespace cl3 {

const char* to_string(SplittingType t) {
    switch (t) {
        case SplittingType::Split: return "(1,1,1)";
        case SplittingType::PartialInert: return "(1,2)";
        case SplittingType::Inert: return "(3)";
        case SplittingType::PartialRamified: return "(1^2,1)";
        case SplittingType::TotallyRamified: return "(1^3)";
    }
    return "?";
}

CubicAlgebra::CubicAlgebra(const BinaryCubicForm& maximal_form) : form_(maximal_form) {
    i64 D = cl3::disc(form_);
    if (D == 0) fail(ErrorCode::InvalidArgument, "CubicAlgebra: zero discriminant");
    if (!is_maximal(form_)) fail(ErrorCode::InvalidArgument, "CubicAlgebra: form is not maximal");
    if (is_irreducible(form_))
        kind_ = AlgebraKind::CubicField;
    else if (D > 0 && is_square(static_cast<u64>(D)))
        kind_ = AlgebraKind::Split;
    else
        kind_ = AlgebraKind::QuadraticTimesQ;
}

CubicAlgebra CubicAlgebra::split() { return CubicAlgebra(BinaryCubicForm{0, 1, -1, 0}); }

CubicAlgebra CubicAlgebra::quadratic_times_q(FundamentalDiscriminant d) {
    // y (x^2 + c x y + e y^2) with c^2 - 4e = d
    i64 c = mod(d.value(), 2);
    return CubicAlgebra(BinaryCubicForm{0, 1, c, (c * c - d.value()) / 4});
}

int CubicAlgebra::aut_order() const {
    switch (kind_) {
        case AlgebraKind::Split: return 6;
        case AlgebraKind::QuadraticTimesQ: return 2;
        case AlgebraKind::CubicField: return is_square(static_cast<u64>(disc() < 0 ? 0 : disc())) ? 3 : 1;
    }
    return 1;
}

SplittingType CubicAlgebra::splitting_type(i64 p) const {
    if (p < 2 || factorize(static_cast<u64>(p)).size() != 1 || factorize(static_cast<u64>(p))[0].second != 1)
        fail(ErrorCode::InvalidArgument, "splitting_type: p must be prime");
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    // For a maximal ring the splitting of p follows the factorization of f mod p.
    int roots = mod(form_.a, p) == 0 ? 1 : 0;
    for (i64 r = 0; r < p; ++r)
        if (evaluate(form_, r, 1) % p == 0) ++roots;
    bool ramified = disc() % p == 0;
    SplittingType t;
    if (!ramified) {
        if (roots == 3)
            t = SplittingType::Split;
        else if (roots == 1)
            t = SplittingType::PartialInert;
        else if (roots == 0)
            t = SplittingType::Inert;
        else
            fail(ErrorCode::DataIntegrity, "splitting_type: inconsistent root count");
    } else {
        if (roots == 2)
            t = SplittingType::PartialRamified;
        else if (roots == 1)
            t = SplittingType::TotallyRamified;
        else
            fail(ErrorCode::DataIntegrity, "splitting_type: inconsistent root count");
    }
    cache_.emplace(p, t);
    return t;
}

namespace {

using Series = std::vector<u64>;

Series multiply(const Series& x, const Series& y) {
    Series out(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; i + j < x.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

// 1 / (1 - w y^k) truncated to the length of the series.
Series geometric(std::size_t len, u64 w, std::size_t k) {
    Series out(len, 0);
    u64 c = 1;
    for (std::size_t i = 0; i < len; i += k, c *= w) out[i] = c;
    return out;
}

// 1 + y^k
Series one_plus(std::size_t len, std::size_t k) {
    Series out(len, 0);
    out[0] = 1;
    if (k < len) out[k] += 1;
    return out;
}

}  // namespace

DirichletCoefficients dw_coefficients(const CubicAlgebra& A, u64 bound) {
    if (bound < 1) fail(ErrorCode::InvalidArgument, "dw_coefficients: bound must be positive");
    u64 M = isqrt(bound);
    // In t = 2s and index m: zeta(2t) zeta(3t-1) prod_P (1 + Nm(P)^{-t}).
    std::map<u64, Series> local;
    for (u64 p : primes_up_to(M)) {
        std::size_t len = 1;
        for (u64 q = p; q <= M; q *= p) ++len;
        Series s = multiply(geometric(len, 1, 2), geometric(len, p, 3));
        Series a(len, 0);
        a[0] = 1;
        switch (A.splitting_type(static_cast<i64>(p))) {
            case SplittingType::Split: a = multiply(multiply(one_plus(len, 1), one_plus(len, 1)), one_plus(len, 1)); break;
            case SplittingType::PartialInert: a = multiply(one_plus(len, 1), one_plus(len, 2)); break;
            case SplittingType::Inert: a = one_plus(len, 3); break;
            case SplittingType::PartialRamified: a = multiply(one_plus(len, 1), one_plus(len, 1)); break;
            case SplittingType::TotallyRamified: a = one_plus(len, 1); break;
        }
        local[p] = multiply(s, a);
    }
    DirichletCoefficients out;
    out.bound = bound;
    out.coefficients.assign(bound, 0);
    for (u64 m = 1; m <= M; ++m) {
        u64 v = 1;
        for (auto [p, e] : factorize(m)) v *= local.at(p)[e];
        out.coefficients[m * m - 1] = v;
    }
    return out;
}

MultTable mult_table(const BinaryCubicForm& f) {
    MultTable t;
    for (int j = 0; j < 3; ++j) {
        t.c[0][j][j] = 1;
        t.c[j][0][j] = 1;
    }
    t.c[1][1] = {-f.a * f.c, f.b, -f.a};
    t.c[1][2] = {-f.a * f.d, 0, 0};
    t.c[2][1] = {-f.a * f.d, 0, 0};
    t.c[2][2] = {-f.b * f.d, f.d, -f.c};
    return t;
}

namespace {

using Vec3 = std::array<i64, 3>;

Vec3 mul(const MultTable& t, const Vec3& u, const Vec3& v) {
    Vec3 out{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (u[i] == 0 || v[j] == 0) continue;
            for (int k = 0; k < 3; ++k) out[k] += u[i] * v[j] * t.c[i][j][k];
        }
    return out;
}

Vec3 unit(int i) {
    Vec3 v{0, 0, 0};
    v[i] = 1;
    return v;
}

void validate(const MultTable& t) {
    for (int i = 0; i < 3; ++i) {
        if (mul(t, unit(0), unit(i)) != unit(i) || mul(t, unit(i), unit(0)) != unit(i))
            fail(ErrorCode::InvalidArgument, "multiplication table: e_0 is not the identity");
        for (int j = 0; j < 3; ++j) {
            if (t.c[i][j] != t.c[j][i]) fail(ErrorCode::InvalidArgument, "multiplication table is not commutative");
            for (int k = 0; k < 3; ++k)
                if (mul(t, mul(t, unit(i), unit(j)), unit(k)) != mul(t, unit(i), mul(t, unit(j), unit(k))))
                    fail(ErrorCode::InvalidArgument, "multiplication table is not associative");
        }
    }
}

// Upper triangular basis rows h; tests v in the row span.
bool in_lattice(const std::array<Vec3, 3>& h, Vec3 v) {
    for (int i = 0; i < 3; ++i) {
        if (v[i] % h[i][i] != 0) return false;
        i64 x = v[i] / h[i][i];
        for (int k = i; k < 3; ++k) v[k] -= x * h[i][k];
    }
    return true;
}

}  // namespace

i64 trace_form_disc(const MultTable& t) {
    i64 tr[3];
    for (int k = 0; k < 3; ++k) tr[k] = t.c[k][0][0] + t.c[k][1][1] + t.c[k][2][2];
    i64 m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = t.c[i][j][0] * tr[0] + t.c[i][j][1] * tr[1] + t.c[i][j][2] * tr[2];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

u64 brute_subrings(const MultTable& t, u64 m) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "brute_subrings: index must be positive");
    validate(t);
    i64 mi = static_cast<i64>(m);
    u64 count = 0;
    for (i64 h0 = 1; h0 <= mi; ++h0) {
        if (mi % h0) continue;
        for (i64 h1 = 1; h1 <= mi / h0; ++h1) {
            if ((mi / h0) % h1) continue;
            i64 h2 = mi / h0 / h1;
            for (i64 x01 = 0; x01 < h1; ++x01)
                for (i64 x02 = 0; x02 < h2; ++x02)
                    for (i64 x12 = 0; x12 < h2; ++x12) {
                        std::array<Vec3, 3> h{Vec3{h0, x01, x02}, Vec3{0, h1, x12}, Vec3{0, 0, h2}};
                        if (!in_lattice(h, unit(0))) continue;
                        bool closed = true;
                        for (int i = 0; i < 3 && closed; ++i)
                            for (int j = i; j < 3 && closed; ++j) closed = in_lattice(h, mul(t, h[i], h[j]));
                        if (closed) ++count;
                    }
        }
    }
    return count;
}

bool ResolventReport::all_equal() const {
    for (const auto& r : rows)
        if (!r.equal()) return false;
    return true;
}

std::vector<u64> cube_class_squarefree_ideals(FundamentalDiscriminant F, u64 bound) {
    ClassGroup G(F);
    i64 d = F.value();
    struct Option {
        u64 norm;
        int cls;
    };
    std::vector<std::vector<Option>> options;
    std::vector<u64> primes = primes_up_to(bound);
    for (u64 p : primes) {
        i64 pi = static_cast<i64>(p);
        std::vector<Option> opts;
        int chi = kronecker(d, pi);
        if (chi != -1) {
            // prime ideal above p as the form (p, b, (b^2 - d) / 4p)
            i64 b = -1;
            for (i64 x = 0; x < 2 * pi; ++x)
                if (mod(x * x - d, 4 * pi) == 0) {
                    b = x;
                    break;
                }
            if (b < 0) fail(ErrorCode::DataIntegrity, "no square root of the discriminant modulo 4p");
            int cls = G.class_of(QuadraticForm{pi, b, (b * b - d) / (4 * pi)});
            opts.push_back({p, cls});
            if (chi == 1) opts.push_back({p, G.inverse(cls)});
        }
        if (chi != 0) opts.push_back({p * p, G.identity()});
        options.push_back(opts);
    }
    std::vector<u64> count(bound + 1, 0);
    std::function<void(std::size_t, u64, int)> walk = [&](std::size_t i, u64 norm, int cls) {
        if (i == primes.size()) {
            if (G.is_cube(cls)) ++count[norm];
            return;
        }
        walk(i + 1, norm, cls);
        for (const Option& o : options[i])
            if (norm * o.norm <= bound) walk(i + 1, norm * o.norm, G.multiply(cls, o.cls));
    };
    walk(0, 1, G.identity());
    return count;
}

ResolventReport resolvent_series_check(FundamentalDiscriminant F, int depth) {
    if (depth < 1) fail(ErrorCode::InvalidArgument, "resolvent_series_check: depth must be positive");
    if (depth > 3) fail(ErrorCode::Unsupported, "resolvent_series_check: depth above 3");
    i64 d = F.value();
    int sign = d > 0 ? 1 : -1;
    u64 n_max = static_cast<u64>(depth);
    u64 bound = F.abs() * n_max * n_max;
    std::vector<CubicRingClass> classes = enumerate(bound, sign);
    if (enumerate(bound, sign, {2.0, 1}).size() != classes.size())
        fail(ErrorCode::SearchBoxInsufficient, "resolvent_series_check: enumeration box insufficient");

    ResolventReport report;
    report.disc = d;
    report.h3 = three_torsion(F);
    for (u64 n = 1; n <= n_max; ++n) report.rows.push_back({n, Rational(0), Rational(0), Rational(0), 0});

    for (const auto& c : classes) {
        for (u64 n = 1; n <= n_max; ++n) {
            if (c.disc != d * static_cast<i64>(n * n)) continue;
            int aut_a;
            if (!c.irreducible) {
                aut_a = 2;  // Q x Q(sqrt(d n^2)) = Q x F
            } else {
                // [O_K : R] = n, i.e. disc(K) = d; n <= 3 is 1 or prime.
                bool index_n = n == 1 ? c.maximal : !is_maximal_at(c.form, static_cast<i64>(n));
                if (!index_n) continue;
                aut_a = 1;
            }
            ResolventRow& row = report.rows[n - 1];
            row.lhs += Rational(1, c.aut_order);
            row.lhs_algebra_weight += Rational(1, aut_a);
            ++row.rings;
        }
    }

    // zeta(t) zeta(3t - 1) sum_a Nm(a)^{-t}: coefficient at n is sum_{m j^3 N = n} j c(N).
    std::vector<u64> ideals = cube_class_squarefree_ideals(F, n_max);
    for (u64 n = 1; n <= n_max; ++n) {
        u64 total = 0;
        for (u64 j = 1; j * j * j <= n; ++j) {
            if (n % (j * j * j)) continue;
            u64 rest = n / (j * j * j);
            for (u64 N = 1; N <= rest; ++N)
                if (rest % N == 0) total += j * ideals[N];
        }
        report.rows[n - 1].rhs = Rational(report.h3 * static_cast<i64>(total), 2);
    }
    return report;
}

}  // namespace cl3
