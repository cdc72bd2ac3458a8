#include "cl3/constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cl3/cubicforms.hpp"
#include "cl3/error.hpp"
#include "cl3/lfunc.hpp"

namespace cl3 {

namespace {

// Real fields with |d| above this use truncated series for L(1, chi_d).
constexpr u64 kExactL1Limit = 4000;
constexpr u64 kSeriesTerms1 = 4000;
// Below this L(2, chi_d) is computed to 1e-10, above with kSeriesTerms2 terms.
constexpr u64 kExactL2Limit = 1000;
constexpr u64 kSeriesTerms2 = 1000;
// 2 log((sqrt(96) + 10) / 2): twice the smallest regulator for d > 100.
constexpr double kTwiceMinRegulator = 4.585;
constexpr double kTailSlack = 1.0 + 1e-12;

const int kRealResidues[] = {1, 5, 9, 13, 8, 12};
const int kImagResidues[] = {3, 7, 11, 15, 4, 8};

double zeta4_value() { return zeta4().lower(); }

// Upper bounds for h * weight and weight of one field, from
// L(1) <= 2 + log D, zeta_F(2) >= zeta(4), and h = sqrt(D) L(1) / pi
// (imaginary, D > 4) or h <= sqrt(D) L(1) / (2 Reg) with Reg >= 2.2925 (real, D > 100).
double g_numerator(double D, int sign) {
    double l = 2.0 + std::log(D);
    double c = sign > 0 ? kTwiceMinRegulator : M_PI;
    return l * l / (c * zeta4_value() * D * std::sqrt(D)) * kTailSlack;
}

double g_denominator(double D) { return (2.0 + std::log(D)) / (zeta4_value() * D * D) * kTailSlack; }

bool numerator_bound_applies(u64 D, int sign) { return sign > 0 ? D > 100 : D > 4; }

// Integrals of the two bounds from Y to infinity.
double int_numerator(double Y, int sign) {
    double l = 2.0 + std::log(Y);
    double c = sign > 0 ? kTwiceMinRegulator : M_PI;
    return 2.0 / std::sqrt(Y) * (l * l + 4.0 * l + 8.0) / (c * zeta4_value()) * kTailSlack;
}

double int_denominator(double Y) { return (2.0 + std::log(Y) + 1.0) / Y / zeta4_value() * kTailSlack; }

}  // namespace

CertifiedReal weight(const QuadFieldData& F, WeightVariant variant) {
    CertifiedReal D = CertifiedReal::from_int(static_cast<long long>(F.disc.abs()));
    CertifiedReal w = residue(F) / (dedekind_zeta_at_2(F.disc) * D * D);
    if (variant == WeightVariant::MType && F.r2 > 0) w /= CertifiedReal::exact(2.0);
    return w;
}

std::string to_string(ConstantTarget t) {
    switch (t) {
        case ConstantTarget::Cm: return "C_m";
        case ConstantTarget::CD4Sigma: return "C_D4_sigma";
        case ConstantTarget::CD4: return "C_D4";
        case ConstantTarget::Dm: return "D_m";
        case ConstantTarget::DD4Sigma: return "D_D4_sigma";
        case ConstantTarget::DD4: return "D_D4";
    }
    return "?";
}

ConstantTarget parse_target(const std::string& name) {
    for (auto t : {ConstantTarget::Cm, ConstantTarget::CD4Sigma, ConstantTarget::CD4, ConstantTarget::Dm,
                   ConstantTarget::DD4Sigma, ConstantTarget::DD4})
        if (to_string(t) == name) return t;
    fail(ErrorCode::InvalidArgument, "unknown constant '" + name + "'");
}

TailBounds tail_bounds(u64 X, int sign) {
    if (X < 100) fail(ErrorCode::InvalidArgument, "tail_bounds: truncation must be at least 100");
    if (sign != 1 && sign != -1) fail(ErrorCode::InvalidArgument, "tail_bounds: sign must be +1 or -1");
    // Per residue class r mod 16: g decreasing gives
    // sum_{D = r mod 16, D > X} g(D) <= (1/16) int_{D_r - 16}^inf g, D_r the first such D.
    TailBounds t;
    for (int r : sign > 0 ? kRealResidues : kImagResidues) {
        u64 first = X + 1 + static_cast<u64>((r - static_cast<i64>((X + 1) % 16) + 16) % 16);
        double start = static_cast<double>(first - 16);
        t.numerator += int_numerator(start, sign) / 16.0;
        t.denominator += int_denominator(start) / 16.0;
    }
    t.numerator *= kTailSlack;
    t.denominator *= kTailSlack;
    return t;
}

double tail_bound(u64 X) { return 2.0 * (tail_bounds(X, 1).numerator + tail_bounds(X, -1).numerator); }

WeightTable WeightTable::build(u64 bound, int jobs) {
    if (bound < 3) fail(ErrorCode::InvalidArgument, "WeightTable: bound must be at least 3");
    if (jobs < 1) jobs = 1;
    WeightTable table;
    table.bound_ = bound;

    struct Pending {
        i64 d;
        i64 h;  // 0 for real fields
        i64 h3;
    };
    std::vector<Pending> pending;
    for (const auto& r : imaginary_class_table(bound, jobs)) pending.push_back({r.d, r.h, r.h3});
    EnumerateOptions opts;
    opts.jobs = jobs;
    for (const auto& [d, h3] : h3_table_via_fields(bound, 1, opts)) pending.push_back({d, 0, h3});
    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        i64 x = a.d < 0 ? -a.d : a.d, y = b.d < 0 ? -b.d : b.d;
        return x != y ? x < y : a.d < b.d;
    });

    table.terms_.resize(pending.size());
    const CertifiedReal z2 = zeta2();
    const CertifiedReal two_pi = CertifiedReal::exact(2.0) * CertifiedReal::pi();
    const double l2_floor = (zeta4() / z2).lower();
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        BatchLEvaluator ev(std::max(kSeriesTerms1, kSeriesTerms2));
        for (;;) {
            std::size_t begin = next.fetch_add(256);
            if (begin >= pending.size()) return;
            std::size_t end = std::min(pending.size(), begin + 256);
            for (std::size_t i = begin; i < end; ++i) {
                const Pending& p = pending[i];
                FundamentalDiscriminant d(p.d);
                u64 D = d.abs();
                CertifiedReal l1, l2;
                u64 n1 = 0, n2 = 0;
                if (p.h > 0) {
                    int w = roots_of_unity(d);
                    l1 = two_pi * CertifiedReal::from_int(p.h) /
                         (CertifiedReal::from_int(w) * sqrt(CertifiedReal::from_int(static_cast<long long>(D))));
                } else if (D <= kExactL1Limit) {
                    l1 = l_at_1(d);
                } else {
                    n1 = kSeriesTerms1;
                }
                if (D <= kExactL2Limit)
                    l2 = l_at_2(d, 1e-10);
                else
                    n2 = kSeriesTerms2;
                if (n1 > 0 || n2 > 0) ev.evaluate(d, n1, n2, n1 > 0 ? &l1 : nullptr, n2 > 0 ? &l2 : nullptr);
                if (l2.lower() < l2_floor) l2 = CertifiedReal::from_bounds(l2_floor, std::max(l2.upper(), l2_floor));
                if (l1.lower() < 0.0) l1 = CertifiedReal::from_bounds(0.0, std::max(l1.upper(), 0.0));
                CertifiedReal Dr = CertifiedReal::from_int(static_cast<long long>(D));
                CertifiedReal w = l1 / (z2 * l2 * Dr * Dr);
                FieldTerm& t = table.terms_[i];
                t.d = p.d;
                t.h3 = p.h3;
                t.w_lo = std::max(0.0, w.lower());
                t.w_hi = w.upper();
                t.w_mid = w.mid();
            }
        }
    };
    std::vector<std::thread> threads;
    for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
    return table;
}

std::vector<std::string> d4_signatures() { return {"()", "(24)", "(13)(24)", "(12)(34)"}; }

ConstantEstimate eval_constant(ConstantTarget target, const WeightTable& table, u64 truncation,
                               const std::string& sigma) {
    if (truncation < 100) fail(ErrorCode::InvalidArgument, "eval_constant: truncation must be at least 100");
    if (truncation > table.bound())
        fail(ErrorCode::InvalidArgument, "eval_constant: truncation exceeds the weight table bound");

    ConstantEstimate est;
    est.target = target;
    est.truncation = truncation;

    // Per sign (index 0 real, 1 imaginary): weight scale c and archimedean factor a.
    double c[2] = {1.0, 1.0};
    double a[2] = {13.0 / 9.0, 4.0 / 3.0};  // 1 + 2^{r1} / 3^{r1 + r2}
    bool quotient = true;
    switch (target) {
        case ConstantTarget::Cm: c[1] = 0.5; break;
        case ConstantTarget::CD4: break;
        case ConstantTarget::Dm:
            c[1] = 0.5;
            quotient = false;
            break;
        case ConstantTarget::DD4:
            c[0] = 4.0;
            c[1] = 2.0;
            quotient = false;
            break;
        case ConstantTarget::CD4Sigma:
        case ConstantTarget::DD4Sigma: {
            if (sigma.empty()) fail(ErrorCode::InvalidArgument, "eval_constant: this target needs a signature");
            PermGroup g = d4();
            GroupSignature s{parse_cycles(sigma, 4)};
            ArchimedeanData q = quotient_archimedean(g, s);
            int idx = q.r1 > 0 ? 0 : 1;
            est.signature = to_cycles(s[0]);
            c[1 - idx] = 0.0;
            if (target == ConstantTarget::CD4Sigma) {
                a[idx] = cm_relative_prediction(u_of_signature(g, s)).to_double();
            } else {
                double p = static_cast<double>(m_sigma(g, s)) / static_cast<double>(1u << q.r1);
                c[idx] = p * static_cast<double>(1 << (2 - q.r2));
                quotient = false;
            }
            break;
        }
    }

    double n_lo[2] = {0, 0}, n_hi[2] = {0, 0}, n_mid[2] = {0, 0};
    double d_lo[2] = {0, 0}, d_hi[2] = {0, 0}, d_mid[2] = {0, 0};
    for (const FieldTerm& t : table.terms()) {
        u64 D = static_cast<u64>(t.d < 0 ? -t.d : t.d);
        if (D > truncation) break;
        int sign = t.d > 0 ? 1 : -1;
        int i = t.d > 0 ? 0 : 1;
        double h3 = static_cast<double>(t.h3);
        double num_hi = t.w_hi * h3, den_hi = t.w_hi;
        if (numerator_bound_applies(D, sign)) {
            num_hi = std::min(num_hi, g_numerator(static_cast<double>(D), sign));
            den_hi = std::min(den_hi, g_denominator(static_cast<double>(D)));
        }
        n_lo[i] += t.w_lo * h3;
        n_hi[i] += num_hi;
        n_mid[i] += t.w_mid * h3;
        d_lo[i] += t.w_lo;
        d_hi[i] += den_hi;
        d_mid[i] += t.w_mid;
    }
    TailBounds tails[2] = {tail_bounds(truncation, 1), tail_bounds(truncation, -1)};

    double num_lo = 0, num_up = 0, num_mid = 0, den_lo = 0, den_up = 0, den_mid = 0, tail_num = 0, tail_den = 0;
    for (int i = 0; i < 2; ++i) {
        num_lo += c[i] * a[i] * n_lo[i];
        num_up += c[i] * a[i] * (n_hi[i] + tails[i].numerator);
        num_mid += c[i] * a[i] * n_mid[i];
        den_lo += c[i] * d_lo[i];
        den_up += c[i] * (d_hi[i] + tails[i].denominator);
        den_mid += c[i] * d_mid[i];
        tail_num += c[i] * a[i] * tails[i].numerator;
        tail_den += c[i] * tails[i].denominator;
    }
    // Accumulated double rounding is far below this relative slack.
    const double slack = 1e-12;
    if (quotient) {
        est.lower = num_lo / den_up * (1.0 - slack);
        est.upper = num_up / den_lo * (1.0 + slack);
        est.point = num_mid / den_mid;
        est.tail_bound = tail_num;
    } else {
        est.lower = den_lo * (1.0 - slack);
        est.upper = den_up * (1.0 + slack);
        est.point = den_mid;
        est.tail_bound = tail_den;
    }
    est.flagged = est.upper - est.lower > 0.02;
    return est;
}

ConstantEstimate eval_constant(ConstantTarget target, u64 truncation, const std::string& sigma, int jobs) {
    if (truncation < 100) fail(ErrorCode::InvalidArgument, "eval_constant: truncation must be at least 100");
    return eval_constant(target, WeightTable::build(truncation, jobs), truncation, sigma);
}

}  // namespace cl3
