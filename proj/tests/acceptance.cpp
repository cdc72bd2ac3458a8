// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cl3/constants.hpp"
#include "cl3/cubicforms.hpp"
#include "cl3/datastore.hpp"
#include "cl3/orders.hpp"
#include "cl3/quadfield.hpp"
#include "cl3/wreath.hpp"

#ifndef CL3_FIXTURE_DIR
#define CL3_FIXTURE_DIR "tests/fixtures"
#endif

using namespace cl3;

namespace {

int jobs = 1;

void note(const char* fmt, double a = 0, double b = 0, double c = 0, double d = 0) {
    std::printf("    ");
    std::printf(fmt, a, b, c, d);
    std::printf("\n");
}

bool criterion_1() {
    const u64 bound = 10000;
    std::map<i64, i64> via_fields = h3_table_via_fields(bound, -1, {1.0, jobs});
    u64 checked = 0, failures = 0;
    for (const auto& r : imaginary_class_table(bound, jobs)) {
        ++checked;
        auto it = via_fields.find(r.d);
        i64 h = it == via_fields.end() ? 1 : it->second;
        if (h != r.h3) {
            ++failures;
            if (failures <= 5) std::printf("    d = %ld: h3 = %ld, 1 + 2 #fields = %ld\n", static_cast<long>(r.d),
                                           static_cast<long>(r.h3), static_cast<long>(h));
        }
    }
    std::printf("    %lu discriminants, %lu mismatches\n", static_cast<unsigned long>(checked),
                static_cast<unsigned long>(failures));
    return failures == 0 && checked > 0;
}

bool criterion_2() {
    auto mean = [](const std::vector<ImaginaryClassRecord>& t, u64 X) {
        double s = 0, n = 0;
        for (const auto& r : t)
            if (static_cast<u64>(-r.d) <= X) {
                s += static_cast<double>(r.h3);
                n += 1;
            }
        return s / n;
    };
    auto table = imaginary_class_table(1000000, jobs);
    double m4 = mean(table, 10000), m6 = mean(table, 1000000);
    double count = static_cast<double>(fundamental_discriminants(1000000).size());
    double expect = 6e6 / (M_PI * M_PI);
    note("mean h3, d < 0: %.5f at 10^4, %.5f at 10^6", m4, m6);
    note("fundamental discriminants |d| <= 10^6: %.0f, 6*10^6/pi^2 = %.1f, ratio %.5f", count, expect, count / expect);
    return m6 >= 1.5 && m6 <= 2.0 && std::abs(2.0 - m6) < std::abs(2.0 - m4) && std::abs(count / expect - 1) < 0.01;
}

bool within(const ConstantEstimate& e, double target, double tol, const std::string& name) {
    bool bracket = e.lower <= target + tol && e.upper >= target - tol;
    bool point = std::abs(e.point - target) <= tol;
    std::printf("    %-18s bracket [%.5f, %.5f]  point %.5f  target %.2f  %s\n", name.c_str(), e.lower, e.upper,
                e.point, target, bracket && point ? "ok" : "off");
    return bracket && point;
}

bool criterion_3() {
    const u64 X = 1000000;
    WeightTable table = WeightTable::build(X, jobs);
    const std::vector<double> expect{1.12, 1.34, 2.01, 1.41};
    bool ok = true;
    auto sigmas = d4_signatures();
    for (size_t i = 0; i < sigmas.size(); ++i)
        ok &= within(eval_constant(ConstantTarget::CD4Sigma, table, X, sigmas[i]), expect[i], 0.03,
                     "C_D4 " + sigmas[i]);
    ok &= within(eval_constant(ConstantTarget::CD4, table, X), 1.42, 0.03, "C_D4");
    within(eval_constant(ConstantTarget::Cm, table, X), 1.42, 0.03, "C_m (info)");
    note("tail bound at 10^6: %.4f; brackets are wider than 0.02, see README", tail_bound(X));
    return ok;
}

bool criterion_4() {
    const std::vector<Rational> full{Rational(40, 27), Rational(16, 9), Rational(8, 3), Rational(8, 3)};
    bool ok = true;
    auto sigmas = d4_signatures();
    for (size_t i = 0; i < sigmas.size(); ++i) {
        Rational got = cm_full_prediction(d4(), {parse_cycles(sigmas[i], 4)});
        std::printf("    %-9s cm_full %s (expected %s)\n", sigmas[i].c_str(), got.str().c_str(), full[i].str().c_str());
        ok &= got == full[i];
    }
    for (int u = 0; u <= 2; ++u) {
        Rational got = cm_relative_prediction(u);
        Rational want = Rational(1) + Rational::power(3, -u);
        std::printf("    u = %d     relative %s\n", u, got.str().c_str());
        ok &= got == want;
    }
    return ok;
}

CubicAlgebra field_of_disc(i64 d) {
    for (const auto& c : enumerate(static_cast<u64>(std::llabs(d)), d < 0 ? -1 : 1))
        if (c.disc == d && c.maximal && c.irreducible) return CubicAlgebra(c.form);
    fail(ErrorCode::InvalidDiscriminant, "no cubic field of discriminant " + std::to_string(d));
}

bool criterion_5() {
    std::vector<std::pair<std::string, CubicAlgebra>> algebras;
    for (i64 d : {-23, -31, 49, 81, 229}) algebras.emplace_back(std::to_string(d), field_of_disc(d));
    algebras.emplace_back("Z^3", CubicAlgebra::split());
    bool ok = true;
    for (const auto& [name, A] : algebras) {
        DirichletCoefficients dw = dw_coefficients(A, 25);
        MultTable t = mult_table(A.form());
        std::string row;
        for (u64 m = 1; m <= 5; ++m) {
            u64 a = dw.at(m * m), b = brute_subrings(t, m);
            ok &= a == b;
            row += " " + std::to_string(a) + (a == b ? "" : "!=" + std::to_string(b));
        }
        std::printf("    %-4s subrings of index 1..5:%s\n", name.c_str(), row.c_str());
    }
    return ok;
}

bool criterion_6() {
    u64 fields = 0, rows = 0, failures = 0;
    for (const auto& F : fundamental_discriminants(100)) {
        ResolventReport r = resolvent_series_check(F, 2);
        ++fields;
        for (const auto& row : r.rows) {
            ++rows;
            if (!row.equal()) {
                ++failures;
                std::printf("    d = %ld, n = %lu: %s vs %s\n", static_cast<long>(F.value()),
                            static_cast<unsigned long>(row.n), row.lhs.str().c_str(), row.rhs.str().c_str());
            }
        }
    }
    std::printf("    %lu fields, %lu coefficients, %lu mismatches\n", static_cast<unsigned long>(fields),
                static_cast<unsigned long>(rows), static_cast<unsigned long>(failures));
    return failures == 0 && fields > 0;
}

bool criterion_7() {
    const double X = 1e6;
    bool ok = true;
    for (int sign : {1, -1}) {
        CertifiedReal w = weighted_ring_count(1000000, sign, {1.0, jobs});
        ShintaniResidues r = shintani_residue(sign > 0 ? CubicSignature::TotallyReal : CubicSignature::Mixed);
        double lead = r.primary.mid() * X;
        double two_pole = lead + 1.2 * r.secondary.mid() * std::pow(X, 5.0 / 6.0);
        double ratio = w.mid() / lead;
        std::printf("    sign %+d: count %.1f, X-term %.1f (ratio %.4f), two-pole %.1f (ratio %.5f)\n", sign, w.mid(),
                    lead, ratio, two_pole, w.mid() / two_pole);
        ok &= std::abs(ratio - 1.0) <= 0.05;
    }
    if (!ok) note("the X^{5/6} term is about -9%% / -11%% of the X-term at 10^6; see README");
    return ok;
}

bool criterion_8() {
    std::vector<PermGroup> hs{
        PermGroup::trivial(1),
        PermGroup::from_cycles(2, {"(12)"}),
        PermGroup::from_cycles(4, {"(1234)"}),
        PermGroup::from_cycles(4, {"(12)(34)", "(13)(24)"}),
        d4(),
    };
    bool ok = true;
    u64 cases = 0;
    for (const auto& H : hs) {
        PermGroup G = wreath_c2(H);
        for (const auto& s : signature_sums(G)) {
            ++cases;
            ok &= s.data.r1 <= 4;
            ok &= s.sum_m == (u64{1} << s.data.r1);
            ok &= s.sum_m_weighted == Rational::power(4, s.data.r1) * Rational::power(3, -(s.data.r1 + s.data.r2));
        }
        AutRatio a = aut_ratio(H);
        std::printf("    deg H = %d: aut_ratio %lu (%s)\n", H.degree(), static_cast<unsigned long>(a.value),
                    a.brute_force ? "brute force" : "formula");
        ok &= a.brute_force && a.value == (u64{1} << H.degree());
    }
    std::printf("    %lu archimedean cases with r1(F) <= 4\n", static_cast<unsigned long>(cases));
    return ok;
}

bool criterion_9() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("cl3_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    FieldCache cache((dir / "cache.jsonl").string());
    std::ifstream in(std::string(CL3_FIXTURE_DIR) + "/d4_quartic_100000.jsonl");
    std::vector<FieldRecord> records;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) records.push_back(parse_record(line));
    cache.append(records);
    DatastoreConfig cfg;
    cfg.network = false;
    FetchQuery q;
    FetchResult r = fetch_all(q, cfg, cache);
    AverageReport rep = empirical_average(cache.records(), Grouping::Signature, {100000});
    fs::remove_all(dir);
    std::printf("    fixture records %zu, served offline %zu, degraded %s, groups %zu\n", cache.size(),
                r.records.size(), r.degraded ? "yes" : "no", rep.groups.size());
    std::printf("    unit suites: run ctest (network off by default)\n");
    return cache.size() == 4764 && r.degraded && r.records.size() == 4764 && rep.groups.size() == 4;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--jobs") jobs = std::max(1, std::atoi(argv[i + 1]));
    const std::vector<std::pair<const char*, std::function<bool()>>> criteria{
        {"bijection h3 = 1 + 2 #cubic fields, d < 0, |d| <= 10^4", criterion_1},
        {"imaginary h3 average trend and quadratic field count at 10^6", criterion_2},
        {"D4 constants at truncation 10^6", criterion_3},
        {"Cohen-Martinet predictions are exact", criterion_4},
        {"order series against lattice enumeration, index <= 5", criterion_5},
        {"resolvent series at depth 2, |d| <= 100", criterion_6},
        {"weighted ring count within 5% of the X-term at 10^6", criterion_7},
        {"M_Sigma identities and automorphism ratios", criterion_8},
        {"hermetic fixtures with the network off", criterion_9},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            std::printf("criterion %zu: %s\n", i + 1, criteria[i].first);
            std::fflush(stdout);
            ok = criteria[i].second();
        } catch (const std::exception& e) {
            std::printf("    error: %s\n", e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu (%.1f s)\n", ok ? "PASS" : "FAIL", i + 1, secs);
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
