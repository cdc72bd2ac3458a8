// Command-line front end. Uses only the C interface in cl3.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cl3/cl3.h"

namespace {

enum class Format { Csv, Json, Human };

struct Cell {
    std::string text;
    bool numeric = true;
};

Cell num(int64_t v) { return {std::to_string(v)}; }
Cell num(uint64_t v) { return {std::to_string(v)}; }
Cell num(int v) { return {std::to_string(v)}; }
Cell num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return {buf};
}
Cell text(std::string s) { return {std::move(s), false}; }
Cell flag(bool b) { return {b ? "true" : "false", true}; }
Cell ratio(int64_t n, int64_t d) { return text(d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d)); }

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Streams one table to stdout; rows are written as they arrive.
class Emitter {
public:
    Emitter(Format f, std::vector<std::string> columns) : format_(f), columns_(std::move(columns)) {
        if (format_ == Format::Csv) {
            for (size_t i = 0; i < columns_.size(); ++i) std::printf("%s%s", i ? "," : "", columns_[i].c_str());
            std::printf("\n");
        } else if (format_ == Format::Human) {
            for (size_t i = 0; i < columns_.size(); ++i) std::printf("%-*s", width(i), columns_[i].c_str());
            std::printf("\n");
        } else {
            std::printf("[");
        }
    }

    void row(const std::vector<Cell>& cells) {
        if (format_ == Format::Csv) {
            for (size_t i = 0; i < cells.size(); ++i)
                std::printf("%s%s", i ? "," : "", csv_field(cells[i].text).c_str());
            std::printf("\n");
        } else if (format_ == Format::Human) {
            for (size_t i = 0; i < cells.size(); ++i) std::printf("%-*s", width(i), cells[i].text.c_str());
            std::printf("\n");
        } else {
            std::printf("%s\n  {", rows_ ? "," : "");
            for (size_t i = 0; i < cells.size(); ++i) {
                const std::string v = cells[i].numeric ? cells[i].text : json_string(cells[i].text);
                std::printf("%s%s: %s", i ? ", " : "", json_string(columns_[i]).c_str(), v.c_str());
            }
            std::printf("}");
        }
        ++rows_;
    }

    ~Emitter() {
        if (format_ == Format::Json) std::printf("%s]\n", rows_ ? "\n" : "");
        std::fflush(stdout);
    }

private:
    int width(size_t i) const { return static_cast<int>(std::max<size_t>(columns_[i].size() + 2, 14)); }

    Format format_;
    std::vector<std::string> columns_;
    size_t rows_ = 0;
};

int report(int status) {
    if (status != CL3_OK) {
        const char* msg = cl3_last_error();
        std::fprintf(stderr, "cl3: %s%s%s\n", cl3_status_name(status), *msg ? ": " : "", msg);
    }
    return status;
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() {
        if (p) Free(p);
    }
};

Format format_of(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    return Format::Human;
}

std::vector<uint64_t> parse_grid(const std::vector<uint64_t>& grid, uint64_t bound) {
    if (!grid.empty()) return grid;
    std::vector<uint64_t> out;
    for (uint64_t x = 10; x < bound; x *= 10) out.push_back(x);
    out.push_back(bound);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-torsion in class groups, cubic rings and the limiting constants"};
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "human";
    int jobs = 1;
    std::string cache_path = "cl3_fields.jsonl";
    bool network = false;
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json", "human"}));
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--cache", cache_path, "Field cache file");
    app.add_flag("--network,!--no-network", network, "Allow remote requests");
    app.add_flag_callback("--version", [] {
        std::printf("cl3 %s\n", cl3_version());
        std::exit(0);
    });

    int status = CL3_OK;

    // classgroup
    auto* cg = app.add_subcommand("classgroup", "Class group of a quadratic field");
    int64_t cg_d = 0;
    cg->add_option("--d,-d", cg_d, "Fundamental discriminant")->required()->allow_extra_args(false);
    cg->callback([&] {
        Handle<cl3_quadfield, cl3_quadfield_free> f;
        if ((status = cl3_quadfield_new(cg_d, &f.p))) return;
        cl3_quadfield_info info;
        if ((status = cl3_quadfield_get_info(f.p, &info))) return;
        std::vector<int64_t> inv(info.n_invariants);
        size_t len = 0;
        if ((status = cl3_quadfield_invariants(f.p, inv.data(), inv.size(), &len))) return;
        double lo, hi;
        if ((status = cl3_quadfield_l_at_1(f.p, &lo, &hi))) return;
        std::string group;
        for (size_t i = 0; i < len; ++i) group += (i ? "x" : "") + std::to_string(inv[i]);
        if (group.empty()) group = "1";
        Emitter e(format_of(format_name), {"disc", "h", "h3", "structure", "r1", "r2", "w", "regulator", "L1_lower", "L1_upper"});
        e.row({num(info.disc), num(info.h), num(info.h3), text(group), num(info.r1), num(info.r2), num(info.w),
               num(0.5 * (info.regulator_lower + info.regulator_upper)), num(lo), num(hi)});
    });

    // h3-avg
    auto* ha = app.add_subcommand("h3-avg", "Running mean of h3 over quadratic fields");
    int ha_sign = -1;
    uint64_t ha_bound = 10000;
    std::vector<uint64_t> ha_grid;
    ha->add_option("--sign", ha_sign, "-1 imaginary, 1 real")->check(CLI::IsMember({-1, 1}));
    ha->add_option("--bound", ha_bound, "Largest |d|");
    ha->add_option("--grid", ha_grid, "Explicit grid of X values")->delimiter(',');
    ha->callback([&] {
        std::vector<uint64_t> grid = parse_grid(ha_grid, ha_bound);
        std::vector<cl3_h3_average_row> rows(grid.size());
        if ((status = cl3_h3_average(ha_sign, grid.data(), grid.size(), jobs, rows.data()))) return;
        Emitter e(format_of(format_name), {"X", "fields", "mean_h3"});
        for (const auto& r : rows) e.row({num(r.X), num(r.fields), num(r.mean_h3)});
    });

    // count-cubic
    auto* cc = app.add_subcommand("count-cubic", "Cubic fields or rings by discriminant");
    uint64_t cc_bound = 1000;
    int cc_sign = 1;
    bool cc_list = false;
    cc->add_option("--bound", cc_bound, "Largest |disc|")->required();
    cc->add_option("--sign", cc_sign, "Sign of the discriminant")->check(CLI::IsMember({-1, 1}));
    cc->add_flag("--list", cc_list, "Stream every GL2(Z) class of forms");
    cc->callback([&] {
        if (cc_list) {
            Emitter e(format_of(format_name), {"a", "b", "c", "d", "disc", "aut", "maximal", "irreducible"});
            auto cb = [](const cl3_cubic_record* r, void* user) {
                static_cast<Emitter*>(user)->row({num(r->a), num(r->b), num(r->c), num(r->d), num(r->disc),
                                                  num(r->aut), flag(r->maximal), flag(r->irreducible)});
                return 0;
            };
            status = cl3_enumerate_cubic(cc_bound, cc_sign, jobs, cb, &e);
            return;
        }
        uint64_t s3 = 0, c3 = 0;
        if ((status = cl3_count_cubic_fields(cc_bound, cc_sign, jobs, &s3, &c3))) return;
        Emitter e(format_of(format_name), {"bound", "sign", "s3", "c3", "total"});
        e.row({num(cc_bound), num(cc_sign), num(s3), num(c3), num(s3 + c3)});
    });

    // rings-slope
    auto* rs = app.add_subcommand("rings-slope", "Weighted ring count against the Shintani residues");
    uint64_t rs_bound = 100000;
    int rs_sign = 1;
    rs->add_option("--bound", rs_bound, "Largest |disc|");
    rs->add_option("--sign", rs_sign, "Sign of the discriminant")->check(CLI::IsMember({-1, 1}));
    rs->callback([&] {
        double lo, hi, a, b;
        if ((status = cl3_weighted_ring_count(rs_bound, rs_sign, jobs, &lo, &hi))) return;
        if ((status = cl3_shintani_residues(rs_sign, &a, &b))) return;
        const double X = static_cast<double>(rs_bound);
        const double mid = 0.5 * (lo + hi);
        const double lead = a * X;
        const double two_pole = lead + 1.2 * b * std::pow(X, 5.0 / 6.0);
        Emitter e(format_of(format_name), {"X", "sign", "weighted_count", "x_term", "ratio", "two_pole", "two_pole_ratio"});
        e.row({num(rs_bound), num(rs_sign), num(mid), num(lead), num(mid / lead), num(two_pole), num(mid / two_pole)});
    });

    // orders-check
    auto* oc = app.add_subcommand("orders-check", "Subring counts from the Euler product and by enumeration");
    int64_t oc_disc = 0;
    bool oc_split = false;
    std::vector<int64_t> oc_form;
    uint64_t oc_max = 5;
    oc->add_option("--disc", oc_disc, "Discriminant of a cubic field");
    oc->add_option("--form", oc_form, "Maximal form a,b,c,d")->delimiter(',')->expected(4);
    oc->add_flag("--split", oc_split, "Use Z^3");
    oc->add_option("--max-index", oc_max, "Largest index")->check(CLI::Range(1, 12));
    oc->callback([&] {
        Handle<cl3_cubic_algebra, cl3_cubic_algebra_free> A;
        if (oc_split)
            status = cl3_cubic_algebra_new(0, 1, -1, 0, &A.p);
        else if (oc_form.size() == 4)
            status = cl3_cubic_algebra_new(oc_form[0], oc_form[1], oc_form[2], oc_form[3], &A.p);
        else if (oc_disc != 0)
            status = cl3_cubic_algebra_of_disc(oc_disc, &A.p);
        else {
            status = CL3_ERR_INVALID_ARGUMENT;
            std::fprintf(stderr, "cl3: orders-check needs --disc, --form or --split\n");
            return;
        }
        if (status) return;
        int64_t f[4];
        cl3_cubic_algebra_form(A.p, f);
        std::string form = std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + "," +
                           std::to_string(f[3]);
        Emitter e(format_of(format_name), {"form", "index", "euler_product", "lattice", "equal"});
        for (uint64_t m = 1; m <= oc_max; ++m) {
            int64_t dw = 0, brute = 0;
            if ((status = cl3_dw_coefficient(A.p, m, &dw))) return;
            if ((status = cl3_brute_subrings(A.p, m, &brute))) return;
            e.row({text(form), num(m), num(dw), num(brute), flag(dw == brute)});
        }
    });

    // resolvent-check
    auto* rc = app.add_subcommand("resolvent-check", "Both sides of the resolvent generating series");
    int64_t rc_disc = -23;
    int rc_depth = 2;
    rc->add_option("--disc", rc_disc, "Fundamental discriminant")->required();
    rc->add_option("--depth", rc_depth, "Number of coefficients")->check(CLI::Range(1, 3));
    rc->callback([&] {
        std::vector<cl3_resolvent_row> rows(8);
        size_t len = 0;
        int64_t h3 = 0;
        if ((status = cl3_resolvent_check(rc_disc, rc_depth, rows.data(), rows.size(), &len, &h3))) return;
        Emitter e(format_of(format_name), {"disc", "h3", "n", "lhs", "rhs", "rings", "equal"});
        for (size_t i = 0; i < len; ++i) {
            const auto& r = rows[i];
            e.row({num(rc_disc), num(h3), num(r.n), ratio(r.lhs_num, r.lhs_den), ratio(r.rhs_num, r.rhs_den),
                   num(r.rings), flag(r.equal)});
        }
    });

    // predict
    auto* pr = app.add_subcommand("predict", "Cohen-Martinet predictions for C2 wr H extensions");
    std::string pr_group = "D4", pr_gens, pr_sigma = "()";
    int pr_degree = 0;
    bool pr_wreath = false;
    pr->add_option("--group", pr_group, "Group label: C1 C2 C4 V4 D4 S3 C2wrC2wrC2 C8 Q8");
    pr->add_option("--generators", pr_gens, "Generators in cycle notation separated by ';'");
    pr->add_option("--degree", pr_degree, "Degree for --generators");
    pr->add_flag("--wreath", pr_wreath, "Treat the group as H and use C2 wr H");
    pr->add_option("--sigma", pr_sigma, "One class per real place, separated by ';'");
    pr->callback([&] {
        Handle<cl3_group, cl3_group_free> G, W;
        if (!pr_gens.empty())
            status = cl3_group_from_generators(pr_degree, pr_gens.c_str(), &G.p);
        else
            status = cl3_group_from_label(pr_group.c_str(), &G.p);
        if (status) return;
        cl3_group* target = G.p;
        if (pr_wreath) {
            if ((status = cl3_group_wreath(G.p, &W.p))) return;
            target = W.p;
        }
        cl3_prediction p;
        if ((status = cl3_predict(target, pr_sigma.c_str(), &p))) return;
        uint64_t order = 0;
        cl3_group_order(target, &order);
        Emitter e(format_of(format_name), {"order", "sigma", "u", "m_sigma", "r1_F", "r2_F", "relative", "full"});
        e.row({num(order), text(pr_sigma), num(p.u_rel), num(p.m_sigma), num(p.r1_F), num(p.r2_F),
               ratio(p.cm_relative_num, p.cm_relative_den),
               p.has_cm_full ? ratio(p.cm_full_num, p.cm_full_den) : text("unsupported")});
    });

    // constants
    auto* co = app.add_subcommand("constants", "Certified brackets for the limiting constants");
    std::string co_target = "C_D4", co_sigma;
    uint64_t co_trunc = 100000;
    co->add_option("--target", co_target, "C_m C_D4 C_D4_sigma D_m D_D4 D_D4_sigma");
    co->add_option("--truncation", co_trunc, "Largest |d| summed exactly")->check(CLI::Range(100, 100000000));
    co->add_option("--sigma", co_sigma, "D4 class for the _sigma targets; 'all' for every class");
    co->callback([&] {
        Handle<cl3_weight_table, cl3_weight_table_free> t;
        if ((status = cl3_weight_table_new(co_trunc, jobs, &t.p))) return;
        std::vector<std::string> sigmas{co_sigma};
        if (co_sigma == "all") sigmas = {"()", "(24)", "(13)(24)", "(12)(34)"};
        std::vector<std::vector<Cell>> rows;
        for (const auto& s : sigmas) {
            cl3_constant_estimate est;
            if ((status = cl3_eval_constant(t.p, co_target.c_str(), s.empty() ? nullptr : s.c_str(), co_trunc, &est)))
                return;
            rows.push_back({text(co_target), text(s), num(est.truncation), num(est.lower), num(est.upper),
                            num(est.point), num(est.tail_bound), flag(est.flagged)});
        }
        Emitter e(format_of(format_name), {"target", "sigma", "truncation", "lower", "upper", "point", "tail_bound", "wide"});
        for (const auto& r : rows) e.row(r);
    });

    // ingest
    auto* in = app.add_subcommand("ingest", "Fetch number-field records into the cache");
    int in_degree = 4;
    std::string in_galois = "4T3", in_url, in_import;
    uint64_t in_min = 1, in_max = 100000;
    double in_interval = 1.0;
    int in_retries = 3;
    in->add_option("--degree", in_degree, "Field degree");
    in->add_option("--galois", in_galois, "Galois group label");
    in->add_option("--disc-min", in_min, "Smallest |disc|");
    in->add_option("--disc-max", in_max, "Largest |disc|");
    in->add_option("--base-url", in_url, "Remote API host");
    in->add_option("--min-interval", in_interval, "Seconds between requests");
    in->add_option("--retries", in_retries, "Attempts per page");
    in->add_option("--import", in_import, "Read records from a JSONL file instead of the network");
    in->callback([&] {
        Handle<cl3_cache, cl3_cache_free> c;
        if ((status = cl3_cache_open(cache_path.c_str(), &c.p))) return;
        size_t added = 0, errors = 0, size = 0;
        if (!in_import.empty()) {
            status = cl3_cache_import(c.p, in_import.c_str(), &added, &errors);
        } else {
            cl3_fetch_config cfg{in_url.empty() ? nullptr : in_url.c_str(), network ? 1 : 0, in_interval, in_retries};
            status = cl3_ingest(c.p, in_degree, in_galois.c_str(), in_min, in_max, &cfg, &added, &errors);
        }
        cl3_cache_size(c.p, &size);
        Emitter e(format_of(format_name), {"cache", "added", "errors", "records", "status"});
        e.row({text(cache_path), num(static_cast<uint64_t>(added)), num(static_cast<uint64_t>(errors)),
               num(static_cast<uint64_t>(size)), text(cl3_status_name(status))});
    });

    // compare
    auto* cm = app.add_subcommand("compare", "Empirical h3 averages of cached D4 fields against predictions");
    std::string cm_grouping = "signature";
    std::vector<uint64_t> cm_grid;
    uint64_t cm_bound = 100000;
    bool cm_density = false;
    cm->add_option("--grouping", cm_grouping, "signature or unit-rank")
        ->check(CLI::IsMember({"signature", "unit-rank"}));
    cm->add_option("--bound", cm_bound, "Largest |disc|");
    cm->add_option("--grid", cm_grid, "Explicit grid of X values")->delimiter(',');
    cm->add_flag("--check-density", cm_density, "Flag rows whose counts miss the expected density");
    cm->callback([&] {
        Handle<cl3_cache, cl3_cache_free> c;
        if ((status = cl3_cache_open(cache_path.c_str(), &c.p))) return;
        std::vector<uint64_t> grid = parse_grid(cm_grid, cm_bound);
        size_t len = 0;
        std::vector<cl3_average_row> rows(grid.size() * 8);
        if ((status = cl3_compare(c.p, cm_grouping == "signature" ? 0 : 1, grid.data(), grid.size(), cm_density,
                                  rows.data(), rows.size(), &len)))
            return;
        Emitter e(format_of(format_name), {"group", "u", "X", "count", "mean_h3", "mean_h3_rel", "relative", "full", "expected",
                        "incomplete"});
        for (size_t i = 0; i < len; ++i) {
            const auto& r = rows[i];
            e.row({text(r.group), num(r.u), num(r.X), num(r.count), num(r.mean_h3), num(r.mean_h3_rel),
                   ratio(r.relative_num, r.relative_den),
                   r.has_cm_full ? ratio(r.cm_full_num, r.cm_full_den) : text(""),
                   cm_density ? num(r.expected_count) : text(""), flag(r.incomplete)});
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return CL3_ERR_INVALID_ARGUMENT;
    }
    return report(status);
}
