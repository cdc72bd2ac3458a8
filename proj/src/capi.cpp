#include "cl3/cl3.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "cl3/constants.hpp"
#include "cl3/cubicforms.hpp"
#include "cl3/datastore.hpp"
#include "cl3/error.hpp"
#include "cl3/lfunc.hpp"
#include "cl3/orders.hpp"
#include "cl3/quadfield.hpp"
#include "cl3/wreath.hpp"

struct cl3_quadfield {
    cl3::QuadFieldData data;
};

struct cl3_cubic_algebra {
    cl3::CubicAlgebra algebra;
};

struct cl3_group {
    cl3::PermGroup group;
};

struct cl3_weight_table {
    cl3::WeightTable table;
};

struct cl3_cache {
    cl3::FieldCache cache;
};

namespace {

thread_local std::string last_error;

int set_error(int status, const std::string& message) {
    last_error = message;
    return status;
}

template <class F>
int guarded(F&& body) {
    try {
        last_error.clear();
        return body();
    } catch (const cl3::Error& e) {
        return set_error(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(CL3_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(CL3_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(CL3_ERR_INTERNAL, "unknown failure");
    }
}

void require(bool ok, const char* what) {
    if (!ok) cl3::fail(cl3::ErrorCode::InvalidArgument, what);
}

int check_sign(int sign) {
    require(sign == 1 || sign == -1, "sign must be 1 or -1");
    return sign;
}

cl3::EnumerateOptions enum_options(int jobs) {
    cl3::EnumerateOptions o;
    o.jobs = jobs < 1 ? 1 : jobs;
    return o;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

cl3::PermGroup group_of_label(const std::string& label) {
    using cl3::PermGroup;
    if (label == "C1") return PermGroup::trivial(1);
    if (label == "C2") return PermGroup::from_cycles(2, {"(12)"});
    if (label == "C4") return PermGroup::from_cycles(4, {"(1234)"});
    if (label == "V4") return PermGroup::from_cycles(4, {"(12)(34)", "(13)(24)"});
    if (label == "D4") return cl3::d4();
    if (label == "S3") return PermGroup::from_cycles(3, {"(123)", "(12)"});
    if (label == "C2wrC2wrC2") return cl3::wreath_c2(cl3::wreath_c2(PermGroup::from_cycles(2, {"(12)"})));
    if (label == "C8") return PermGroup::from_cycles(8, {"(12345678)"});
    // regular representation on 1, i, j, k, -1, -i, -j, -k
    if (label == "Q8") return PermGroup::from_cycles(8, {"(1256)(3478)", "(1357)(2864)"});
    cl3::fail(cl3::ErrorCode::UnknownGroup, "unknown group label: " + label);
}

std::map<std::string, double> signature_densities() {
    static const std::map<std::string, double> densities = [] {
        cl3::WeightTable t = cl3::WeightTable::build(100000);
        std::map<std::string, double> m;
        for (const auto& s : cl3::d4_signatures())
            m[s] = cl3::eval_constant(cl3::ConstantTarget::DD4Sigma, t, 100000, s).point / 8.0;
        return m;
    }();
    return densities;
}

}  // namespace

extern "C" {

const char* cl3_version(void) { return "1.0.0"; }

const char* cl3_status_name(int status) {
    switch (status) {
        case CL3_OK: return "ok";
        case CL3_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CL3_ERR_INVALID_DISCRIMINANT: return "invalid discriminant";
        case CL3_ERR_PRECISION: return "precision failure";
        case CL3_ERR_UNKNOWN_GROUP: return "unknown group";
        case CL3_ERR_UNSUPPORTED: return "unsupported";
        case CL3_ERR_NETWORK_DISABLED: return "network disabled";
        case CL3_ERR_NETWORK_FAILURE: return "network failure";
        case CL3_ERR_PARSE: return "parse error";
        case CL3_ERR_DATA_INTEGRITY: return "data integrity";
        case CL3_ERR_IO: return "i/o error";
        case CL3_ERR_SEARCH_BOX: return "search box insufficient";
        case CL3_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case CL3_ERR_INTERNAL: return "internal error";
        default: return "unknown status";
    }
}

const char* cl3_last_error(void) { return last_error.c_str(); }

/* quadratic fields */

int cl3_quadfield_new(int64_t d, cl3_quadfield** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new cl3_quadfield{cl3::class_group(cl3::FundamentalDiscriminant(d))};
        return CL3_OK;
    });
}

void cl3_quadfield_free(cl3_quadfield* f) { delete f; }

int cl3_quadfield_get_info(const cl3_quadfield* f, cl3_quadfield_info* out) {
    return guarded([&] {
        require(f && out, "null argument");
        const auto& q = f->data;
        out->disc = q.disc.value();
        out->h = q.h;
        out->h3 = q.h3;
        out->r1 = q.r1;
        out->r2 = q.r2;
        out->w = q.w;
        out->regulator_lower = q.disc.is_real() ? q.regulator.lower() : 0.0;
        out->regulator_upper = q.disc.is_real() ? q.regulator.upper() : 0.0;
        out->n_invariants = q.cl_invariants.size();
        return CL3_OK;
    });
}

int cl3_quadfield_invariants(const cl3_quadfield* f, int64_t* buf, size_t cap, size_t* len) {
    return guarded([&] {
        require(f && len, "null argument");
        const auto& inv = f->data.cl_invariants;
        *len = inv.size();
        if (cap < inv.size()) return set_error(CL3_ERR_BUFFER_TOO_SMALL, "invariant buffer too small");
        require(buf != nullptr || inv.empty(), "null buffer");
        for (size_t i = 0; i < inv.size(); ++i) buf[i] = inv[i];
        return static_cast<int>(CL3_OK);
    });
}

int cl3_quadfield_l_at_1(const cl3_quadfield* f, double* lower, double* upper) {
    return guarded([&] {
        require(f && lower && upper, "null argument");
        cl3::CertifiedReal l = cl3::l_at_1(f->data.disc);
        *lower = l.lower();
        *upper = l.upper();
        return CL3_OK;
    });
}

int cl3_h3_average(int sign, const uint64_t* grid, size_t n, int jobs, cl3_h3_average_row* rows) {
    return guarded([&] {
        check_sign(sign);
        require(grid && rows && n > 0, "empty grid");
        for (size_t i = 0; i < n; ++i) require(grid[i] > 0 && (i == 0 || grid[i] > grid[i - 1]), "grid must increase");
        uint64_t bound = grid[n - 1];
        std::vector<std::pair<uint64_t, int64_t>> values;  // |d|, h3
        if (sign < 0) {
            for (const auto& r : cl3::imaginary_class_table(bound, jobs < 1 ? 1 : jobs))
                values.emplace_back(static_cast<uint64_t>(-r.d), r.h3);
        } else {
            for (const auto& [d, h3] : cl3::h3_table_via_fields(bound, 1, enum_options(jobs)))
                values.emplace_back(static_cast<uint64_t>(d), h3);
            std::sort(values.begin(), values.end());
        }
        size_t k = 0;
        uint64_t count = 0;
        int64_t sum = 0;
        for (size_t i = 0; i < n; ++i) {
            while (k < values.size() && values[k].first <= grid[i]) {
                ++count;
                sum += values[k].second;
                ++k;
            }
            rows[i].X = grid[i];
            rows[i].fields = count;
            rows[i].mean_h3 = count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0;
        }
        return CL3_OK;
    });
}

/* binary cubic forms */

int cl3_enumerate_cubic(uint64_t bound, int sign, int jobs, cl3_cubic_callback cb, void* user) {
    return guarded([&] {
        check_sign(sign);
        require(cb != nullptr, "null callback");
        for (const auto& c : cl3::enumerate(bound, sign, enum_options(jobs))) {
            cl3_cubic_record r{c.form.a, c.form.b, c.form.c, c.form.d, c.disc, c.aut_order, c.maximal ? 1 : 0,
                               c.irreducible ? 1 : 0};
            if (cb(&r, user) != 0) break;
        }
        return CL3_OK;
    });
}

int cl3_count_cubic_fields(uint64_t bound, int sign, int jobs, uint64_t* s3, uint64_t* c3) {
    return guarded([&] {
        check_sign(sign);
        require(s3 && c3, "null argument");
        cl3::FieldCount fc = cl3::count_fields(bound, sign, enum_options(jobs));
        *s3 = fc.s3;
        *c3 = fc.c3;
        return CL3_OK;
    });
}

int cl3_weighted_ring_count(uint64_t bound, int sign, int jobs, double* lower, double* upper) {
    return guarded([&] {
        check_sign(sign);
        require(lower && upper, "null argument");
        cl3::CertifiedReal w = cl3::weighted_ring_count(bound, sign, enum_options(jobs));
        *lower = w.lower();
        *upper = w.upper();
        return CL3_OK;
    });
}

int cl3_shintani_residues(int sign, double* primary, double* secondary) {
    return guarded([&] {
        check_sign(sign);
        require(primary && secondary, "null argument");
        auto r = cl3::shintani_residue(sign > 0 ? cl3::CubicSignature::TotallyReal : cl3::CubicSignature::Mixed);
        *primary = r.primary.mid();
        *secondary = r.secondary.mid();
        return CL3_OK;
    });
}

/* cubic algebras and orders */

int cl3_cubic_algebra_new(int64_t a, int64_t b, int64_t c, int64_t d, cl3_cubic_algebra** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new cl3_cubic_algebra{cl3::CubicAlgebra(cl3::BinaryCubicForm{a, b, c, d})};
        return CL3_OK;
    });
}

int cl3_cubic_algebra_of_disc(int64_t disc, cl3_cubic_algebra** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        require(disc != 0, "zero discriminant");
        uint64_t D = static_cast<uint64_t>(disc < 0 ? -disc : disc);
        for (const auto& c : cl3::enumerate(D, disc < 0 ? -1 : 1)) {
            if (c.disc == disc && c.maximal && c.irreducible) {
                *out = new cl3_cubic_algebra{cl3::CubicAlgebra(c.form)};
                return static_cast<int>(CL3_OK);
            }
        }
        return set_error(CL3_ERR_INVALID_DISCRIMINANT, "no cubic field of discriminant " + std::to_string(disc));
    });
}

void cl3_cubic_algebra_free(cl3_cubic_algebra* A) { delete A; }

int cl3_cubic_algebra_form(const cl3_cubic_algebra* A, int64_t form[4]) {
    return guarded([&] {
        require(A && form, "null argument");
        const auto& f = A->algebra.form();
        form[0] = f.a;
        form[1] = f.b;
        form[2] = f.c;
        form[3] = f.d;
        return CL3_OK;
    });
}

int cl3_dw_coefficient(const cl3_cubic_algebra* A, uint64_t m, int64_t* value) {
    return guarded([&] {
        require(A && value, "null argument");
        require(m >= 1 && m <= 1000000, "index out of range");
        *value = static_cast<int64_t>(cl3::dw_coefficients(A->algebra, m * m).at(m * m));
        return CL3_OK;
    });
}

int cl3_brute_subrings(const cl3_cubic_algebra* A, uint64_t m, int64_t* value) {
    return guarded([&] {
        require(A && value, "null argument");
        require(m >= 1 && m <= 64, "index out of range");
        *value = static_cast<int64_t>(cl3::brute_subrings(cl3::mult_table(A->algebra.form()), m));
        return CL3_OK;
    });
}

int cl3_resolvent_check(int64_t disc, int depth, cl3_resolvent_row* rows, size_t cap, size_t* len, int64_t* h3) {
    return guarded([&] {
        require(len != nullptr, "null argument");
        cl3::ResolventReport r = cl3::resolvent_series_check(cl3::FundamentalDiscriminant(disc), depth);
        *len = r.rows.size();
        if (h3) *h3 = r.h3;
        if (cap < r.rows.size()) return set_error(CL3_ERR_BUFFER_TOO_SMALL, "row buffer too small");
        require(rows != nullptr || r.rows.empty(), "null buffer");
        for (size_t i = 0; i < r.rows.size(); ++i) {
            const auto& s = r.rows[i];
            rows[i] = cl3_resolvent_row{s.n, s.lhs.num, s.lhs.den, s.rhs.num, s.rhs.den,
                                        static_cast<int64_t>(s.rings), s.equal() ? 1 : 0};
        }
        return static_cast<int>(CL3_OK);
    });
}

/* permutation groups */

int cl3_group_from_label(const char* label, cl3_group** out) {
    return guarded([&] {
        require(label && out, "null argument");
        *out = new cl3_group{group_of_label(label)};
        return CL3_OK;
    });
}

int cl3_group_from_generators(int degree, const char* generators, cl3_group** out) {
    return guarded([&] {
        require(generators && out, "null argument");
        require(degree >= 1 && degree <= 16, "degree must be in 1..16");
        *out = new cl3_group{cl3::PermGroup::from_cycles(degree, split(generators, ';'))};
        return CL3_OK;
    });
}

void cl3_group_free(cl3_group* g) { delete g; }

int cl3_group_degree(const cl3_group* g, int* degree) {
    return guarded([&] {
        require(g && degree, "null argument");
        *degree = g->group.degree();
        return CL3_OK;
    });
}

int cl3_group_order(const cl3_group* g, uint64_t* order) {
    return guarded([&] {
        require(g && order, "null argument");
        *order = g->group.order();
        return CL3_OK;
    });
}

int cl3_group_wreath(const cl3_group* H, cl3_group** out) {
    return guarded([&] {
        require(H && out, "null argument");
        *out = new cl3_group{cl3::wreath_c2(H->group)};
        return CL3_OK;
    });
}

int cl3_group_recover_h(const cl3_group* G, cl3_group** out) {
    return guarded([&] {
        require(G && out, "null argument");
        *out = new cl3_group{cl3::recover_H(G->group)};
        return CL3_OK;
    });
}

int cl3_aut_ratio(const cl3_group* H, uint64_t* value, int* brute_force) {
    return guarded([&] {
        require(H && value, "null argument");
        cl3::AutRatio r = cl3::aut_ratio(H->group);
        *value = r.value;
        if (brute_force) *brute_force = r.brute_force ? 1 : 0;
        return CL3_OK;
    });
}

int cl3_predict(const cl3_group* G, const char* sigma, cl3_prediction* out) {
    return guarded([&] {
        require(G && sigma && out, "null argument");
        cl3::GroupSignature sig;
        for (const auto& s : split(sigma, ';')) sig.push_back(cl3::parse_cycles(s, G->group.degree()));
        require(!sig.empty(), "empty signature");
        cl3::PredictionReport r = cl3::predict(G->group, sig);
        out->u_rel = r.u_rel;
        out->m_sigma = r.m_sigma;
        out->cm_relative_num = r.cm_relative.num;
        out->cm_relative_den = r.cm_relative.den;
        out->has_cm_full = r.cm_full ? 1 : 0;
        out->cm_full_num = r.cm_full ? r.cm_full->num : 0;
        out->cm_full_den = r.cm_full ? r.cm_full->den : 1;
        out->r1_F = r.quotient.r1;
        out->r2_F = r.quotient.r2;
        return CL3_OK;
    });
}

/* limiting constants */

int cl3_weight_table_new(uint64_t bound, int jobs, cl3_weight_table** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        require(bound >= 100, "bound must be at least 100");
        *out = new cl3_weight_table{cl3::WeightTable::build(bound, jobs < 1 ? 1 : jobs)};
        return CL3_OK;
    });
}

void cl3_weight_table_free(cl3_weight_table* t) { delete t; }

int cl3_eval_constant(const cl3_weight_table* t, const char* target, const char* sigma, uint64_t truncation,
                      cl3_constant_estimate* out) {
    return guarded([&] {
        require(t && target && out, "null argument");
        cl3::ConstantEstimate e =
            cl3::eval_constant(cl3::parse_target(target), t->table, truncation, sigma ? sigma : "");
        *out = cl3_constant_estimate{e.lower, e.upper, e.point, e.tail_bound, e.truncation, e.flagged ? 1 : 0};
        return CL3_OK;
    });
}

/* field tables */

int cl3_cache_open(const char* path, cl3_cache** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new cl3_cache{cl3::FieldCache(path)};
        return CL3_OK;
    });
}

void cl3_cache_free(cl3_cache* c) { delete c; }

int cl3_cache_size(const cl3_cache* c, size_t* size) {
    return guarded([&] {
        require(c && size, "null argument");
        *size = c->cache.size();
        return CL3_OK;
    });
}

int cl3_cache_import(cl3_cache* c, const char* jsonl_path, size_t* added, size_t* errors) {
    return guarded([&] {
        require(c && jsonl_path, "null argument");
        std::ifstream in(jsonl_path);
        if (!in) cl3::fail(cl3::ErrorCode::IoError, std::string("cannot open ") + jsonl_path);
        std::vector<cl3::FieldRecord> records;
        size_t bad = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (line.find("\"schema\"") != std::string::npos && line.find("\"label\"") == std::string::npos) continue;
            try {
                records.push_back(cl3::parse_record(line));
            } catch (const cl3::Error& e) {
                if (e.code() != cl3::ErrorCode::ParseError) throw;
                ++bad;
            }
        }
        size_t n = c->cache.append(records);
        if (added) *added = n;
        if (errors) *errors = bad;
        return CL3_OK;
    });
}

int cl3_ingest(cl3_cache* c, int degree, const char* galois_label, uint64_t disc_min, uint64_t disc_max,
               const cl3_fetch_config* config, size_t* added, size_t* errors) {
    return guarded([&] {
        require(c && galois_label, "null argument");
        require(disc_min <= disc_max, "empty discriminant range");
        cl3::FetchQuery q;
        q.degree = degree;
        q.galois_label = galois_label;
        q.disc_min = disc_min;
        q.disc_max = disc_max;
        cl3::DatastoreConfig cfg;
        if (config) {
            if (config->base_url) cfg.base_url = config->base_url;
            cfg.network = config->network != 0;
            cfg.min_interval_seconds = config->min_interval_seconds;
            cfg.retries = config->retries;
        }
        if (!cfg.network)
            return set_error(CL3_ERR_NETWORK_DISABLED, "network access is disabled; serving the cache only");
        cl3::FetchResult r = cl3::fetch_all(q, cfg, c->cache);
        if (added) *added = r.added;
        if (errors) *errors = r.errors.size();
        if (r.degraded) return set_error(CL3_ERR_NETWORK_FAILURE, r.diagnostic);
        return static_cast<int>(CL3_OK);
    });
}

int cl3_compare(const cl3_cache* c, int grouping, const uint64_t* grid, size_t n, int check_density,
                cl3_average_row* rows, size_t cap, size_t* len) {
    return guarded([&] {
        require(c && grid && len && n > 0, "null argument");
        require(grouping == 0 || grouping == 1, "grouping must be 0 or 1");
        cl3::Grouping g = grouping == 0 ? cl3::Grouping::Signature : cl3::Grouping::UnitRank;
        cl3::AverageOptions opts;
        if (check_density) {
            for (const auto& [s, d] : signature_densities()) {
                if (g == cl3::Grouping::Signature) {
                    opts.density[s] = d;
                } else {
                    int u = cl3::u_of_signature(cl3::d4(), {cl3::parse_cycles(s, 4)});
                    opts.density["u=" + std::to_string(u)] += d;
                }
            }
        }
        std::vector<uint64_t> gv(grid, grid + n);
        cl3::AverageReport rep = cl3::empirical_average(c->cache.records(), g, gv, opts);
        *len = rep.rows.size();
        if (cap < rep.rows.size()) return set_error(CL3_ERR_BUFFER_TOO_SMALL, "row buffer too small");
        require(rows != nullptr || rep.rows.empty(), "null buffer");
        for (size_t i = 0; i < rep.rows.size(); ++i) {
            const auto& r = rep.rows[i];
            cl3_average_row& o = rows[i];
            std::memset(&o, 0, sizeof o);
            std::strncpy(o.group, r.group.c_str(), sizeof o.group - 1);
            o.X = r.X;
            o.count = r.count;
            o.mean_h3 = r.avg_h3;
            o.mean_h3_rel = r.avg_h3_rel;
            o.expected_count = r.expected_count;
            o.incomplete = r.incomplete ? 1 : 0;
            o.cm_full_den = 1;
            for (const auto& p : rep.groups) {
                if (p.group != r.group) continue;
                o.u = p.u;
                o.relative_num = p.relative.num;
                o.relative_den = p.relative.den;
                o.has_cm_full = p.cm_full ? 1 : 0;
                if (p.cm_full) {
                    o.cm_full_num = p.cm_full->num;
                    o.cm_full_den = p.cm_full->den;
                }
            }
        }
        return static_cast<int>(CL3_OK);
    });
}

}  // extern "C"
