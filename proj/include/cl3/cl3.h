#ifndef CL3_H
#define CL3_H

/* C interface to libcl3: 3-torsion in class groups, cubic rings, wreath
 * products and the limiting constants. Every function returns a cl3_status;
 * on failure cl3_last_error() describes the problem for the calling thread.
 * Objects are opaque handles released with the matching _free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CL3_API __declspec(dllexport)
#else
#define CL3_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    CL3_OK = 0,
    CL3_ERR_INVALID_ARGUMENT = 1,
    CL3_ERR_INVALID_DISCRIMINANT = 2,
    CL3_ERR_PRECISION = 3,
    CL3_ERR_UNKNOWN_GROUP = 4,
    CL3_ERR_UNSUPPORTED = 5,
    CL3_ERR_NETWORK_DISABLED = 6,
    CL3_ERR_NETWORK_FAILURE = 7,
    CL3_ERR_PARSE = 8,
    CL3_ERR_DATA_INTEGRITY = 9,
    CL3_ERR_IO = 10,
    CL3_ERR_SEARCH_BOX = 11,
    CL3_ERR_BUFFER_TOO_SMALL = 12,
    CL3_ERR_INTERNAL = 99
} cl3_status;

CL3_API const char* cl3_version(void);
CL3_API const char* cl3_status_name(int status);
/* Message of the last failure on this thread; empty after a success. */
CL3_API const char* cl3_last_error(void);

/* ---- quadratic fields ---- */

typedef struct cl3_quadfield cl3_quadfield;

typedef struct {
    int64_t disc;
    int64_t h;
    int64_t h3;
    int r1, r2, w;
    double regulator_lower, regulator_upper; /* 0 for imaginary fields */
    size_t n_invariants;
} cl3_quadfield_info;

CL3_API int cl3_quadfield_new(int64_t d, cl3_quadfield** out);
CL3_API void cl3_quadfield_free(cl3_quadfield* f);
CL3_API int cl3_quadfield_get_info(const cl3_quadfield* f, cl3_quadfield_info* out);
/* Class group invariants, each dividing the next. */
CL3_API int cl3_quadfield_invariants(const cl3_quadfield* f, int64_t* buf, size_t cap, size_t* len);
CL3_API int cl3_quadfield_l_at_1(const cl3_quadfield* f, double* lower, double* upper);

typedef struct {
    uint64_t X;
    uint64_t fields;
    double mean_h3;
} cl3_h3_average_row;

/* Running mean of h3 over fundamental d with 0 < sign*d <= grid[i]. The
 * grid must be increasing; grid[n-1] is the bound. Imaginary fields use
 * class groups of forms, real fields count cubic fields. */
CL3_API int cl3_h3_average(int sign, const uint64_t* grid, size_t n, int jobs, cl3_h3_average_row* rows);

/* ---- binary cubic forms ---- */

typedef struct {
    int64_t a, b, c, d;
    int64_t disc;
    int aut;
    int maximal;
    int irreducible;
} cl3_cubic_record;

/* Return nonzero to stop the enumeration early. */
typedef int (*cl3_cubic_callback)(const cl3_cubic_record* record, void* user);

/* Every GL2(Z) class with 0 < sign*disc <= bound, by |disc| then form. */
CL3_API int cl3_enumerate_cubic(uint64_t bound, int sign, int jobs, cl3_cubic_callback cb, void* user);
CL3_API int cl3_count_cubic_fields(uint64_t bound, int sign, int jobs, uint64_t* s3, uint64_t* c3);
/* Sum of 1/|Aut| over classes, as a certified interval. */
CL3_API int cl3_weighted_ring_count(uint64_t bound, int sign, int jobs, double* lower, double* upper);
/* Residues of the Shintani zeta function at s = 1 and s = 5/6. */
CL3_API int cl3_shintani_residues(int sign, double* primary, double* secondary);

/* ---- cubic algebras and orders ---- */

typedef struct cl3_cubic_algebra cl3_cubic_algebra;

/* The algebra of a maximal form; (0,1,-1,0) gives Z^3. */
CL3_API int cl3_cubic_algebra_new(int64_t a, int64_t b, int64_t c, int64_t d, cl3_cubic_algebra** out);
/* The first maximal irreducible form of discriminant disc, if any. */
CL3_API int cl3_cubic_algebra_of_disc(int64_t disc, cl3_cubic_algebra** out);
CL3_API void cl3_cubic_algebra_free(cl3_cubic_algebra* A);
CL3_API int cl3_cubic_algebra_form(const cl3_cubic_algebra* A, int64_t form[4]);
/* Number of subrings of index m, from the Euler product. */
CL3_API int cl3_dw_coefficient(const cl3_cubic_algebra* A, uint64_t m, int64_t* value);
/* Number of subrings of index m, by lattice enumeration. */
CL3_API int cl3_brute_subrings(const cl3_cubic_algebra* A, uint64_t m, int64_t* value);

typedef struct {
    uint64_t n;
    int64_t lhs_num, lhs_den;
    int64_t rhs_num, rhs_den;
    int64_t rings;
    int equal;
} cl3_resolvent_row;

/* Both sides of the resolvent series of Q(sqrt disc), coefficients
 * n = 1..depth (depth <= 3). */
CL3_API int cl3_resolvent_check(int64_t disc, int depth, cl3_resolvent_row* rows, size_t cap, size_t* len,
                                int64_t* h3);

/* ---- permutation groups ---- */

typedef struct cl3_group cl3_group;

/* "C1", "C2", "C4", "V4", "D4", "S3", "C2wrC2wrC2", "C8", "Q8". */
CL3_API int cl3_group_from_label(const char* label, cl3_group** out);
/* Generators in cycle notation separated by ';', e.g. "(1234);(24)". */
CL3_API int cl3_group_from_generators(int degree, const char* generators, cl3_group** out);
CL3_API void cl3_group_free(cl3_group* g);
CL3_API int cl3_group_degree(const cl3_group* g, int* degree);
CL3_API int cl3_group_order(const cl3_group* g, uint64_t* order);
CL3_API int cl3_group_wreath(const cl3_group* H, cl3_group** out);
CL3_API int cl3_group_recover_h(const cl3_group* G, cl3_group** out);
CL3_API int cl3_aut_ratio(const cl3_group* H, uint64_t* value, int* brute_force);

typedef struct {
    int u_rel;
    uint64_t m_sigma;
    int64_t cm_relative_num, cm_relative_den;
    int has_cm_full;
    int64_t cm_full_num, cm_full_den;
    int r1_F, r2_F;
} cl3_prediction;

/* sigma: one class per real place of the base, separated by ';'. */
CL3_API int cl3_predict(const cl3_group* G, const char* sigma, cl3_prediction* out);

/* ---- limiting constants ---- */

typedef struct cl3_weight_table cl3_weight_table;

typedef struct {
    double lower, upper, point;
    double tail_bound;
    uint64_t truncation;
    int flagged;
} cl3_constant_estimate;

CL3_API int cl3_weight_table_new(uint64_t bound, int jobs, cl3_weight_table** out);
CL3_API void cl3_weight_table_free(cl3_weight_table* t);
/* target: "C_m", "C_D4_sigma", "C_D4", "D_m", "D_D4_sigma", "D_D4";
 * sigma is a D4 class for the _sigma targets, otherwise NULL. */
CL3_API int cl3_eval_constant(const cl3_weight_table* t, const char* target, const char* sigma, uint64_t truncation,
                              cl3_constant_estimate* out);

/* ---- field tables ---- */

typedef struct cl3_cache cl3_cache;

typedef struct {
    const char* base_url; /* NULL for the default */
    int network;
    double min_interval_seconds;
    int retries;
} cl3_fetch_config;

CL3_API int cl3_cache_open(const char* path, cl3_cache** out);
CL3_API void cl3_cache_free(cl3_cache* c);
CL3_API int cl3_cache_size(const cl3_cache* c, size_t* size);
/* Appends records from a JSONL file (remote schema, one object per line). */
CL3_API int cl3_cache_import(cl3_cache* c, const char* jsonl_path, size_t* added, size_t* errors);
/* Fetches every page for the query into the cache. Fails with
 * CL3_ERR_NETWORK_DISABLED when config->network is 0 and with
 * CL3_ERR_NETWORK_FAILURE when the remote is unreachable. */
CL3_API int cl3_ingest(cl3_cache* c, int degree, const char* galois_label, uint64_t disc_min, uint64_t disc_max,
                       const cl3_fetch_config* config, size_t* added, size_t* errors);

typedef struct {
    char group[16];
    int u;
    uint64_t X;
    uint64_t count;
    double mean_h3;
    double mean_h3_rel;
    double expected_count;
    int incomplete;
    int64_t relative_num, relative_den;
    int has_cm_full;
    int64_t cm_full_num, cm_full_den;
} cl3_average_row;

/* grouping: 0 by D4 signature, 1 by relative unit rank. With
 * check_density, rows are flagged when the count is more than 5% off the
 * expected density D_{D4,sigma}/8, evaluated at truncation 10^5. */
CL3_API int cl3_compare(const cl3_cache* c, int grouping, const uint64_t* grid, size_t n, int check_density,
                        cl3_average_row* rows, size_t cap, size_t* len);

#ifdef __cplusplus
}
#endif

#endif
