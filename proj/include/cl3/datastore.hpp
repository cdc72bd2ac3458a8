#ifndef CL3_DATASTORE_HPP
#define CL3_DATASTORE_HPP

// Number-field records from an LMFDB-style HTTP API, a line-delimited JSON
// cache, and empirical 3-torsion averages over D4 quartic families.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cl3/arith.hpp"
#include "cl3/rational.hpp"

namespace cl3 {

struct FieldRecord {
    std::string label;
    int degree = 0;
    i64 disc = 0;
    std::string galois_label;
    std::vector<i64> class_group;  // elementary divisors
    int r1 = 0, r2 = 0;
    std::vector<i64> subfield_discs;  // quadratic subfields

    i64 class_number() const;
    /// |Cl[3]|
    i64 h3() const;
    bool is_d4() const { return degree == 4 && galois_label == "4T3"; }

    friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

/// One JSON object, no trailing newline. Fields: label, degree, disc_abs,
/// disc_sign, r1, r2, galois_label, class_group, subfield_discs.
std::string serialize(const FieldRecord& r);
/// Accepts the serialized form and the remote schema (r1 may be omitted;
/// "disc" may replace disc_abs/disc_sign). Throws ParseError naming the label.
FieldRecord parse_record(const std::string& json);

struct RecordParseError {
    std::string label;
    std::string message;
};

/// A response body {"data": [...], "next": token}. Bad records are reported,
/// not thrown; a malformed envelope throws ParseError.
struct Page {
    std::vector<FieldRecord> records;
    std::vector<RecordParseError> errors;
    std::string next_token;  // empty on the last page
};
Page parse_page(const std::string& body);

struct FetchQuery {
    int degree = 4;
    std::string galois_label = "4T3";
    u64 disc_min = 1;  // on |disc|
    u64 disc_max = 100000;
    std::string page_token;
    int page_size = 100;
};

/// Append-only cache: a schema header line, then one record per line.
class FieldCache {
public:
    static constexpr const char* kSchema = "cl3-field-cache";
    static constexpr int kVersion = 1;

    /// Creates the file with a header if missing. Throws DataIntegrity on a
    /// foreign or newer header and IoError if the file cannot be opened.
    explicit FieldCache(std::string path);

    const std::string& path() const { return path_; }
    const std::vector<FieldRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    /// Lines of the file that failed to parse on load.
    const std::vector<RecordParseError>& load_errors() const { return load_errors_; }
    bool contains(const std::string& label) const { return labels_.count(label) > 0; }

    /// Appends records whose label is not cached yet; returns how many were added.
    std::size_t append(const std::vector<FieldRecord>& records);
    std::vector<FieldRecord> select(const FetchQuery& q) const;

private:
    std::string path_;
    std::vector<FieldRecord> records_;
    std::map<std::string, std::size_t> labels_;
    std::vector<RecordParseError> load_errors_;
};

struct DatastoreConfig {
    /// Scheme, host and optional port, e.g. "https://www.lmfdb.org".
    std::string base_url = "https://www.lmfdb.org";
    std::string api_path = "/api/nf_fields/";
    bool network = false;
    double min_interval_seconds = 1.0;
    int retries = 3;
    int timeout_seconds = 30;
};

struct FetchResult {
    std::vector<FieldRecord> records;
    std::vector<RecordParseError> errors;
    std::string next_token;
    std::size_t added = 0;
    /// Served from the cache because the network is off or failed.
    bool degraded = false;
    std::string diagnostic;
};

/// One page from the remote API, appended to the cache. With the network
/// off, or after the retries fail, serves the matching cached records.
FetchResult fetch(const FetchQuery& q, const DatastoreConfig& config, FieldCache& cache);

/// Follows next tokens until the last page; stops at the first degraded page.
FetchResult fetch_all(FetchQuery q, const DatastoreConfig& config, FieldCache& cache);

enum class Grouping { Signature, UnitRank };

/// D4 signature class of a record: "()", "(24)", "(13)(24)" or "(12)(34)".
std::string d4_signature_of(const FieldRecord& r);

struct GroupPrediction {
    std::string group;
    int u = 0;
    Rational relative;              // 1 + 3^{-u}, average of h3(K/F)
    std::optional<Rational> cm_full;  // Cohen-Martinet average of h3(K)
    std::optional<double> proven;     // proven average of h3(K), when supplied
};

struct AverageRow {
    std::string group;
    u64 X = 0;
    u64 count = 0;
    double avg_h3 = 0.0;      // h3(K)
    double avg_h3_rel = 0.0;  // h3(K/F) = h3(K) / h3(F)
    double expected_count = 0.0;
    bool incomplete = false;
};

struct AverageReport {
    Grouping grouping = Grouping::Signature;
    std::vector<u64> grid;
    std::vector<GroupPrediction> groups;
    std::vector<AverageRow> rows;  // by group, then X
    std::vector<std::string> skipped;  // labels of non-D4 records
};

struct AverageOptions {
    /// Expected number of records per unit X for each group; rows whose
    /// count is off by more than 5% are flagged incomplete.
    std::map<std::string, double> density;
    std::map<std::string, double> proven;
};

/// Throws DataIntegrity if h3(F) does not divide h3(K) or the quadratic
/// subfield is not a fundamental discriminant.
AverageReport empirical_average(const std::vector<FieldRecord>& records, Grouping grouping,
                                const std::vector<u64>& grid, const AverageOptions& options = {});

}  // namespace cl3

#endif
