#include "cl3/datastore.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <thread>

#include "cl3/error.hpp"
#include "cl3/quadfield.hpp"
#include "cl3/wreath.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cl3 {

using nlohmann::json;

i64 FieldRecord::class_number() const {
    i64 h = 1;
    for (i64 c : class_group) h *= c;
    return h;
}

i64 FieldRecord::h3() const {
    i64 h = 1;
    for (i64 c : class_group)
        if (c % 3 == 0) h *= 3;
    return h;
}

namespace {

json to_json(const FieldRecord& r) {
    return json{{"label", r.label},
                {"degree", r.degree},
                {"disc_abs", r.disc < 0 ? -r.disc : r.disc},
                {"disc_sign", r.disc < 0 ? -1 : 1},
                {"r1", r.r1},
                {"r2", r.r2},
                {"galois_label", r.galois_label},
                {"class_group", r.class_group},
                {"subfield_discs", r.subfield_discs}};
}

FieldRecord from_json(const json& j) {
    FieldRecord r;
    if (!j.is_object()) fail(ErrorCode::ParseError, "record is not a JSON object");
    r.label = j.value("label", std::string());
    auto bad = [&](const std::string& what) { fail(ErrorCode::ParseError, "record '" + r.label + "': " + what); };
    try {
        if (r.label.empty()) bad("missing label");
        r.degree = j.at("degree").get<int>();
        if (j.contains("disc")) {
            r.disc = j.at("disc").get<i64>();
        } else {
            i64 a = j.at("disc_abs").get<i64>();
            int s = j.at("disc_sign").get<int>();
            if (a <= 0 || (s != 1 && s != -1)) bad("bad discriminant");
            r.disc = s * a;
        }
        r.r2 = j.at("r2").get<int>();
        r.r1 = j.contains("r1") ? j.at("r1").get<int>() : r.degree - 2 * r.r2;
        r.galois_label = j.at("galois_label").get<std::string>();
        r.class_group = j.at("class_group").get<std::vector<i64>>();
        if (j.contains("subfield_discs")) r.subfield_discs = j.at("subfield_discs").get<std::vector<i64>>();
    } catch (const json::exception& e) {
        bad(e.what());
    }
    if (r.degree < 1) bad("degree must be positive");
    if (r.r1 < 0 || r.r2 < 0 || r.r1 + 2 * r.r2 != r.degree) bad("r1 + 2 r2 != degree");
    for (i64 c : r.class_group)
        if (c < 1) bad("class group divisors must be positive");
    if (r.is_d4() && r.subfield_discs.size() != 1) bad("a D4 record needs exactly one quadratic subfield");
    // sign of disc is (-1)^{r2}
    if ((r.disc < 0) != (r.r2 % 2 == 1)) bad("discriminant sign disagrees with r2");
    return r;
}

std::string token_from(const json& next) {
    if (next.is_null()) return "";
    if (next.is_number_integer()) return std::to_string(next.get<i64>());
    if (!next.is_string()) fail(ErrorCode::ParseError, "page: 'next' must be a string or integer");
    std::string s = next.get<std::string>();
    auto pos = s.find("_offset=");
    if (pos == std::string::npos) return s;
    pos += 8;
    auto end = s.find('&', pos);
    return s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

bool matches(const FieldRecord& r, const FetchQuery& q) {
    u64 a = static_cast<u64>(r.disc < 0 ? -r.disc : r.disc);
    return r.degree == q.degree && r.galois_label == q.galois_label && a >= q.disc_min && a <= q.disc_max;
}

}  // namespace

std::string serialize(const FieldRecord& r) { return to_json(r).dump(); }

FieldRecord parse_record(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::ParseError, "record is not valid JSON");
    return from_json(j);
}

Page parse_page(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("data") || !j["data"].is_array())
        fail(ErrorCode::ParseError, "response is not a {\"data\": [...]} page");
    Page p;
    for (const auto& item : j["data"]) {
        try {
            p.records.push_back(from_json(item));
        } catch (const Error& e) {
            std::string label = item.is_object() ? item.value("label", std::string()) : std::string();
            p.errors.push_back({label, e.what()});
        }
    }
    if (j.contains("next")) p.next_token = token_from(j["next"]);
    return p;
}

FieldCache::FieldCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) {
        std::ofstream out(path_);
        if (!out) fail(ErrorCode::IoError, "cannot create cache " + path_);
        out << json{{"schema", kSchema}, {"version", kVersion}}.dump() << '\n';
        return;
    }
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::DataIntegrity, "cache " + path_ + " has no header");
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object() || header.value("schema", "") != kSchema)
        fail(ErrorCode::DataIntegrity, "cache " + path_ + " has a foreign header");
    if (header.value("version", 0) > kVersion)
        fail(ErrorCode::DataIntegrity, "cache " + path_ + " was written by a newer schema version");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            FieldRecord r = parse_record(line);
            if (labels_.count(r.label)) continue;
            labels_[r.label] = records_.size();
            records_.push_back(std::move(r));
        } catch (const Error& e) {
            load_errors_.push_back({"", e.what()});
        }
    }
}

std::size_t FieldCache::append(const std::vector<FieldRecord>& records) {
    std::ofstream out(path_, std::ios::app);
    if (!out) fail(ErrorCode::IoError, "cannot append to cache " + path_);
    std::size_t added = 0;
    for (const auto& r : records) {
        if (labels_.count(r.label)) continue;
        out << serialize(r) << '\n';
        labels_[r.label] = records_.size();
        records_.push_back(r);
        ++added;
    }
    out.flush();
    if (!out) fail(ErrorCode::IoError, "write to cache " + path_ + " failed");
    return added;
}

std::vector<FieldRecord> FieldCache::select(const FetchQuery& q) const {
    std::vector<FieldRecord> out;
    for (const auto& r : records_)
        if (matches(r, q)) out.push_back(r);
    return out;
}

FetchResult fetch(const FetchQuery& q, const DatastoreConfig& config, FieldCache& cache) {
    FetchResult result;
    auto degrade = [&](const std::string& why) {
        result.records = cache.select(q);
        result.degraded = true;
        result.diagnostic = why + "; served " + std::to_string(result.records.size()) + " cached records";
        return result;
    };
    if (!config.network) return degrade("network disabled");

    std::string target = config.api_path + "?degree=i" + std::to_string(q.degree) + "&galois_label=" + q.galois_label +
                         "&disc_abs=i" + std::to_string(q.disc_min) + "-" + std::to_string(q.disc_max) +
                         "&_format=json&_limit=" + std::to_string(q.page_size);
    if (!q.page_token.empty()) target += "&_offset=" + q.page_token;

    // One process-wide clock for the rate limit.
    static std::mutex mu;
    static std::chrono::steady_clock::time_point last{};
    std::string last_error;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto wait = std::chrono::duration<double>(config.min_interval_seconds) -
                        (std::chrono::steady_clock::now() - last);
            if (last.time_since_epoch().count() != 0 && wait.count() > 0) std::this_thread::sleep_for(wait);
            last = std::chrono::steady_clock::now();
        }
        try {
            httplib::Client client(config.base_url);
            client.set_connection_timeout(config.timeout_seconds, 0);
            client.set_read_timeout(config.timeout_seconds, 0);
            auto res = client.Get(target);
            if (!res) {
                last_error = "request failed: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            Page page = parse_page(res->body);
            result.records = std::move(page.records);
            result.errors = std::move(page.errors);
            result.next_token = page.next_token;
            result.added = cache.append(result.records);
            return result;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::IoError) throw;
            last_error = e.what();
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    return degrade("network failure (" + last_error + ")");
}

FetchResult fetch_all(FetchQuery q, const DatastoreConfig& config, FieldCache& cache) {
    FetchResult total;
    for (int pages = 0; pages < 100000; ++pages) {
        FetchResult r = fetch(q, config, cache);
        if (r.degraded) {
            r.added = total.added;
            r.errors.insert(r.errors.begin(), total.errors.begin(), total.errors.end());
            return r;
        }
        total.records.insert(total.records.end(), r.records.begin(), r.records.end());
        total.errors.insert(total.errors.end(), r.errors.begin(), r.errors.end());
        total.added += r.added;
        if (r.next_token.empty() || r.next_token == q.page_token) break;
        q.page_token = r.next_token;
    }
    return total;
}

std::string d4_signature_of(const FieldRecord& r) {
    if (!r.is_d4()) fail(ErrorCode::InvalidArgument, "record " + r.label + " is not a D4 quartic field");
    if (r.r1 == 4) return "()";
    if (r.r1 == 2) return "(24)";
    return r.subfield_discs.at(0) > 0 ? "(13)(24)" : "(12)(34)";
}

AverageReport empirical_average(const std::vector<FieldRecord>& records, Grouping grouping,
                                const std::vector<u64>& grid, const AverageOptions& options) {
    AverageReport report;
    report.grouping = grouping;
    report.grid = grid;
    std::sort(report.grid.begin(), report.grid.end());
    report.grid.erase(std::unique(report.grid.begin(), report.grid.end()), report.grid.end());

    PermGroup g = d4();
    std::map<i64, i64> h3_quadratic;
    struct Entry {
        u64 abs_disc;
        i64 h3;
        i64 h3_rel;
    };
    std::map<std::string, std::vector<Entry>> by_group;
    std::map<std::string, GroupPrediction> predictions;
    for (const auto& r : records) {
        if (!r.is_d4()) {
            report.skipped.push_back(r.label);
            continue;
        }
        i64 dF = r.subfield_discs.at(0);
        auto it = h3_quadratic.find(dF);
        if (it == h3_quadratic.end()) {
            try {
                it = h3_quadratic.emplace(dF, three_torsion(FundamentalDiscriminant(dF))).first;
            } catch (const Error&) {
                fail(ErrorCode::DataIntegrity,
                     "record " + r.label + ": subfield discriminant " + std::to_string(dF) + " is not fundamental");
            }
        }
        i64 hK = r.h3(), hF = it->second;
        if (hK % hF != 0)
            fail(ErrorCode::DataIntegrity, "record " + r.label + ": h3(F) = " + std::to_string(hF) +
                                               " does not divide h3(K) = " + std::to_string(hK));
        std::string sigma = d4_signature_of(r);
        GroupSignature sig{parse_cycles(sigma, 4)};
        int u = u_of_signature(g, sig);
        std::string key = grouping == Grouping::Signature ? sigma : "u=" + std::to_string(u);
        by_group[key].push_back({static_cast<u64>(r.disc < 0 ? -r.disc : r.disc), hK, hK / hF});
        if (!predictions.count(key)) {
            GroupPrediction p;
            p.group = key;
            p.u = u;
            p.relative = cm_relative_prediction(u);
            if (grouping == Grouping::Signature) p.cm_full = cm_full_prediction(g, sig);
            auto pr = options.proven.find(key);
            if (pr != options.proven.end()) p.proven = pr->second;
            predictions[key] = p;
        }
    }
    for (auto& [key, p] : predictions) report.groups.push_back(p);
    for (auto& [key, entries] : by_group) {
        for (u64 X : report.grid) {
            AverageRow row;
            row.group = key;
            row.X = X;
            i64 sum = 0, sum_rel = 0;
            for (const auto& e : entries)
                if (e.abs_disc <= X) {
                    ++row.count;
                    sum += e.h3;
                    sum_rel += e.h3_rel;
                }
            if (row.count > 0) {
                row.avg_h3 = static_cast<double>(sum) / static_cast<double>(row.count);
                row.avg_h3_rel = static_cast<double>(sum_rel) / static_cast<double>(row.count);
            }
            auto d = options.density.find(key);
            if (d != options.density.end()) {
                row.expected_count = d->second * static_cast<double>(X);
                row.incomplete = std::abs(static_cast<double>(row.count) - row.expected_count) > 0.05 * row.expected_count;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace cl3
