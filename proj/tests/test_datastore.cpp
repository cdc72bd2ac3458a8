#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "cl3/datastore.hpp"
#include "cl3/quadfield.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace cl3;
namespace fs = std::filesystem;

namespace {

const std::string kFixture = std::string(CL3_FIXTURE_DIR) + "/d4_quartic_100000.jsonl";

std::vector<std::string> fixture_lines() {
    std::ifstream in(kFixture);
    REQUIRE(in);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

const std::vector<FieldRecord>& fixture_records() {
    static const std::vector<FieldRecord> records = [] {
        std::vector<FieldRecord> out;
        for (const auto& line : fixture_lines()) out.push_back(parse_record(line));
        return out;
    }();
    return records;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path((fs::temp_directory_path() / name).string()) {
        fs::remove(path);
    }
    ~TempFile() { fs::remove(path); }
};

FieldRecord make(const std::string& label, i64 disc, int r1, std::vector<i64> cg, i64 quad) {
    FieldRecord r;
    r.label = label;
    r.degree = 4;
    r.disc = disc;
    r.galois_label = "4T3";
    r.class_group = std::move(cg);
    r.r1 = r1;
    r.r2 = (4 - r1) / 2;
    r.subfield_discs = {quad};
    return r;
}

// Serves the fixture as pages of `page` records on 127.0.0.1.
class FakeApi {
public:
    explicit FakeApi(int page, int fail_status = 0) {
        server_.Get("/api/nf_fields/", [this, page, fail_status](const httplib::Request& req, httplib::Response& res) {
            ++requests;
            if (fail_status) {
                res.status = fail_status;
                return;
            }
            std::size_t offset = req.has_param("_offset") ? std::stoul(req.get_param_value("_offset")) : 0;
            const auto lines = fixture_lines();
            nlohmann::json body;
            body["data"] = nlohmann::json::array();
            for (std::size_t i = offset; i < std::min(lines.size(), offset + page); ++i)
                body["data"].push_back(nlohmann::json::parse(lines[i]));
            if (offset + page < lines.size())
                body["next"] = "/api/nf_fields/?_offset=" + std::to_string(offset + page);
            else
                body["next"] = nullptr;
            res.set_content(body.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeApi() {
        server_.stop();
        thread_.join();
    }
    DatastoreConfig config() const {
        DatastoreConfig c;
        c.base_url = "http://127.0.0.1:" + std::to_string(port_);
        c.network = true;
        c.min_interval_seconds = 0.0;
        c.retries = 1;
        c.timeout_seconds = 5;
        return c;
    }
    std::atomic<int> requests{0};

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace

TEST_CASE("fixture parses completely") {
    CHECK(fixture_records().size() == fixture_lines().size());
    CHECK(fixture_records().front().label == "4.0.117.1");
    std::set<std::string> labels;
    for (const auto& r : fixture_records()) {
        CHECK(r.is_d4());
        CHECK(r.r1 + 2 * r.r2 == 4);
        labels.insert(r.label);
    }
    CHECK(labels.size() == fixture_records().size());
}

TEST_CASE("3-torsion from elementary divisors") {
    CHECK(make("a", 117, 0, {}, -3).h3() == 1);
    CHECK(make("a", 117, 0, {3}, -3).h3() == 3);
    CHECK(make("a", 117, 0, {6, 3}, -3).h3() == 9);
    CHECK(make("a", 117, 0, {9}, -3).h3() == 3);
    CHECK(make("a", 117, 0, {2, 4}, -3).h3() == 1);
    CHECK(make("a", 117, 0, {6, 3}, -3).class_number() == 18);
}

TEST_CASE("serialize and parse are inverse") {
    for (const auto& r : fixture_records()) REQUIRE(parse_record(serialize(r)) == r);
    FieldRecord neg = make("4.2.1025.1", -1025, 2, {2}, 5);
    CHECK(parse_record(serialize(neg)) == neg);
}

TEST_CASE("record validation names the label") {
    auto expect_error = [](const std::string& text, const std::string& label) {
        try {
            parse_record(text);
            FAIL("accepted " << text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(std::string(e.what()).find(label) != std::string::npos);
        }
    };
    expect_error(R"({"label":"x1","degree":4,"disc_abs":117,"disc_sign":1,"r2":2,"galois_label":"4T3"})", "x1");
    expect_error(R"({"label":"x2","degree":4,"disc_abs":117,"disc_sign":1,"r2":1,"galois_label":"4T3","class_group":[],"subfield_discs":[-3]})", "x2");
    expect_error(R"({"label":"x3","degree":4,"disc_abs":117,"disc_sign":1,"r2":2,"galois_label":"4T3","class_group":[],"subfield_discs":[]})", "x3");
    expect_error(R"({"label":"x4","degree":4,"disc_abs":117,"disc_sign":1,"r2":2,"galois_label":"4T3","class_group":"3","subfield_discs":[-3]})", "x4");
    CHECK_THROWS_AS(parse_record("not json"), Error);
    // remote rows may omit r1 and give a signed disc
    FieldRecord r = parse_record(R"({"label":"4.0.117.1","degree":4,"disc":117,"r2":2,"galois_label":"4T3","class_group":[],"subfield_discs":[-3]})");
    CHECK(r.r1 == 0);
    CHECK(r.disc == 117);
}

TEST_CASE("pages report bad records without failing") {
    std::string body = R"({"data":[
        {"label":"4.0.117.1","degree":4,"disc_abs":117,"disc_sign":1,"r2":2,"galois_label":"4T3","class_group":[],"subfield_discs":[-3]},
        {"label":"drift.1","degree":4,"discriminant":117,"r2":2},
        {"label":"drift.2","degree":"four"}
    ],"next":"/api/nf_fields/?degree=i4&_offset=300"})";
    Page p = parse_page(body);
    CHECK(p.records.size() == 1);
    REQUIRE(p.errors.size() == 2);
    CHECK(p.errors[0].label == "drift.1");
    CHECK(p.errors[1].label == "drift.2");
    CHECK(p.next_token == "300");
    CHECK(parse_page(R"({"data":[],"next":null})").next_token.empty());
    CHECK_THROWS_AS(parse_page(R"({"rows":[]})"), Error);
    CHECK_THROWS_AS(parse_page("<html>"), Error);
}

TEST_CASE("cache appends each label once") {
    TempFile tmp("cl3_cache_test.jsonl");
    {
        FieldCache cache(tmp.path);
        CHECK(cache.size() == 0);
        CHECK(cache.append(fixture_records()) == fixture_records().size());
        CHECK(cache.append(fixture_records()) == 0);
        CHECK(cache.size() == fixture_records().size());
    }
    FieldCache again(tmp.path);
    CHECK(again.size() == fixture_records().size());
    CHECK(again.records() == fixture_records());
    CHECK(again.load_errors().empty());
    FetchQuery q;
    q.disc_max = 1000;
    for (const auto& r : again.select(q)) CHECK(std::llabs(r.disc) <= 1000);
    CHECK(!again.select(q).empty());
}

TEST_CASE("cache rejects foreign headers and skips bad lines") {
    TempFile tmp("cl3_cache_bad.jsonl");
    {
        std::ofstream out(tmp.path);
        out << R"({"schema":"something-else","version":1})" << '\n';
    }
    CHECK_THROWS_AS(FieldCache(tmp.path), Error);
    {
        std::ofstream out(tmp.path);
        out << R"({"schema":"cl3-field-cache","version":1})" << '\n';
        out << serialize(fixture_records()[0]) << '\n';
        out << "{truncated" << '\n';
        out << serialize(fixture_records()[1]) << '\n';
    }
    FieldCache cache(tmp.path);
    CHECK(cache.size() == 2);
    CHECK(cache.load_errors().size() == 1);
    {
        std::ofstream out(tmp.path);
        out << R"({"schema":"cl3-field-cache","version":99})" << '\n';
    }
    CHECK_THROWS_AS(FieldCache(tmp.path), Error);
}

TEST_CASE("network is off by default and fetch serves the cache") {
    CHECK(!DatastoreConfig{}.network);
    TempFile tmp("cl3_cache_offline.jsonl");
    FieldCache cache(tmp.path);
    cache.append(fixture_records());
    FetchQuery q;
    q.disc_max = 5000;
    FetchResult r = fetch(q, DatastoreConfig{}, cache);
    CHECK(r.degraded);
    CHECK(r.diagnostic.find("network disabled") != std::string::npos);
    CHECK(r.records == cache.select(q));
    CHECK(r.added == 0);
}

TEST_CASE("paged fetch from a loopback server is idempotent") {
    FakeApi api(500);
    TempFile tmp("cl3_cache_fetch.jsonl");
    FieldCache cache(tmp.path);
    FetchResult first = fetch_all(FetchQuery{}, api.config(), cache);
    CHECK(!first.degraded);
    CHECK(first.records.size() == fixture_records().size());
    CHECK(first.added == fixture_records().size());
    CHECK(api.requests == static_cast<int>((fixture_records().size() + 499) / 500));
    FetchResult second = fetch_all(FetchQuery{}, api.config(), cache);
    CHECK(second.added == 0);
    CHECK(cache.size() == fixture_records().size());
}

TEST_CASE("server errors degrade to the cache") {
    FakeApi api(100, 503);
    TempFile tmp("cl3_cache_503.jsonl");
    FieldCache cache(tmp.path);
    cache.append({fixture_records()[0]});
    FetchResult r = fetch(FetchQuery{}, api.config(), cache);
    CHECK(r.degraded);
    CHECK(r.diagnostic.find("503") != std::string::npos);
    CHECK(r.records.size() == 1);
    CHECK(api.requests == 2);
}

TEST_CASE("cached D4 records satisfy the subfield invariants") {
    std::map<i64, i64> h3F;
    for (const auto& r : fixture_records()) {
        i64 d = r.subfield_discs.at(0);
        CHECK_NOTHROW(FundamentalDiscriminant{d});
        if (!h3F.count(d)) h3F[d] = three_torsion(FundamentalDiscriminant(d));
        CHECK(r.h3() % h3F[d] == 0);
        CHECK(r.disc % (d * d) == 0);
    }
}

TEST_CASE("empirical averages") {
    std::vector<u64> grid{1000, 10000, 100000};
    AverageReport rep = empirical_average(fixture_records(), Grouping::Signature, grid);
    REQUIRE(rep.groups.size() == 4);
    REQUIRE(rep.rows.size() == 12);
    CHECK(rep.skipped.empty());
    // the four signatures partition the records
    u64 total = 0;
    for (const auto& row : rep.rows)
        if (row.X == 100000) total += row.count;
    CHECK(total == fixture_records().size());
    for (const auto& g : rep.groups) {
        CHECK(g.relative == Rational(1) + Rational::power(3, -g.u));
        REQUIRE(g.cm_full.has_value());
    }
    for (const auto& row : rep.rows) {
        if (row.group == "(13)(24)") {
            auto it = std::find_if(rep.groups.begin(), rep.groups.end(), [](const GroupPrediction& g) { return g.group == "(13)(24)"; });
            CHECK(it->u == 0);
            CHECK(it->relative == Rational(2));
        }
        if (row.count == 0) continue;
        CHECK(row.avg_h3_rel >= 1.0);
        CHECK(row.avg_h3 >= row.avg_h3_rel);
    }
    AverageReport by_u = empirical_average(fixture_records(), Grouping::UnitRank, grid);
    CHECK(by_u.groups.size() == 3);
    for (const auto& g : by_u.groups) CHECK(!g.cm_full.has_value());
}

TEST_CASE("empirical averages edge cases") {
    AverageReport empty = empirical_average({}, Grouping::Signature, {1000});
    CHECK(empty.rows.empty());
    CHECK(empty.groups.empty());
    // h3(Q(sqrt -23)) = 3 cannot divide h3(K) = 1
    FieldRecord bad = make("bad.1", 23 * 23 * 5, 0, {}, -23);
    CHECK_THROWS_AS(empirical_average({bad}, Grouping::Signature, {100000}), Error);
    FieldRecord notfund = make("bad.2", 117 * 16, 0, {}, -12);
    CHECK_THROWS_AS(empirical_average({notfund}, Grouping::Signature, {100000}), Error);
    FieldRecord cubic = make("3.1.23.1", -23, 1, {}, -23);
    cubic.degree = 3;
    cubic.galois_label = "3T2";
    cubic.r2 = 1;
    AverageReport skip = empirical_average({cubic}, Grouping::Signature, {100});
    CHECK(skip.skipped == std::vector<std::string>{"3.1.23.1"});
    AverageOptions opt;
    opt.density["(12)(34)"] = 1.0;  // absurd density flags every row
    AverageReport flagged = empirical_average(fixture_records(), Grouping::Signature, {10000}, opt);
    for (const auto& row : flagged.rows) CHECK(row.incomplete == (row.group == "(12)(34)"));
}

TEST_CASE("reports are deterministic") {
    auto a = empirical_average(fixture_records(), Grouping::Signature, {5000, 50000});
    auto b = empirical_average(fixture_records(), Grouping::Signature, {50000, 5000});
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].group == b.rows[i].group);
        CHECK(a.rows[i].count == b.rows[i].count);
        CHECK(a.rows[i].avg_h3 == b.rows[i].avg_h3);
    }
}
