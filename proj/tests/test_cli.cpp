#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planestat/cli.hpp"

#include "test_util.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace planestat;
using planestat::testutil::Csv;
using planestat::testutil::parse_csv;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

size_t col(const Csv& csv, const std::string& name) {
    for (size_t i = 0; i < csv.header.size(); ++i)
        if (csv.header[i] == name) return i;
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("count command: exact column and finite ratios") {
    RunResult r = run({"count", "--n-grid", "1,2,3,4,5,6", "--precision", "30"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 6);
    size_t cExact = col(csv, "exact");
    const char* expect[] = {"1", "3", "6", "13", "24", "48"};
    for (size_t i = 0; i < 6; ++i) CHECK(csv.rows[i][cExact] == expect[i]);
    for (const auto& row : csv.rows) {
        for (const char* rc : {"ratio_wright", "ratio_hayman"}) {
            BigFloat v = BigFloat::from_string(row[col(csv, rc)]);
            CHECK(v.sign() > 0);
            CHECK(mpfr_number_p(v.get()));
        }
    }
}

TEST_CASE("count command: rows sorted ascending without duplicates") {
    RunResult r = run({"count", "--n-grid", "6,2,4,2,6", "--precision", "30"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 3);
    CHECK(csv.rows[0][0] == "2");
    CHECK(csv.rows[1][0] == "4");
    CHECK(csv.rows[2][0] == "6");
}

TEST_CASE("stat command basics") {
    RunResult r = run({"stat", "--statistic", "trace", "--n-grid", "2", "--precision", "30"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.rows[0][col(csv, "exact")] == "4/3");

    RunResult rd = run({"stat", "--statistic", "dimension", "--n-grid", "1,2", "--precision", "30"});
    REQUIRE(rd.code == 0);
    Csv cd = parse_csv(rd.out);
    CHECK(cd.rows[0][col(cd, "exact")] == "1");
    CHECK(cd.rows[0][col(cd, "asymptotic")].empty()); // log n vanishes at n=1
    CHECK(cd.rows[1][col(cd, "exact")] == "4/3");
    CHECK(!cd.rows[1][col(cd, "asymptotic")].empty());
}

TEST_CASE("stat trace at n=1000: saddle evaluation beats the power law") {
    RunResult r = run({"stat", "--statistic", "trace", "--n-grid", "1000", "--precision", "30"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    BigFloat one(1L);
    BigFloat rs = BigFloat::from_string(csv.rows[0][col(csv, "ratio_saddle")]);
    BigFloat ra = BigFloat::from_string(csv.rows[0][col(csv, "ratio_asymptotic")]);
    CHECK(abs(rs - one) < abs(ra - one));
}

TEST_CASE("emitted ratios re-divide to the stated value") {
    RunResult r = run({"stat", "--statistic", "trace", "--n-grid", "50,100", "--precision", "40"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    for (const auto& row : csv.rows) {
        BigFloat exact = BigFloat::from_string(row[col(csv, "exact_decimal")]);
        BigFloat saddle = BigFloat::from_string(row[col(csv, "saddle")]);
        BigFloat stated = BigFloat::from_string(row[col(csv, "ratio_saddle")]);
        BigFloat redivided = exact / saddle;
        // one unit in the last (30th) emitted digit
        CHECK(abs(redivided - stated) <= abs(stated) * pow10(-29));
    }

    RunResult rc = run({"count", "--n-grid", "30,60", "--precision", "50"});
    REQUIRE(rc.code == 0);
    Csv cc = parse_csv(rc.out);
    for (const auto& row : cc.rows) {
        for (auto [num, den, ratio] : {std::array<const char*, 3>{"exact_decimal", "wright", "ratio_wright"},
                                       std::array<const char*, 3>{"exact_decimal", "hayman", "ratio_hayman"}}) {
            BigFloat a = BigFloat::from_string(row[col(cc, num)]);
            BigFloat b = BigFloat::from_string(row[col(cc, den)]);
            BigFloat stated = BigFloat::from_string(row[col(cc, ratio)]);
            CHECK(abs(a / b - stated) <= abs(stated) * pow10(-29));
        }
    }
}

TEST_CASE("--out writes the same bytes the stream would carry") {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / "planestat_cli_test_out.csv";
    RunResult direct = run({"oracle", "--n", "4"});
    RunResult filed = run({"oracle", "--n", "4", "--out", p.string()});
    REQUIRE(direct.code == 0);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    fs::remove(p);
}

TEST_CASE("help exits zero") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"count", "--help"}).code == 0);
}

TEST_CASE("oracle command verdicts") {
    RunResult r2 = run({"oracle", "--n", "2"});
    REQUIRE(r2.code == 0);
    Csv csv = parse_csv(r2.out);
    bool sawCount = false;
    int passes = 0;
    for (const auto& row : csv.rows) {
        if (row[0] == "count") {
            CHECK(row[2] == "3");
            sawCount = true;
        }
        if (row[0] == "verdict") {
            CHECK(row[2] == "PASS");
            ++passes;
        }
    }
    CHECK(sawCount);
    CHECK(passes == 7);

    RunResult r12 = run({"oracle", "--n", "12"});
    REQUIRE(r12.code == 0);
    for (const auto& row : parse_csv(r12.out).rows)
        if (row[0] == "verdict") CHECK(row[2] == "PASS");

    RunResult r21 = run({"oracle", "--n", "21"});
    CHECK(r21.code == 2);
}

TEST_CASE("probe command output") {
    RunResult r = run({"probe", "--n", "1000", "--grid-size", "16", "--precision", "30"});
    REQUIRE(r.code == 0);
    Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 17 + 16);
    CHECK(csv.rows[0][col(csv, "region")] == "inside");
    CHECK(BigFloat::from_string(csv.rows[0][col(csv, "ratio")]) == BigFloat(1L));
    bool hasDelta = false;
    for (const auto& line : csv.comments)
        if (line.find("# meta delta=") == 0) hasDelta = true;
    CHECK(hasDelta);
}

TEST_CASE("selftest passes and usage errors exit 1") {
    RunResult st = run({"selftest"});
    CHECK(st.code == 0);
    CHECK(st.out.find("selftest overall PASS") != std::string::npos);

    CHECK(run({"count"}).code == 1);                       // missing required flag
    CHECK(run({"count", "--n-grid", "2", "--precision", "10"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);

    // grid beyond --max-n is a computation/range error
    CHECK(run({"count", "--n-grid", "200", "--max-n", "100"}).code == 2);
}

TEST_CASE("identical configs produce identical bytes") {
    std::vector<std::string> args{"stat", "--statistic", "dimension", "--n-grid",
                                  "5,25,50", "--precision", "35", "--format", "json"};
    RunResult a = run(args);
    RunResult b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("csv and json runs carry identical numeric content") {
    std::vector<std::string> base{"count", "--n-grid", "10,20,40", "--precision", "30"};
    RunResult c = run(base);
    auto jargs = base;
    jargs.push_back("--format");
    jargs.push_back("json");
    RunResult j = run(jargs);
    REQUIRE(c.code == 0);
    REQUIRE(j.code == 0);

    Csv csv = parse_csv(c.out);
    nlohmann::json parsed = nlohmann::json::parse(j.out);
    REQUIRE(parsed["rows"].size() == csv.rows.size());
    for (size_t i = 0; i < csv.rows.size(); ++i)
        for (size_t k = 0; k < csv.header.size(); ++k)
            CHECK(parsed["rows"][i][csv.header[k]].get<std::string>() == csv.rows[i][k]);
}
