#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace bcube {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("bcube_cli_test_" + name);
}

TEST(Cli, BuildSummary) {
    const Result r = run_cli({"build", "--ell", "3", "--d", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "hosts=27 switches=27 links=162\n");
}

TEST(Cli, BuildJsonAndDot) {
    const Result j = run_cli({"build", "--ell", "2", "--d", "3", "--format", "json"});
    ASSERT_EQ(j.code, 0);
    const auto doc = json::parse(j.out);
    EXPECT_EQ(doc.at("hosts").size(), 9u);
    EXPECT_EQ(doc.at("switches").size(), 6u);

    const Result d = run_cli({"build", "--ell", "1", "--d", "2", "--format", "dot"});
    ASSERT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("graph"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"build", "--ell", "0", "--d", "3"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--ell", "2"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--ell", "x", "--d", "3"}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"build", "--ell", "9", "--d", "9"}).code, 3);
    EXPECT_EQ(run_cli({"rwa", "--ell", "3", "--d", "3", "--scheme", "two-layer"}).code, 2);
    EXPECT_EQ(run_cli({"rwa", "--ell", "2", "--d", "3", "--scheme", "bogus"}).code, 2);
    EXPECT_EQ(run_cli({"verify"}).code, 2);
    EXPECT_EQ(run_cli({"build", "--help"}).code, 0);
}

TEST(Cli, RwaSummaryLines) {
    EXPECT_EQ(run_cli({"rwa", "--ell", "2", "--d", "3", "--scheme", "oblivious"}).out,
              "scheme=oblivious wavelengths=8 nonblocking=true\n");
    EXPECT_EQ(run_cli({"rwa", "--ell", "3", "--d", "3", "--scheme", "layered"}).out,
              "scheme=layered wavelengths=22 nonblocking=true\n");
    EXPECT_EQ(run_cli({"rwa", "--ell", "2", "--d", "3", "--scheme", "two-layer"}).out,
              "scheme=two-layer wavelengths=6 nonblocking=true\n");
}

TEST(Cli, VerifySuitePasses) {
    const Result r = run_cli({"verify", "--ell", "3", "--d", "3"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS cpr-link-disjoint"), std::string::npos);
    EXPECT_NE(r.out.find("checks passed for B(3,3)"), std::string::npos);
}

TEST(Cli, ReportFormats) {
    const Result table = run_cli({"report", "--ell", "3", "--d", "3"});
    ASSERT_EQ(table.code, 0) << table.err;
    EXPECT_NE(table.out.find("π=18"), std::string::npos);
    EXPECT_NE(table.out.find("layered=22"), std::string::npos);
    EXPECT_NE(table.out.find("bound=24"), std::string::npos);

    const Result js = run_cli({"report", "--ell", "2", "--d", "2", "--format", "json"});
    ASSERT_EQ(js.code, 0);
    const auto doc = json::parse(js.out);
    EXPECT_EQ(doc.at("forwarding_index"), 2);
    EXPECT_EQ(doc.at("oracle_optical").at("value"), 2);

    const Result csv = run_cli({"report", "--ell", "2", "--d", "3", "--format", "csv"});
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.rfind("ell,d,forwarding_index", 0), 0u);
}

TEST(Cli, RouteCsv) {
    const Result r = run_cli({"route", "--ell", "2", "--d", "3"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "layer,direction,host,load");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.rfind(',') + 1), "6");
    }
    EXPECT_EQ(rows, 36);
}

TEST(Cli, ConflictDot) {
    const Result r = run_cli({"conflict", "--ell", "3", "--d", "3", "--class", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("graph"), std::string::npos);
    EXPECT_EQ(run_cli({"conflict", "--ell", "3", "--d", "3", "--class", "4"}).code, 2);
}

TEST(Cli, DeterministicOutput) {
    const auto a = run_cli({"rwa", "--ell", "3", "--d", "2", "--scheme", "greedy", "--format", "json"});
    const auto b = run_cli({"rwa", "--ell", "3", "--d", "2", "--scheme", "greedy", "--format", "json"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PlanRoundTripAndCorruption) {
    const auto path = temp_file("plan.json");
    const Result w = run_cli({"rwa", "--ell", "2", "--d", "3", "--scheme", "layered", "--out", path.string()});
    ASSERT_EQ(w.code, 0) << w.err;
    ASSERT_TRUE(std::filesystem::exists(path));

    const Result ok = run_cli({"verify", "--plan", path.string()});
    EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
    EXPECT_EQ(ok.out.rfind("PASS", 0), 0u);

    // collapse every wavelength to 0: some link must now carry wavelength 0 twice
    json doc;
    {
        std::ifstream f(path);
        f >> doc;
    }
    for (auto& row : doc["assignments"]) row["wavelength"] = 0;
    const auto bad_path = temp_file("plan_bad.json");
    {
        std::ofstream f(bad_path);
        f << doc.dump();
    }
    const Result bad = run_cli({"verify", "--plan", bad_path.string()});
    EXPECT_EQ(bad.code, 4);
    EXPECT_EQ(bad.out.rfind("FAIL", 0), 0u);
    EXPECT_NE(bad.out.find("\"witness\""), std::string::npos);
    EXPECT_NE(bad.out.find("\"link\""), std::string::npos);

    // a path hop that skips a switch is an integrity failure
    json broken = json::parse(std::ifstream(path));
    broken["assignments"][0]["path"] = json::array({"00", "11"});
    broken["assignments"][0]["dst"] = "11";
    {
        std::ofstream f(bad_path);
        f << broken.dump();
    }
    EXPECT_EQ(run_cli({"verify", "--plan", bad_path.string()}).code, 4);

    {
        std::ofstream f(bad_path);
        f << "{ not json";
    }
    EXPECT_EQ(run_cli({"verify", "--plan", bad_path.string()}).code, 2);
    EXPECT_EQ(run_cli({"verify", "--plan", temp_file("missing.json").string()}).code, 2);

    std::filesystem::remove(path);
    std::filesystem::remove(bad_path);
}

TEST(Cli, FailedRunLeavesNoPartialFile) {
    const auto path = temp_file("never.json");
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"build", "--ell", "9", "--d", "9", "--format", "json", "--out", path.string()}).code, 3);
    EXPECT_FALSE(std::filesystem::exists(path));
}

} // namespace
} // namespace bcube
