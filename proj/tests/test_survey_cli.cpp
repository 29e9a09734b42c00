#include <legendre_hgf/cli.hpp>
#include <legendre_hgf/survey.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace legendre_hgf;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "legendre_hgf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("legendre_hgf_test_" + name);
}

} // namespace

TEST(Survey, RowsForPmax29) {
    SurveyOptions o;
    o.pmax = 29;
    const auto rows = run_survey(o);
    ASSERT_EQ(rows.size(), 3U + 11U + 15U + 27U);
    EXPECT_EQ(rows.front().p, 5U);
    EXPECT_EQ(rows.front().lambda, 2U);
    EXPECT_EQ(rows.back().p, 29U);
    EXPECT_EQ(rows.back().lambda, 28U);
    for (const auto& r : rows) EXPECT_TRUE(row_violations(r).empty()) << r.p << " " << r.lambda;
    EXPECT_EQ(rows.front().brute_count, 8);
    EXPECT_EQ(rows.front().hw_trace_mod_p, 3U);
}

TEST(Survey, OrderIndependentOfWorkerCount) {
    SurveyOptions o;
    o.pmax = 61;
    o.jobs = 1;
    const auto serial = run_survey(o);
    o.jobs = 4;
    EXPECT_EQ(run_survey(o), serial);
}

TEST(Survey, CsvRoundTrip) {
    SurveyOptions o;
    o.pmax = 37;
    const auto rows = run_survey(o);
    std::stringstream buffer;
    write_survey_csv(buffer, rows);
    EXPECT_EQ(read_survey_csv(buffer), rows);
}

TEST(Survey, CsvRejectsMalformedInput) {
    std::stringstream no_header("1,2,3\n");
    EXPECT_THROW(read_survey_csv(no_header), error);
    std::stringstream bad_row(std::string(kSurveyCsvHeader) + "\n5,2,8,8,-2,3,true,holds,maybe,holds,0,0\n");
    EXPECT_THROW(read_survey_csv(bad_row), error);
    std::stringstream short_row(std::string(kSurveyCsvHeader) + "\n5,2,8\n");
    EXPECT_THROW(read_survey_csv(short_row), error);
}

TEST(Survey, CorruptionHookTripsChecker) {
    SurveyOptions o;
    o.pmax = 13;
    o.corrupt_first_row = true;
    const auto rows = run_survey(o);
    EXPECT_FALSE(row_violations(rows.front()).empty());
}

TEST(Survey, JsonShape) {
    SurveyOptions o;
    o.pmax = 5;
    const auto j = survey_json(run_survey(o));
    ASSERT_EQ(j.size(), 3U);
    EXPECT_EQ(j[0]["brute_count"], 8);
    EXPECT_TRUE(j[0]["formula_residual"].is_string());
    EXPECT_EQ(j[0]["pi2_match"], "holds");
}

TEST(Cli, CountBothAgree) {
    const auto r = run_cli({"count", "--p", "5", "--lambda", "2", "--method", "both"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("brute_force_count: 8"), std::string::npos);
    EXPECT_NE(r.out.find("formula_count: 8"), std::string::npos);
    EXPECT_NE(r.out.find("difference: 0"), std::string::npos);
}

TEST(Cli, CountJson) {
    const auto r = run_cli({"count", "--p", "13", "--lambda", "2", "--json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["brute_force_count"], 8);
    EXPECT_EQ(j["formula_count"], 8);
    EXPECT_TRUE(j["agree"].get<bool>());
}

TEST(Cli, CountPreconditionErrors) {
    auto r = run_cli({"count", "--p", "7", "--lambda", "3", "--method", "formula"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("not 1 mod 4"), std::string::npos);
    r = run_cli({"count", "--p", "7", "--method", "formula"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"count", "--p", "5", "--lambda", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("singular curve"), std::string::npos);
    r = run_cli({"count", "--p", "9"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"count", "--p", "5", "--method", "guess"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"count", "--p", "7", "--method", "brute", "--lambda", "3"});
    EXPECT_EQ(r.code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"survey", "--pmax", "4"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, MaxPrimeEnvironmentCap) {
    ::setenv("LEGENDRE_HGF_MAX_P", "11", 1);
    const auto capped = run_cli({"count", "--p", "13", "--lambda", "2"});
    ::unsetenv("LEGENDRE_HGF_MAX_P");
    EXPECT_EQ(capped.code, 2);
    EXPECT_NE(capped.err.find("TooLarge"), std::string::npos);
    EXPECT_EQ(run_cli({"count", "--p", "13", "--lambda", "2"}).code, 0);
}

TEST(Cli, Periods) {
    auto r = run_cli({"periods", "--lambda", "0", "--terms", "10", "--json"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    for (const auto& row : j["periods"]) EXPECT_EQ(row["exact"], "1");

    r = run_cli({"periods", "--lambda", "1/4", "--terms", "2", "--json"});
    ASSERT_EQ(r.code, 0);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["periods"][1]["exact"], "17/16");

    r = run_cli({"periods", "--lambda", "1/4", "--terms", "100"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("FAILED"), std::string::npos);
    std::size_t oks = 0;
    for (std::size_t pos = r.out.find("recurrence check: ok"); pos != std::string::npos;
         pos = r.out.find("recurrence check: ok", pos + 1)) {
        ++oks;
    }
    EXPECT_EQ(oks, 3U);

    r = run_cli({"periods", "--lambda", "3/2", "--terms", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_EQ(run_cli({"periods", "--lambda", "0.25"}).code, 2);
    EXPECT_EQ(run_cli({"periods", "--lambda", "1/4", "--terms", "0"}).code, 2);
}

TEST(Cli, SurveyToFileRoundTrips) {
    const auto path = temp_file("survey.csv");
    const auto r = run_cli({"survey", "--pmax", "29", "--format", "csv", "--out", path.string(), "--jobs", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    const auto rows = read_survey_csv(in);
    SurveyOptions o;
    o.pmax = 29;
    EXPECT_EQ(rows, run_survey(o));
    std::filesystem::remove(path);
}

TEST(Cli, SurveyJsonToStdout) {
    const auto r = run_cli({"survey", "--pmax", "13", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).size(), 3U + 11U);
}

TEST(Cli, SurveyCorruptionExitsOne) {
    const auto r = run_cli({"survey", "--pmax", "13", "--corrupt-check", "--out", temp_file("bad.csv").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("p = 5, lambda = 2"), std::string::npos);
    std::filesystem::remove(temp_file("bad.csv"));
}

TEST(Cli, Congruence) {
    auto r = run_cli({"congruence", "--m", "1", "--d", "2", "--p", "13", "--all-x"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("12/12 hold"), std::string::npos);
    r = run_cli({"congruence", "--m", "3", "--d", "4", "--p", "17", "--x", "5", "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["rows"][0]["holds"].get<bool>());
    EXPECT_EQ(run_cli({"congruence", "--m", "1", "--d", "4", "--p", "7", "--x", "3"}).code, 2);
    EXPECT_EQ(run_cli({"congruence", "--m", "1", "--d", "2", "--p", "7", "--x", "0"}).code, 2);
}

TEST(Cli, HasseWitt) {
    auto r = run_cli({"hasse-witt", "--p", "5", "--lambda", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("trace 3"), std::string::npos);
    EXPECT_NE(r.out.find("trace ≡ a_p mod p: ok"), std::string::npos);
    r = run_cli({"hasse-witt", "--p", "13", "--lambda", "2", "--json"});
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["matrix"][1][1], 6);
    EXPECT_TRUE(j["trace_congruence"].get<bool>());
    EXPECT_EQ(run_cli({"hasse-witt", "--p", "7", "--lambda", "2"}).code, 2);
}

TEST(Cli, Transform) {
    auto r = run_cli({"transform", "--p", "13", "--a", "3", "--b", "9", "--c", "6", "--x", "3", "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_LT(std::stod(nlohmann::json::parse(r.out)["residual"].get<std::string>()), 1e-9);
    EXPECT_EQ(run_cli({"transform", "--p", "13", "--a", "3", "--b", "9", "--c", "6", "--x", "0"}).code, 2);
}

TEST(Cli, Match) {
    auto r = run_cli({"match", "--p", "13", "--lambda", "2", "--json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 3U);
    EXPECT_EQ(j["rows"][1]["status"], "holds");
    EXPECT_TRUE(j["rows"][1]["asserted"].get<bool>());
    EXPECT_FALSE(j["rows"][0]["asserted"].get<bool>());
    EXPECT_EQ(run_cli({"match", "--p", "7", "--lambda", "2"}).code, 2);
}
