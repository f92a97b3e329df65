#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cmczone/error.hpp"
#include "cmczone/rigidity.hpp"

namespace fs = std::filesystem;
using namespace cmczone;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::initializer_list<std::string> args) {
    std::vector<std::string> store{"cmczone"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : store) argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cmczone_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST(Cli, A0Digits) {
    Invocation r = invoke({"a0", "--tol", "1e-10"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string first;
    is >> first;
    EXPECT_EQ(first.rfind("0.5524", 0), 0u);
    EXPECT_GE(first.size() - 2, 10u);
    EXPECT_NE(r.out.find("residual"), std::string::npos);
}

TEST(Cli, A0LooseToleranceAgreesToTwoDigits) {
    Invocation loose = invoke({"a0", "--tol", "1e-2"});
    Invocation tight = invoke({"a0", "--tol", "1e-10"});
    ASSERT_EQ(loose.code, 0);
    EXPECT_NEAR(std::stod(loose.out), std::stod(tight.out), 1e-2);
}

TEST(Cli, A0Json) {
    Invocation r = invoke({"a0", "--tol", "1e-12", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_LT(std::fabs(j["residual"].get<double>()), 1e-12);
}

TEST(Cli, Classify) {
    Invocation r = invoke({"classify", "--a", "0.9"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["strong_h_plus"]);
    EXPECT_FALSE(j["strong_h_minus"]);
    EXPECT_TRUE(j["local_h_plus"]);
    EXPECT_TRUE(j["local_h_minus"]);
    auto at = nlohmann::json::parse(invoke({"classify", "--a", "a0"}).out);
    EXPECT_TRUE(at["local_h_plus"]);
    EXPECT_FALSE(at["local_h_minus"]);
}

TEST(Cli, VerifyTundu) {
    Invocation r = invoke({"verify", "--lemma", "tundu", "--grid", "0.05:0.45:0.05"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"]);
    EXPECT_EQ(j["grid"].size(), 9u);
    EXPECT_EQ(j["lemma"], "tundu");
}

TEST(Cli, VerifyFailureExitsOne) {
    // The sign pattern only holds near t = 1; a window this wide breaks it.
    Invocation r = invoke({"verify", "--lemma", "h1", "--a", "0.56", "--eta", "0.4"});
    EXPECT_EQ(r.code, 1) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j["pass"]);
    EXPECT_GT(j["max_violation"].get<double>(), 0.0);
    // Heights outside (0, 1/2) are a domain error, not a failed check.
    EXPECT_EQ(invoke({"verify", "--lemma", "tundu", "--grid", "0.6"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
    EXPECT_EQ(invoke({"classify"}).code, 2);
    EXPECT_EQ(invoke({"classify", "--a", "1.5"}).code, 2);
    EXPECT_EQ(invoke({"verify", "--lemma", "nope"}).code, 2);
    EXPECT_EQ(invoke({"perturb", "--mode", "sideways", "--a", "0.5"}).code, 2);
    EXPECT_EQ(invoke({"a0", "--tol", "-1"}).code, 2);
}

TEST(Cli, ProfileCsv) {
    Invocation r = invoke({"profile", "--kind", "delaunay", "--H", "1.02", "--t", "0.98", "--n", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    std::getline(is, line);
    EXPECT_EQ(line, "s,x3,x1,theta,kappa");
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 11);
}

TEST(Cli, ProfileSvg) {
    Invocation r = invoke({"profile", "--kind", "undulary", "--t", "0.25", "--format", "svg"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
}

TEST_F(CliFiles, PerturbWritesFiles) {
    fs::path csv = dir_ / "p.csv", rep = dir_ / "r.json";
    Invocation r = invoke({"perturb", "--mode", "global-hminus", "--a", "0.5", "--out", csv.string(), "--report", rep.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_TRUE(fs::exists(csv));
    auto j = nlohmann::json::parse(slurp(rep));
    EXPECT_TRUE(j["pass"]);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["mode"], "global_h_minus");
    EXPECT_TRUE(j.contains("construction_log"));
    EXPECT_EQ(slurp(csv).rfind("s,x3,x1,theta,kappa\n", 0), 0u);
}

TEST_F(CliFiles, PerturbImpossibleExitsOne) {
    fs::path rep = dir_ / "r.json";
    Invocation r = invoke({"perturb", "--mode", "global-hplus", "--a", "0.9", "--out", (dir_ / "p.csv").string(), "--report",
                 rep.string()});
    EXPECT_EQ(r.code, 1);
    auto j = nlohmann::json::parse(slurp(rep));
    EXPECT_FALSE(j["pass"]);
    EXPECT_TRUE(j.contains("error"));
}

TEST_F(CliFiles, ConfigFile) {
    fs::path cfg = dir_ / "run.toml";
    std::ofstream(cfg) << "[verify]\nlemma = \"tundu\"\ngrid = \"0.1,0.2\"\n";
    Invocation r = invoke({"--config", cfg.string(), "verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["grid"].size(), 2u);
}

TEST_F(CliFiles, RerunsAreByteIdentical) {
    for (int i = 0; i < 2; ++i) {
        fs::path p = dir_ / ("all" + std::to_string(i) + ".json");
        ASSERT_EQ(invoke({"verify", "--lemma", "all", "--report", p.string()}).code, 0);
    }
    EXPECT_EQ(slurp(dir_ / "all0.json"), slurp(dir_ / "all1.json"));
    EXPECT_FALSE(slurp(dir_ / "all0.json").empty());
}

TEST(ParseGrid, RangeAndList) {
    auto g = cli::parse_grid("0.05:0.45:0.05");
    ASSERT_EQ(g.size(), 9u);
    EXPECT_NEAR(g.back(), 0.45, 1e-15);
    auto l = cli::parse_grid("0.3,a0,sqrt3/2");
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[1], rigidity::a0());
    EXPECT_EQ(l[2], std::sqrt(3.0) / 2);
    EXPECT_THROW(cli::parse_grid("1:0:0.1"), Error);
    EXPECT_THROW(cli::parse_grid("x"), Error);
}
