#include "cli.hpp"
#include "selftest.hpp"

#include "qdw/state_io.hpp"
#include "qdw/witness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace qdw;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qdw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qdw_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

nlohmann::json record(const Invocation& inv) { return nlohmann::json::parse(inv.out); }

}  // namespace

TEST_F(CliTest, GenWritesLoadableState) {
  const auto inv = invoke({"gen", "random", "--dA", "2", "--dB", "3", "--rank", "2", "--seed", "4",
                           "--out", path("r.json")});
  ASSERT_EQ(inv.code, 0) << inv.err;
  const auto state = load_state(path("r.json"));
  EXPECT_EQ(state.dA(), 2);
  EXPECT_EQ(state.dB(), 3);
  EXPECT_EQ(state.rho(), random_state(2, 3, 2, std::uint64_t{4}).rho());
}

TEST_F(CliTest, EvalBellAllMethods) {
  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  for (const char* m : {"commutator", "permutation", "circuit"}) {
    const auto inv = invoke({"eval", path("bell.json"), "--method", m});
    ASSERT_EQ(inv.code, 0) << inv.err;
    const auto j = record(inv);
    EXPECT_NEAR(j["value"].get<double>(), -0.375, 1e-10) << m;
    EXPECT_NEAR(j["indicator"].get<double>(), 0.375, 1e-10);
    EXPECT_FALSE(j["zero_discord"].get<bool>());
    EXPECT_EQ(j["method"], m);
  }
}

TEST_F(CliTest, RecordKeysInOrder) {
  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  const auto j = nlohmann::ordered_json::parse(invoke({"eval", path("bell.json")}).out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"state", "method", "value", "indicator", "threshold",
                                            "zero_discord", "auxiliary"}));
}

TEST_F(CliTest, AssertZeroOnClassicalQuantumState) {
  ASSERT_EQ(invoke({"gen", "cq", "--dA", "3", "--dB", "3", "--seed", "7", "--out", path("cq.json")}).code, 0);
  const auto inv = invoke({"eval", path("cq.json"), "--assert-zero"});
  EXPECT_EQ(inv.code, 0);
  EXPECT_LE(std::abs(record(inv)["value"].get<double>()), 1e-10);
  EXPECT_TRUE(record(inv)["zero_discord"].get<bool>());

  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  EXPECT_EQ(invoke({"eval", path("bell.json"), "--assert-zero"}).code, 1);
}

TEST_F(CliTest, CircuitOnSmallClassicalQuantumState) {
  ASSERT_EQ(invoke({"gen", "cq", "--dA", "2", "--dB", "3", "--seed", "7", "--out", path("cq.json")}).code, 0);
  const auto inv = invoke({"eval", path("cq.json"), "--method", "circuit"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  const auto j = record(inv);
  EXPECT_LE(std::abs(j["value"].get<double>()), 1e-10);
  EXPECT_TRUE(j["auxiliary"].contains("sx1"));
  EXPECT_TRUE(j["auxiliary"].contains("dropped_weight"));
}

TEST_F(CliTest, CircuitRejectsOversizedState) {
  ASSERT_EQ(invoke({"gen", "cq", "--dA", "3", "--dB", "3", "--out", path("cq.json")}).code, 0);
  const auto inv = invoke({"eval", path("cq.json"), "--method", "circuit"});
  EXPECT_EQ(inv.code, 2);
  EXPECT_NE(inv.err.find("dA*dB"), std::string::npos);
}

TEST_F(CliTest, ShotsOnBell) {
  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  const auto inv =
      invoke({"eval", path("bell.json"), "--method", "circuit-shots", "--shots", "1000000", "--seed", "1"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  const auto j = record(inv);
  const double err = j["auxiliary"]["stderr"].get<double>();
  EXPECT_LT(std::abs(j["value"].get<double>() + 0.375), 3.0 * err);
  EXPECT_EQ(j["auxiliary"]["shots"].get<std::uint64_t>(), 1000000u);
  EXPECT_EQ(j["auxiliary"]["seed"].get<std::uint64_t>(), 1u);
}

TEST_F(CliTest, DiscordFieldForQubitA) {
  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  const auto j = record(invoke({"eval", path("bell.json"), "--discord"}));
  EXPECT_NEAR(j["auxiliary"]["discord"].get<double>(), 1.0, 1e-4);
}

TEST_F(CliTest, WernerSweep) {
  const auto inv = invoke({"sweep", "werner", "--from", "0", "--to", "1", "--step", "0.1", "--out",
                           path("w.csv")});
  ASSERT_EQ(inv.code, 0) << inv.err;
  std::istringstream csv(slurp(path("w.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "parameter,method,value,sx1,sx2,stderr,discord");
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string p, m, v;
    std::getline(fields, p, ',');
    std::getline(fields, m, ',');
    std::getline(fields, v, ',');
    const double x = std::stod(p);
    EXPECT_NEAR(std::stod(v), -0.375 * x * x * x * x, 1e-12) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 11);
}

TEST_F(CliTest, TwoMethodSweepAgrees) {
  const auto inv = invoke({"sweep", "random", "--from", "0", "--to", "9", "--step", "1", "--methods",
                           "commutator,permutation", "--dA", "2", "--dB", "3"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  std::istringstream csv(inv.out);
  std::string line;
  std::getline(csv, line);
  std::map<std::string, std::vector<double>> by_method;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string p, m, v;
    std::getline(fields, p, ',');
    std::getline(fields, m, ',');
    std::getline(fields, v, ',');
    by_method[m].push_back(std::stod(v));
  }
  ASSERT_EQ(by_method["commutator"].size(), 10u);
  ASSERT_EQ(by_method["permutation"].size(), 10u);
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_NEAR(by_method["commutator"][i], by_method["permutation"][i], 1e-9);
}

TEST_F(CliTest, EmptyRangeFailsWithoutOutput) {
  const auto inv = invoke({"sweep", "werner", "--from", "1", "--to", "0", "--out", path("w.csv")});
  EXPECT_EQ(inv.code, 2);
  EXPECT_FALSE(fs::exists(path("w.csv")));
  EXPECT_EQ(invoke({"sweep", "werner", "--step", "0", "--out", path("w.csv")}).code, 2);
  EXPECT_FALSE(fs::exists(path("w.csv")));
}

TEST_F(CliTest, OutputIsByteStable) {
  ASSERT_EQ(invoke({"gen", "random", "--dA", "2", "--dB", "2", "--seed", "3", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(invoke({"gen", "random", "--dA", "2", "--dB", "2", "--seed", "3", "--out", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const auto e1 = invoke({"eval", path("a.json"), "--method", "circuit-shots", "--shots", "2000"});
  const auto e2 = invoke({"eval", path("a.json"), "--method", "circuit-shots", "--shots", "2000"});
  EXPECT_EQ(e1.out, e2.out);
  const auto s1 = invoke({"sweep", "werner", "--methods", "commutator,circuit"});
  const auto s2 = invoke({"sweep", "werner", "--methods", "commutator,circuit"});
  EXPECT_EQ(s1.out, s2.out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"eval", path("missing.json")}).code, 2);
  ASSERT_EQ(invoke({"gen", "bell", "--out", path("bell.json")}).code, 0);
  EXPECT_EQ(invoke({"eval", path("bell.json"), "--method", "magic"}).code, 2);
  EXPECT_EQ(invoke({"gen", "werner", "--p", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"gen", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "werner", "--methods", "commutator,bogus"}).code, 2);

  std::ofstream(path("bad.json")) << R"({"dims": [2, 2], "matrix": [[1]]})";
  const auto bad = invoke({"eval", path("bad.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Selftest, PassesAndPrintsOneLinePerCheck) {
  const auto checks = cli::run_selftest();
  EXPECT_EQ(checks.size(), 6u);
  std::ostringstream os;
  EXPECT_TRUE(cli::print_selftest(os, checks));
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);  // checks plus summary
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
}

TEST(Selftest, DetectsSignFlippedEvaluator) {
  cli::SelftestHooks hooks;
  hooks.commutator = [](const BipartiteState& s) { return -eval_commutator(s); };
  const auto checks = cli::run_selftest(hooks);
  std::ostringstream os;
  EXPECT_FALSE(cli::print_selftest(os, checks));
  EXPECT_NE(os.str().find("FAIL"), std::string::npos);
}

TEST(Selftest, CommandExitCode) { EXPECT_EQ(invoke({"selftest"}).code, 0); }
