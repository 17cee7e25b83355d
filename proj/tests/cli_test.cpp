#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rrp/cli.hpp"

using nlohmann::json;

namespace {

const std::string kFixtures = RRP_FIXTURE_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "rrp");
  std::ostringstream out, err;
  const int code = rrp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Timing and the graph path vary between machines.
json comparable(std::string text) {
  json doc = json::parse(text);
  doc.erase("wall_time_ms");
  doc["args"].erase("--graph");
  return doc;
}

void expect_golden(const std::string& name, std::vector<std::string> args) {
  const Result r = run(std::move(args));
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(kFixtures + "/golden/" + name + ".json");
  ASSERT_TRUE(in) << "missing golden file " << name;
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(comparable(r.out), comparable(golden.str())) << r.out;
}

}  // namespace

TEST(Cli, GoldenFinite) {
  expect_golden("finite", {"finite", "--graph", kFixtures + "/example.json", "--horizon", "6"});
}

TEST(Cli, GoldenInfinite) {
  expect_golden("infinite", {"infinite", "--graph", kFixtures + "/example.json", "--epsilon", "1e-4"});
}

TEST(Cli, GoldenUndiscounted) {
  expect_golden("undiscounted", {"infinite", "--graph", kFixtures + "/example_undiscounted.json"});
}

TEST(Cli, GoldenBounded) {
  expect_golden("bounded", {"bounded", "--graph", kFixtures + "/example.json", "--memory", "2"});
}

TEST(Cli, GoldenSimulate) {
  expect_golden("simulate", {"simulate", "--graph", kFixtures + "/example.json", "--path", "a,d,a,b,c,a,d",
                             "--trials", "200", "--seed", "3", "--generation", "deterministic"});
}

TEST(Cli, DecideExitCodes) {
  const std::string graph = kFixtures + "/example.json";
  EXPECT_EQ(run({"decide", "--graph", graph, "--threshold", "1.8"}).code, rrp::cli::kExitOk);
  EXPECT_EQ(run({"decide", "--graph", graph, "--threshold", "1.9"}).code, rrp::cli::kExitNo);
  EXPECT_EQ(run({"decide", "--graph", graph, "--threshold", "11.5", "--horizon", "6"}).code,
            rrp::cli::kExitOk);
  EXPECT_EQ(run({"decide", "--graph", graph, "--threshold", "11.6", "--horizon", "6"}).code,
            rrp::cli::kExitNo);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"finite", "--graph", "/nonexistent.json", "--horizon", "3"}).code,
            rrp::cli::kExitInputError);
  EXPECT_EQ(run({"finite", "--horizon", "3"}).code, rrp::cli::kExitInputError);
  EXPECT_EQ(run({"bogus"}).code, rrp::cli::kExitInputError);
  const Result r = run({"simulate", "--graph", kFixtures + "/example.json", "--path", "abd"});
  EXPECT_EQ(r.code, rrp::cli::kExitInputError);
  EXPECT_NE(r.err.find("not an edge"), std::string::npos);
}

TEST(Cli, StateBudgetExitCode) {
  ::setenv("RRP_STATE_BUDGET", "10", 1);
  const Result r = run({"infinite", "--graph", kFixtures + "/example.json"});
  ::unsetenv("RRP_STATE_BUDGET");
  EXPECT_EQ(r.code, rrp::cli::kExitBudget);
  EXPECT_NE(r.err.find("smallest feasible epsilon"), std::string::npos);
}

TEST(Cli, HelpSucceeds) { EXPECT_EQ(run({"--help"}).code, 0); }
