#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

using nearvec::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

class BudgetEnv {
 public:
  explicit BudgetEnv(const char* value) { setenv("NEARVEC_BUDGET", value, 1); }
  ~BudgetEnv() { unsetenv("NEARVEC_BUDGET"); }
};

}  // namespace

TEST(Cli, GroupTables) {
  auto r = call({"group", "--p", "3", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, " 5 |  5 17  1  7")) << r.out;
  EXPECT_TRUE(contains(r.out, "17 | 17  7  5  1"));

  r = call({"group", "--p", "5", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["G"], json({1, 7, 13, 19}));
  EXPECT_EQ(j["table"][1], json({7, 1, 19, 13}));
  EXPECT_EQ(j["table"][2][2], 1);

  r = call({"group", "--p", "2", "--n", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "trivial"));

  r = call({"group", "--p", "3", "--n", "3", "--format", "csv"});
  EXPECT_TRUE(contains(r.out, "*,1,5,7,17\n1,1,5,7,17\n5,5,17,1,7\n"));
}

TEST(Cli, TableBothMethodsAgree) {
  auto r = call({"table", "--p", "3", "--n", "3", "--m-range", "4..8", "--method", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "Total          10       14       22       30       43"));
  EXPECT_FALSE(contains(r.out, "MISMATCH"));

  r = call({"table", "--p", "5", "--n", "2", "--m-range", "4..8", "--method", "both",
            "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  std::vector<int> totals;
  for (const auto& col : j) {
    totals.push_back(col["total"]);
    EXPECT_TRUE(col["match"].get<bool>());
    for (const char* key : {"p", "n", "m", "G", "per_N", "total", "classes"}) {
      EXPECT_TRUE(col.contains(key)) << key;
    }
  }
  EXPECT_EQ(totals, (std::vector<int>{11, 14, 24, 30, 45}));
  EXPECT_EQ(j[0]["per_N"]["2"], 6);
  EXPECT_EQ(j[2]["per_N"]["4"], 4);

  r = call({"table", "--p", "7", "--n", "1", "--m-range", "1..1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "Total           1"));
}

TEST(Cli, TableCsv) {
  const auto r = call({"table", "--p", "3", "--n", "3", "--m-range", "4", "--method", "both",
                       "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "p,n,m,N,t_N,T_N,method\n"));
  EXPECT_TRUE(contains(r.out, "3,3,4,2,9,5,formula\n"));
  EXPECT_TRUE(contains(r.out, "3,3,4,2,9,5,brute\n"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(Cli, JsonRoundTripsByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"group", "--p", "3", "--n", "3", "--format", "json"},
      {"table", "--p", "3", "--n", "3", "--m-range", "1..8", "--method", "both", "--format",
       "json"},
      {"table", "--p", "2", "--n", "7", "--m-range", "20..20", "--format", "json"},
      {"witness", "--p", "3", "--n", "3", "--s1", "1,1,5,5", "--s2", "1,1,7,7", "--verify",
       "sampled", "--format", "json"},
      {"classes", "--p", "5", "--n", "2", "--m", "4", "--format", "json"},
      {"axioms", "--p", "2", "--n", "2", "--seq", "1,1", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const auto r = call(cmd);
    ASSERT_EQ(r.code, 0) << cmd[0] << ": " << r.err;
    EXPECT_EQ(json::parse(r.out).dump(2) + "\n", r.out) << cmd[0];
  }
}

TEST(Cli, WitnessBlockSwap) {
  auto r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,1,5,5", "--s2", "1,1,7,7",
                 "--verify", "exhaustive"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "q = 5\n"));
  EXPECT_TRUE(contains(r.out, "sigma = 3 4 1 2\n"));
  EXPECT_TRUE(contains(r.out, "(x3, x4, x1^9, x2^9)"));
  EXPECT_TRUE(contains(r.out, "VERIFIED"));

  r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,5", "--s2", "1,17"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.out, "NOT-ISOMORPHIC"));

  r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,5,17", "--s2", "1,5,17"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "q = 1\n"));
}

TEST(Cli, SequenceNormalisation) {
  auto r = call({"witness", "--p", "3", "--n", "3", "--s1", "15,3", "--s2", "1,7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.err, "normalized to 1,5"));

  r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,2", "--s2", "1,5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "not a unit"));

  r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,5", "--s2", "1,5,5"});
  EXPECT_EQ(r.code, 2);

  r = call({"witness", "--p", "3", "--n", "3", "--s1", "1,x", "--s2", "1,5"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, Classes) {
  auto r = call({"classes", "--p", "3", "--n", "3", "--m", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "3 classes"));
  EXPECT_TRUE(contains(r.out, "(1,5) ~ (1,7)"));

  r = call({"classes", "--p", "2", "--n", "1", "--m", "3", "--format", "json"});
  EXPECT_EQ(json::parse(r.out)["classes"].size(), 1u);

  r = call({"classes", "--p", "3", "--n", "3", "--m", "4", "--format", "json"});
  const json j = json::parse(r.out);
  EXPECT_EQ(j["total"], 10);
  EXPECT_EQ(j["classes"].size(), 10u);
}

TEST(Cli, Axioms) {
  auto r = call({"axioms", "--p", "2", "--n", "3", "--m", "2", "--seq", "1,3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "near-vector space"));
  r = call({"axioms", "--p", "7", "--n", "1", "--seq", "1,2"});
  EXPECT_EQ(r.code, 2);
  r = call({"axioms", "--p", "2", "--n", "2", "--m", "3", "--seq", "1,1"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"group", "--p", "3"}).code, 2);
  EXPECT_EQ(call({"group", "--p", "4", "--n", "1"}).code, 2);
  EXPECT_EQ(call({"table", "--p", "3", "--n", "3", "--m-range", "5..2"}).code, 2);
  EXPECT_EQ(call({"table", "--p", "3", "--n", "3", "--m-range", "1..2", "--method", "guess"}).code,
            2);
  EXPECT_EQ(call({"group", "--p", "3", "--n", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, BudgetExitCode) {
  {
    BudgetEnv env("5");
    const auto r = call({"classes", "--p", "3", "--n", "3", "--m", "4"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.err, "budget"));
    EXPECT_EQ(call({"witness", "--p", "3", "--n", "3", "--s1", "1,5", "--s2", "1,5", "--verify",
                    "exhaustive"})
                  .code,
              3);
  }
  // |G| = 52 and C(57, 6) > 10^7 under the default budget
  auto r = call({"table", "--p", "107", "--n", "1", "--m-range", "7", "--method", "brute"});
  EXPECT_EQ(r.code, 3);
  r = call({"table", "--p", "107", "--n", "1", "--m-range", "7"});
  EXPECT_EQ(r.code, 0);
}
