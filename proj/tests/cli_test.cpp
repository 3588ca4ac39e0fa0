#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"

using fibkit::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kBad = std::string(FIBKIT_TEST_DATA) + "/bad.cat";

} // namespace

TEST(Cli, EvalExamples) {
  EXPECT_EQ(cli({"eval", "F", "10"}).out, "55\n");
  EXPECT_EQ(cli({"eval", "L", "-4"}).out, "7\n");
  EXPECT_EQ(cli({"eval", "F", "-8"}).out, "-21\n");
  const Result g = cli({"eval", "G", "5", "--seed", "3,7"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out, "44\n");
  const Result missing = cli({"eval", "G", "5"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(missing.out.empty());
  EXPECT_FALSE(missing.err.empty());
  EXPECT_EQ(cli({"eval", "X", "5"}).code, 2);
  EXPECT_EQ(cli({"eval", "F", "abc"}).code, 2);
  EXPECT_EQ(cli({"eval", "F", "100"}).out, "354224848179261915075\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"verify"}).code, 2);
  EXPECT_EQ(cli({"verify", "--id", "NoSuchThing"}).code, 2);
  EXPECT_EQ(cli({"verify", "--id", "Eq14", "--format", "xml"}).code, 2);
  EXPECT_EQ(cli({"verify", "--id", "Eq14", "--index", "3..1"}).code, 2);
  EXPECT_EQ(cli({"prove", "--id", "Eq1", "--n", "-1"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, VerifyJsonPasses) {
  const Result r = cli({"verify", "--id", "Eq1", "--n", "0..2", "--index", "-3..3", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "PASS");
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["identity"], "Eq1");
  EXPECT_EQ(j["reports"][0]["total"], 3 * 7 * 7 * 7 * 4);
}

TEST(Cli, SelectByTag) {
  const Result r = cli({"verify", "--id", "Eq(14)", "--index", "-3..3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("identity,point,seed,lhs,rhs,status\n", 0), 0u);
  EXPECT_NE(r.out.find("Eq14"), std::string::npos);
}

TEST(Cli, BadCatalogFileFails) {
  const Result r = cli({"verify", "--file", kBad, "--index", "-3..3", "--format", "json", "--no-timing"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "FAIL");
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][0]["status"], "PASS");
  EXPECT_EQ(j["reports"][1]["status"], "FAIL");
  EXPECT_FALSE(j["reports"][1]["failures"].empty());
  const auto& f = j["reports"][1]["failures"][0];
  EXPECT_TRUE(f.contains("lhs"));
  EXPECT_TRUE(f.contains("rhs"));
  EXPECT_TRUE(f.contains("point"));
}

TEST(Cli, BadCatalogProofFails) {
  const Result r = cli({"prove", "--file", kBad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Flipped"), std::string::npos);
}

TEST(Cli, EnvironmentOverridesCatalog) {
  ::setenv("FIBKIT_CATALOG", kBad.c_str(), 1);
  const Result listed = cli({"catalog"});
  const Result failing = cli({"verify", "--id", "Flipped", "--index", "-2..2"});
  ::unsetenv("FIBKIT_CATALOG");
  EXPECT_EQ(listed.code, 0);
  EXPECT_NE(listed.out.find("Flipped"), std::string::npos);
  EXPECT_EQ(listed.out.find("Eq1\t"), std::string::npos);
  EXPECT_EQ(failing.code, 1);
  EXPECT_EQ(cli({"verify", "--id", "Flipped"}).code, 2);
}

TEST(Cli, JsonIsByteIdenticalAcrossWorkerCounts) {
  std::string first;
  for (const char* w : {"1", "2", "4"}) {
    const Result r = cli({"verify", "--file", kBad, "--index", "-4..4", "--format", "json", "--no-timing",
                          "--workers", w});
    EXPECT_EQ(r.code, 1);
    if (first.empty())
      first = r.out;
    EXPECT_EQ(r.out, first) << w << " workers";
  }
}

TEST(Cli, VerifyAllWithExpansionsAndOracle) {
  const Result r = cli({"verify", "--all", "--expansions", "--oracle", "--n", "0..2", "--index", "-3..3"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, ProveExamples) {
  EXPECT_EQ(cli({"prove", "--id", "Eq1", "--n", "1", "2", "3", "4"}).code, 0);
  EXPECT_EQ(cli({"prove", "--id", "Lemma11"}).code, 0);
  EXPECT_EQ(cli({"prove", "--all", "--n", "1", "2"}).code, 0);
}

TEST(Cli, RecurrenceExamples) {
  EXPECT_EQ(cli({"recurrence", "--id", "Eq1", "--side", "both"}).code, 0);
  EXPECT_EQ(cli({"recurrence", "--id", "Eq2", "--side", "rhs"}).code, 0);
  EXPECT_EQ(cli({"recurrence", "--id", "Eq2", "--side", "lhs", "--weights", "F"}).code, 1);
  EXPECT_EQ(cli({"recurrence", "--id", "Eq1", "--side", "middle"}).code, 2);
}

TEST(Cli, CatalogPrintRoundTrips) {
  const Result r = cli({"catalog", "--print"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("name: Eq1\n"), std::string::npos);
}

TEST(Cli, BenchReportsDigitCount) {
  const Result r = cli({"bench", "1000", "--json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0]["digits"], 209);
}
