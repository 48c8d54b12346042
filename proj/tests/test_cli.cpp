#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "cli_cases.hpp"

using nlohmann::json;
using cli_cases::run;

TEST(Cli, UnknownVerbAndUsage) {
  const auto o = run({"frobnicate"});
  EXPECT_EQ(o.status, 1);
  EXPECT_NE(o.err.find("usage:"), std::string::npos);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(run({}).status, 1);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST(Cli, PreconditionAndParseErrors) {
  EXPECT_EQ(run({"classify", "--set", "1,2", "--n", "10", "--eta", "0.1"}).status, 2);  // not sum-free
  EXPECT_EQ(run({"classify", "--set", "1,x", "--n", "10"}).status, 2);
  EXPECT_EQ(run({"count", "--family", "sf1", "--n", "40"}).status, 2);
  EXPECT_EQ(run({"count", "--family", "sf3", "--n", "4"}).status, 2);
  EXPECT_EQ(run({"mu", "--n", "5"}).status, 2);  // missing --r
  EXPECT_EQ(run({"h", "--r", "4"}).status, 2);   // needs --long-run
  EXPECT_EQ(run({"mu", "--n", "5", "--r", "2", "--format", "csv"}).status, 2);
  EXPECT_EQ(run({"example42", "--x", "3", "--y", "5"}).status, 2);
}

TEST(Cli, BudgetExhaustionStillPrints) {
  const auto o = run({"h", "--r", "3", "--budget", "20"});
  EXPECT_EQ(o.status, 3);
  const json doc = json::parse(o.out);
  EXPECT_EQ(doc["verb"], "h");
  EXPECT_TRUE(doc["result"]["upper"].is_null());
}

TEST(Cli, EveryVerbProducesADocument) {
  for (const auto& args : cli_cases::per_verb()) {
    const auto o = run(args);
    ASSERT_EQ(o.status, 0) << args[0] << ": " << o.err;
    const json doc = json::parse(o.out);
    EXPECT_EQ(doc["verb"], args[0]);
    EXPECT_TRUE(doc.contains("parameters"));
    EXPECT_TRUE(doc.contains("result"));
    const json& m = doc["manifest"];
    EXPECT_EQ(m["engine_version"], sumfree::cli::kEngineVersion);
    EXPECT_EQ(m["result_digest"].get<std::string>().size(), 16u);
    EXPECT_TRUE(m["wall_time"].is_number());
  }
}

TEST(Cli, DigestIndependentOfThreads) {
  for (const auto& args : cli_cases::per_verb()) {
    const std::string d1 = cli_cases::digest(run(args, "1").out);
    EXPECT_EQ(cli_cases::digest(run(args, "4").out), d1) << args[0];
    EXPECT_EQ(cli_cases::digest(run(args, "8").out), d1) << args[0];
  }
}

TEST(Cli, DocumentRoundTripsByteIdentical) {
  for (const auto& args : cli_cases::per_verb()) {
    const json doc = json::parse(run(args).out);
    const std::string once = doc.dump(2);
    EXPECT_EQ(json::parse(once).dump(2), once) << args[0];
    // digest recomputes from the body
    json body = {{"verb", doc["verb"]}, {"parameters", doc["parameters"]}, {"result", doc["result"]}};
    EXPECT_EQ(sumfree::report::hex64(sumfree::report::fnv1a(body.dump())), doc["manifest"]["result_digest"]);
  }
}

TEST(Cli, CountCsv) {
  const auto o = run({"count", "--family", "sf1", "--n", "5", "--n-min", "3", "--format", "csv"});
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "n,family,exact_count,ratio");
  EXPECT_NE(o.out.find("\n3,SF1,6,"), std::string::npos);
  EXPECT_NE(o.out.find("\n5,SF1,16,"), std::string::npos);
}

TEST(Cli, CountValues) {
  const json doc = json::parse(run({"count", "--family", "sf2", "--n", "14"}).out);
  const json& last = doc["result"]["records"].back();
  EXPECT_EQ(last["exact_count"], 13887);
  EXPECT_EQ(last["family"], "SF2");
}

TEST(Cli, SetFileInput) {
  const std::string path = ::testing::TempDir() + "sumfree_set.txt";
  {
    std::ofstream f(path);
    f << "# F14 in [20]\n1\n4\n6\n9\n11\n14\n16\n19\n";
  }
  const auto a = run({"classify", "--set-file", path, "--n", "20", "--eta", "1e-10"});
  const auto b = run({"classify", "--set", "1,4,6,9,11,14,16,19", "--n", "20", "--eta", "1e-10"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(cli_cases::digest(a.out), cli_cases::digest(b.out));
}

TEST(Cli, MaxNOverride) {
  ::setenv("SUMFREE_MAX_N", "10", 1);
  EXPECT_EQ(run({"count", "--family", "sf1", "--n", "12"}).status, 2);
  ::setenv("SUMFREE_MAX_N", "nope", 1);
  EXPECT_EQ(run({"count", "--family", "sf1", "--n", "5"}).status, 2);
  ::unsetenv("SUMFREE_MAX_N");
  EXPECT_EQ(run({"count", "--family", "sf1", "--n", "12"}).status, 0);
}
