// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"
#include "spark/bnb/branch_and_bound.hpp"
#include "spark/ilp/generate.hpp"
#include "spark/ilp/io.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace spark::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "spark-sim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "spark_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Solve, ExitCodes) {
  EXPECT_EQ(invoke({"solve", test::data_path("invest.json")}).code, kOk);
  EXPECT_EQ(invoke({"solve", test::data_path("missing.json")}).code, kUsage);
  EXPECT_EQ(invoke({"solve"}).code, kUsage);
  EXPECT_EQ(invoke({"bogus"}).code, kUsage);
  const auto bad = scratch("bad.json");
  write_file(bad, "{\"sense\":\"max\"");
  const auto r = invoke({"solve", bad.string()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Solve, JsonToStdoutAndCsvToFile) {
  const auto csv = scratch("invest.csv");
  const auto r = invoke({"solve", test::data_path("invest.json"), "--json", "-", "--csv", csv.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("\"path\": \"sa\""), std::string::npos);
  const auto text = read_text_file(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Solve, MpsInput) {
  const auto r = invoke({"solve", test::data_path("small.mps")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("SMALL"), std::string::npos);
}

TEST(Solve, NodeCapExitsWithCapCode) {
  std::optional<IlpProblem> branching;
  for (const auto& p : dense_suite(40, 1)) {
    bnb::ReferenceBackend backend;
    if (bnb::solve_ilp(p, backend).stats.created > 3) {
      branching = p;
      break;
    }
  }
  ASSERT_TRUE(branching);
  const auto path = scratch("branching.json");
  write_file(path, serialize_json(*branching));
  EXPECT_EQ(invoke({"solve", path.string(), "--no-sa", "--node-cap", "1"}).code, kCapExceeded);
  EXPECT_EQ(invoke({"solve", path.string()}).code, kOk);
}

TEST(Config, FlagBeatsFileBeatsEnvironment) {
  const auto env_conf = scratch("env.conf");
  write_file(env_conf, "max_iters = 7\nepsilon = 0.125\n");
  ::setenv("SPARK_SIM_CONFIG", env_conf.c_str(), 1);
  auto c = resolve_config({});
  EXPECT_EQ(c.max_iters, 7u);
  c = resolve_config({test::data_path("override.conf"), {}});
  EXPECT_EQ(c.max_iters, 500u);
  EXPECT_EQ(c.epsilon, 0.25);
  c = resolve_config({test::data_path("override.conf"), {"--max-iters", "42"}});
  EXPECT_EQ(c.max_iters, 42u);
  EXPECT_EQ(c.epsilon, 0.25);
  ::unsetenv("SPARK_SIM_CONFIG");
  EXPECT_EQ(resolve_config({}).max_iters, sim::SimConfig{}.max_iters);
}

TEST(Gen, SameSeedSameOutput) {
  const auto a = invoke({"gen", "transportation", "--sources", "2", "--dests", "3", "--seed", "9"});
  const auto b = invoke({"gen", "transportation", "--sources", "2", "--dests", "3", "--seed", "9"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  const auto p = parse_problem(a.out);
  EXPECT_EQ(p.n(), 6u);
  EXPECT_EQ(invoke({"gen", "tsp"}).code, kUsage);
  const auto file = scratch("gen.json");
  EXPECT_EQ(invoke({"gen", "investment", "--n", "3", "--seed", "2", "-o", file.string()}).code, kOk);
  EXPECT_EQ(load_problem(file).n(), 3u);
}

TEST(Verify, SuiteAgreesWithOracle) {
  const auto r = invoke({"verify", test::data_path("invest.json"), test::data_path("dense3.json"),
                         "--suite", "10"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_NE(r.out.find("summary pass=12 fail=0 skip=0"), std::string::npos) << r.out;
}

TEST(Verify, BundledSuitePasses) {
  const auto r = invoke({"verify", "--suite", "200"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("summary pass=200 fail=0 skip=0"), std::string::npos) << r.out;
}

TEST(Verify, CorruptedAnswerFails) {
  const auto p = load_problem(test::data_path("invest.json"));
  auto wrong = make_solution(p, Status::Optimal, std::vector<std::int64_t>{3, 1});
  EXPECT_EQ(compare_with_oracle(p, wrong).verdict, Verdict::Fail);
  wrong.objective = 18;
  EXPECT_EQ(compare_with_oracle(p, wrong).verdict, Verdict::Fail);
  const auto right = make_solution(p, Status::Optimal, std::vector<std::int64_t>{2, 2});
  EXPECT_EQ(compare_with_oracle(p, right).verdict, Verdict::Pass);
  const auto infeasible_claim = make_solution(p, Status::Optimal, std::vector<std::int64_t>{3, 2});
  EXPECT_EQ(compare_with_oracle(p, infeasible_claim).verdict, Verdict::Fail);
}

TEST(Verify, UnboundedBoxIsSkipped) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, -1}, 2}, {{0, 1}, 4}});
  const auto row = compare_with_oracle(p, Solution{Status::Optimal, {}, 0});
  EXPECT_EQ(row.verdict, Verdict::Skip);
  EXPECT_FALSE(row.detail.empty());
}

TEST(Bench, WritesCsv) {
  const auto out = scratch("bench.csv");
  const auto r = invoke({"bench", test::data_path("matrix.spec"), "--csv", out.string(), "--threads", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto text = read_text_file(out);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
  EXPECT_EQ(invoke({"bench", test::data_path("missing.spec")}).code, kUsage);
}

}  // namespace
}  // namespace spark::cli
