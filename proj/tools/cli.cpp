// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include "spark/ilp/generate.hpp"
#include "spark/ilp/io.hpp"
#include "spark/oracle/brute_force.hpp"
#include "spark/sim/bench.hpp"
#include "spark/sim/driver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace spark::cli {

namespace {

void write_output(const std::string& target, const std::string& text, std::ostream& out) {
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + target + "'");
  file << text;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

std::string describe(const Solution& s) {
  if (s.status != Status::Optimal) return to_string(s.status);
  return to_string(s.objective);
}

}  // namespace

sim::SimConfig resolve_config(const ConfigSources& sources) {
  sim::SimConfig config;
  std::optional<std::string> path = sources.config_path;
  if (!path) {
    if (const char* env = std::getenv("SPARK_SIM_CONFIG"); env && *env) path = env;
  }
  if (path) sim::apply_config_file(config, *path);
  sim::apply_flags(config, sources.flags);
  return config;
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  IlpProblem problem;
  sim::SimConfig config;
  try {
    problem = load_problem(o.path);
    config = resolve_config(o.config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  sim::SimReport report;
  int code = kOk;
  try {
    report = sim::run(problem, config);
  } catch (const sim::SimError& e) {
    err << "error: " << e.what() << '\n';
    report = e.partial();
    code = kUsage;
  }
  if (!o.json_out || *o.json_out != "-") out << sim::to_text(report);
  if (o.json_out) write_output(*o.json_out, sim::to_json(report), out);
  if (o.csv_out) write_output(*o.csv_out, sim::csv_header() + sim::csv_row(report), out);
  if (code == kOk && report.solution.status == Status::NotConverged) code = kCapExceeded;
  return code;
}

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  try {
    std::string ref = "gen:" + o.kind + ":seed=" + std::to_string(o.seed);
    if (!o.params.empty()) ref += "," + o.params;
    const auto text = serialize_json(sim::generate_from_ref(ref));
    write_output(o.out_path.value_or("-"), text, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

VerifyRow compare_with_oracle(const IlpProblem& problem, const Solution& engine) {
  VerifyRow row;
  row.instance = problem.name;
  row.engine = describe(engine);
  Solution truth;
  try {
    truth = oracle::brute_force_ilp(problem);
  } catch (const oracle::UnboundedBoxError& e) {
    row.detail = e.what();
    return row;
  } catch (const oracle::EnumerationCapError& e) {
    row.detail = e.what();
    return row;
  }
  row.oracle = describe(truth);
  if (engine.status == Status::NotConverged) {
    row.detail = "engine did not converge";
    return row;
  }
  const bool same_status = (engine.status == Status::Optimal) == (truth.status == Status::Optimal);
  const bool same_value = truth.status != Status::Optimal || engine.objective == truth.objective;
  bool engine_point_ok = true;
  if (engine.status == Status::Optimal) {
    engine_point_ok = engine.x.size() == problem.n() &&
                      check_feasibility(problem, std::span<const Rational>(engine.x)).feasible &&
                      evaluate_objective(problem, std::span<const Rational>(engine.x)) == engine.objective;
  }
  row.verdict = same_status && same_value && engine_point_ok ? Verdict::Pass : Verdict::Fail;
  if (row.verdict == Verdict::Fail) {
    row.detail = engine_point_ok ? "objective differs: engine " + row.engine + " vs oracle " + row.oracle
                                 : "engine point is infeasible or does not match its objective";
  }
  return row;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<IlpProblem> problems;
  sim::SimConfig config;
  try {
    config = resolve_config(o.config);
    // The verdict is about the final answer, so a sparse run always gets its
    // dense cross-check.
    config.flags.verify_sa = true;
    for (const auto& p : o.paths) problems.push_back(load_problem(p));
    for (auto& p : dense_suite(o.suite, o.suite_seed)) problems.push_back(std::move(p));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  std::size_t pass = 0, fail = 0, skip = 0;
  out << "verdict instance engine oracle detail\n";
  for (const auto& problem : problems) {
    VerifyRow row;
    try {
      row = compare_with_oracle(problem, sim::run(problem, config).solution);
    } catch (const std::exception& e) {
      row.instance = problem.name;
      row.verdict = Verdict::Fail;
      row.detail = e.what();
    }
    (row.verdict == Verdict::Pass ? pass : row.verdict == Verdict::Fail ? fail : skip)++;
    out << verdict_name(row.verdict) << ' ' << row.instance << ' '
        << (row.engine.empty() ? "-" : row.engine) << ' ' << (row.oracle.empty() ? "-" : row.oracle)
        << (row.detail.empty() ? "" : " " + row.detail) << '\n';
  }
  out << "summary pass=" << pass << " fail=" << fail << " skip=" << skip << '\n';
  return fail == 0 ? kOk : kMismatch;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  std::string csv;
  try {
    const auto config = resolve_config(o.config);
    const std::filesystem::path spec_path(o.spec_path);
    const auto spec =
        sim::parse_bench_spec(read_text_file(spec_path), config, spec_path.parent_path());
    csv = sim::bench_csv(spec, o.threads);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  write_output(o.csv_out.value_or("-"), csv, out);
  return kOk;
}

namespace {

/// Registers the solve flags on `cmd`; the callbacks append the
/// equivalent tokens to `sources.flags` in command-line order.
void add_config_flags(CLI::App* cmd, ConfigSources& sources) {
  cmd->add_option("--config", sources.config_path, "Key/value config file");
  for (const char* name : {"--no-sa", "--no-prefetch", "--serial-pim", "--exact-div", "--verify-sa"}) {
    cmd->add_flag_callback(name, [&sources, name] { sources.flags.emplace_back(name); });
  }
  for (const char* name : {"--epsilon", "--max-iters", "--depth-cap", "--node-cap", "--seed"}) {
    cmd->add_option_function<std::string>(
        name, [&sources, name](const std::string& v) {
          sources.flags.emplace_back(name);
          sources.flags.push_back(v);
        });
  }
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle and energy model of an in-cache ILP accelerator", "spark_sim"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Simulate one problem file");
  solve_cmd->add_option("path", solve.path, "JSON or MPS problem")->required();
  solve_cmd->add_option("--json", solve.json_out, "Write the full report as JSON ('-' for stdout)");
  solve_cmd->add_option("--csv", solve.csv_out, "Write a one-row CSV report ('-' for stdout)");
  add_config_flags(solve_cmd, solve.config);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a problem instance");
  gen_cmd->add_option("kind", gen.kind, "investment, transportation or random")->required();
  std::vector<std::pair<std::string, std::string>> gen_params;
  for (const char* key : {"n", "m", "general-rows", "sources", "dests", "max-limit", "max-price",
                          "max-income", "max-cost", "max-demand", "max-coeff", "max-box"}) {
    std::string k = key;
    gen_cmd->add_option_function<std::uint64_t>("--" + k, [&gen_params, k](std::uint64_t v) {
      std::string snake = k;
      std::replace(snake.begin(), snake.end(), '-', '_');
      gen_params.emplace_back(snake, std::to_string(v));
    });
  }
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out,-o", gen.out_path, "Output file (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compare engine answers with the exhaustive oracle");
  verify_cmd->add_option("paths", verify.paths, "Problem files");
  verify_cmd->add_option("--suite", verify.suite, "Add N bundled random dense instances");
  verify_cmd->add_option("--suite-seed", verify.suite_seed, "Seed of the bundled suite");
  add_config_flags(verify_cmd, verify.config);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark matrix and emit CSV");
  bench_cmd->add_option("spec", bench.spec_path, "Matrix spec file")->required();
  bench_cmd->add_option("--csv", bench.csv_out, "Output file (default stdout)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: one per core)");
  add_config_flags(bench_cmd, bench.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*solve_cmd) return cmd_solve(solve, out, err);
  if (*gen_cmd) {
    for (const auto& [k, v] : gen_params) gen.params += (gen.params.empty() ? "" : ",") + k + "=" + v;
    return cmd_gen(gen, out, err);
  }
  if (*verify_cmd) return cmd_verify(verify, out, err);
  return cmd_bench(bench, out, err);
}

}  // namespace spark::cli
