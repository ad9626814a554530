// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"
#include "spark/ilp/solution.hpp"
#include "spark/sim/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spark::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kMismatch = 2, kCapExceeded = 3 };

/// Config sources shared by every subcommand, lowest precedence first:
/// built-in defaults, the file named by SPARK_SIM_CONFIG or --config (the
/// flag wins), then explicit solve flags.
struct ConfigSources {
  std::optional<std::string> config_path;
  std::vector<std::string> flags;  // e.g. {"--no-sa", "--epsilon", "0.5"}
};

sim::SimConfig resolve_config(const ConfigSources& sources);

struct SolveOptions {
  std::string path;
  std::optional<std::string> json_out;  // "-" for stdout
  std::optional<std::string> csv_out;
  ConfigSources config;
};
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::string kind;
  std::string params;  // k=v,... as accepted by gen references
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
};
int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);

enum class Verdict { Pass, Fail, Skip };

struct VerifyRow {
  std::string instance;
  Verdict verdict = Verdict::Skip;
  std::string engine;  // status or objective
  std::string oracle;
  std::string detail;
};

/// Compares an engine answer with the exhaustive oracle.
VerifyRow compare_with_oracle(const IlpProblem& problem, const Solution& engine);

struct VerifyOptions {
  std::vector<std::string> paths;
  std::size_t suite = 0;  // number of bundled dense instances to add
  std::uint64_t suite_seed = 1;
  ConfigSources config;
};
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string spec_path;
  std::optional<std::string> csv_out;
  unsigned threads = 0;
  ConfigSources config;
};
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spark::cli
