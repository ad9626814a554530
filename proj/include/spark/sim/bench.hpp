// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"
#include "spark/sim/driver.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spark::sim {

class BenchSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A benchmark matrix. Text form, one directive per line, `#` comments:
///
///   instance path/to/problem.json
///   instance gen:investment:n=5,general_rows=2,seed=7
///   config full
///   config no-sa --no-sa
///   config serial --serial-pim --epsilon 0.01
///
/// Config lines take a label followed by the solve flags understood by the
/// command line. Paths are resolved against the directory of the matrix file.
struct BenchSpec {
  std::vector<IlpProblem> instances;
  std::vector<LabeledConfig> configs;
};

/// Parses a generator reference `gen:<kind>:k=v,...`; `seed` selects the
/// generator seed and the other keys map to the kind's parameters.
IlpProblem generate_from_ref(std::string_view ref);

/// Applies solve flags (`--no-sa`, `--epsilon 0.5`, ...) on top of `config`.
/// Throws ConfigError on an unknown flag or a missing value.
void apply_flags(SimConfig& config, std::span<const std::string> flags);

BenchSpec parse_bench_spec(std::string_view text, const SimConfig& base,
                           const std::filesystem::path& base_dir = {});

/// One CSV row per (instance, config) in spec order, followed by one
/// attribution row per instance when the configs labeled `full`, `no-sa`
/// and `serial-pim` are all present.
std::string bench_csv(const BenchSpec& spec, unsigned threads = 0);

}  // namespace spark::sim
