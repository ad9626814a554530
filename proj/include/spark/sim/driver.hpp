// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"
#include "spark/sim/config.hpp"
#include "spark/sim/report.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spark::sim {

/// An engine failure, carrying the report as far as the run got.
class SimError : public std::runtime_error {
 public:
  SimError(const std::string& what, SimReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SimReport& partial() const { return partial_; }

 private:
  SimReport partial_;
};

/// Executes load and sparsity detection, then either the sparse solve or
/// the Jacobi relaxation followed by branch and bound. Continuous problems
/// stop after the relaxation.
SimReport run(const IlpProblem& problem, const SimConfig& config, const std::string& label = {});

struct LabeledConfig {
  std::string label;
  SimConfig config;
};

/// Every problem under every config, instance-major. Runs may execute on
/// several threads; the result order never depends on it. A failed run
/// yields its partial report with `error` set.
std::vector<SimReport> run_matrix(std::span<const IlpProblem> problems,
                                  std::span<const LabeledConfig> configs, unsigned threads = 0);

}  // namespace spark::sim
