// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/bnb/branch_and_bound.hpp"
#include "spark/cost/fill.hpp"
#include "spark/cost/ledger.hpp"
#include "spark/div/approx_div.hpp"
#include "spark/ilp/problem.hpp"
#include "spark/pim/array.hpp"
#include "spark/sim/config.hpp"
#include "spark/sle/jacobi.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spark::sim {

/// The compute-mode L1 plus its near-memory units for one problem: owns the
/// bank state, the ledger, the fill model and the divider.
class Datapath {
 public:
  Datapath(const SimConfig& config, const IlpProblem& problem);

  /// VFC load: streams every stored row through the fill model and the
  /// nonzero counters.
  void load();

  /// Sum_j C_ij x_j on constraint i (x has n entries; the D lane reads 0).
  std::int64_t mac_constraint(std::size_t constraint, std::span<const std::int64_t> x);
  /// Per-lane products C_ij x_j left in the row buffers.
  std::vector<std::int64_t> lane_products(std::size_t constraint, std::span<const std::int64_t> x);
  std::int64_t mac_cost(std::span<const std::int64_t> x);
  std::vector<std::int64_t> cost_lane_products(std::span<const std::int64_t> x);

  /// MACs issued between begin_batch and end_batch share array rounds;
  /// end_batch charges max(per-group rounds, word MACs / throughput).
  void begin_batch();
  void end_batch();

  std::int64_t divide(std::int64_t numerator, std::int64_t divisor);

  cost::Ledger& ledger() { return ledger_; }
  const cost::Ledger& ledger() const { return ledger_; }
  const pim::PimEvents& pim_events() const { return events_; }
  const cost::FillModel& fill() const { return fill_; }
  const pim::BankState& banks() const { return banks_; }
  const SimConfig& config() const { return config_; }
  std::uint64_t mac_mismatches() const { return mismatches_; }
  std::uint64_t banks_count() const { return config_.geometry.banks; }

 private:
  std::int64_t run_mac(std::size_t row_id, std::span<const std::int64_t> words,
                       std::span<const std::int64_t> x, std::vector<std::int64_t>* lanes);
  void touch_lines(std::size_t row_id);
  void charge_rounds(std::size_t row_id);

  SimConfig config_;
  const IlpProblem& problem_;
  pim::BankState banks_;
  cost::Ledger ledger_;
  cost::FillModel fill_;
  std::optional<div::ApproxDivider> divider_;
  std::vector<std::size_t> stored_id_;  // original constraint -> stored row id
  std::size_t cost_row_ = 0;
  std::vector<std::vector<std::int64_t>> stored_words_;  // by stored row id
  pim::PimEvents events_;
  std::uint64_t mismatches_ = 0;

  bool in_batch_ = false;
  std::vector<std::uint64_t> batch_rounds_;  // per group
  std::uint64_t batch_word_macs_ = 0;
};

/// Fixed-point Jacobi on the modeled array.
class PimJacobiBackend : public sle::JacobiBackend {
 public:
  explicit PimJacobiBackend(Datapath& dp) : dp_(dp) {}
  std::int64_t mac(std::size_t constraint, std::span<const std::int64_t> x) override;
  std::int64_t divide(std::int64_t numerator, std::int64_t divisor) override;
  void iteration_overhead(std::size_t rows) override;

 private:
  Datapath& dp_;
  bool open_ = false;
};

sle::FixedPointConfig fixed_point_config(const SimConfig& config);

/// Jacobi solve of a square system on the datapath, including the MACs that
/// fold substituted variables into the right-hand side.
sle::SleResult solve_on_datapath(Datapath& dp, const IlpProblem& problem,
                                 const sle::SquareSystem& system);

/// Branch-and-bound hooks charged to the datapath.
class PimBnbBackend : public bnb::BnbBackend {
 public:
  explicit PimBnbBackend(Datapath& dp) : dp_(dp) {}
  sle::SleResult relax(const IlpProblem& problem, const sle::SquareSystem& system) override;
  void verify(std::size_t rows, std::size_t n) override;
  void prune_batch(std::size_t nodes) override;
  void expand(std::size_t children) override;
  double int_tolerance() const override;

  /// Cycle count when the first (root) relaxation finished.
  std::optional<std::uint64_t> first_relax_end() const { return first_relax_end_; }

 private:
  Datapath& dp_;
  std::optional<std::uint64_t> first_relax_end_;
};

}  // namespace spark::sim
