// SPDX-License-Identifier: Apache-2.0
#include "spark/sim/datapath.hpp"

#include "spark/fc/sparsity.hpp"

#include <algorithm>
#include <cmath>

namespace spark::sim {

using cost::Event;
using cost::Phase;

namespace {

std::vector<std::vector<std::int64_t>> stored_vectors(const IlpProblem& p,
                                                      const std::vector<std::size_t>& order) {
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i : order) {
    auto words = p.constraints[i].coeffs;
    words.push_back(p.constraints[i].rhs);
    rows.push_back(std::move(words));
  }
  auto cost_words = p.cost;
  cost_words.push_back(0);
  rows.push_back(std::move(cost_words));
  return rows;
}

std::uint64_t total_lines(const pim::CacheGeometry& g, const IlpProblem& p) {
  const std::uint64_t per_row = (p.n() + 1 + g.words_per_line() - 1) / g.words_per_line();
  return per_row * (p.m() + 1);
}

}  // namespace

Datapath::Datapath(const SimConfig& config, const IlpProblem& problem)
    : config_(config),
      problem_(problem),
      banks_(config.geometry),
      ledger_(config.cost),
      fill_(cost::FillConfig::from(config.cost, config.geometry.capacity_lines(),
                                   total_lines(config.geometry, problem),
                                   config.flags.prefetch_enabled),
            total_lines(config.geometry, problem)) {
  if (config_.flags.approx_div_enabled) divider_.emplace(div::DivConfig{config_.div_m_bits, 0.01});
  const auto order = fc::storage_order(problem);
  stored_words_ = stored_vectors(problem, order);
  stored_id_.assign(problem.m(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) stored_id_[order[k]] = k;
  cost_row_ = order.size();
  banks_.store_all(stored_words_);
  batch_rounds_.assign(config_.geometry.groups(), 0);
}

void Datapath::touch_lines(std::size_t row_id) {
  const auto& place = banks_.mapping().rows.at(row_id);
  for (std::size_t l = 0; l < place.lines; ++l) {
    const auto acc = fill_.access(place.first_line + l, ledger_.total_cycles());
    ledger_.record(Event::LineFillL2, acc.l2_fills);
    ledger_.record(Event::LineFillDram, acc.dram_fills);
    ledger_.add_cycles(Phase::FillStall, acc.stall);
  }
}

void Datapath::load() {
  const auto& g = config_.geometry;
  const auto saved = ledger_.phase();
  ledger_.set_phase(Phase::FetchDetect);
  for (std::size_t id = 0; id < stored_words_.size(); ++id) {
    touch_lines(id);
    const std::size_t words = stored_words_[id].size();
    const std::uint64_t bank_rows = (words + g.words_per_bank_row() - 1) / g.words_per_bank_row();
    ledger_.record(Event::RowActivate, bank_rows);  // read port pass feeding the nonzero counters
    ledger_.add_cycles(bank_rows);
    if (id != cost_row_) {
      ledger_.record(Event::SubOp, 1);    // nonzero count compared against 1
      ledger_.record(Event::QueueRw, 1);  // index written to the CC or C array
    }
  }
  ledger_.set_phase(saved);
}

void Datapath::begin_batch() {
  if (in_batch_) return;
  in_batch_ = true;
  std::fill(batch_rounds_.begin(), batch_rounds_.end(), 0);
  batch_word_macs_ = 0;
}

void Datapath::end_batch() {
  if (!in_batch_) return;
  in_batch_ = false;
  const std::uint64_t rounds = *std::max_element(batch_rounds_.begin(), batch_rounds_.end());
  const std::uint64_t per_cycle = config_.flags.serial_pim ? 1 : config_.cost.macs_per_cycle;
  const std::uint64_t throughput = (batch_word_macs_ + per_cycle - 1) / per_cycle;
  ledger_.add_cycles(std::max(rounds, throughput));
}

void Datapath::charge_rounds(std::size_t row_id) {
  const auto& g = config_.geometry;
  const auto& place = banks_.mapping().rows.at(row_id);
  for (std::size_t l = 0; l < place.lines; ++l) {
    const std::size_t words =
        std::min<std::size_t>(g.words_per_line(), place.words - l * g.words_per_line());
    const std::uint64_t bank_rows = (words + g.words_per_bank_row() - 1) / g.words_per_bank_row();
    const auto slot = banks_.mapping().slot(place.first_line + l, g);
    batch_rounds_[slot.group] += bank_rows * g.slices();
  }
  batch_word_macs_ += place.words;
}

std::int64_t Datapath::run_mac(std::size_t row_id, std::span<const std::int64_t> words,
                               std::span<const std::int64_t> x, std::vector<std::int64_t>* lanes) {
  const bool own_batch = !in_batch_;
  if (own_batch) begin_batch();
  touch_lines(row_id);
  std::vector<std::int64_t> padded(x.begin(), x.end());
  padded.resize(words.size(), 0);  // the D lane carries no X value
  pim::PimEvents ev;
  auto products = banks_.lane_products(row_id, padded, ev);
  std::int64_t acc = 0;
  for (auto p : products) acc += p;
  if (acc != pim::reference_mac(words, padded)) ++mismatches_;
  ledger_.record(Event::RowActivate, ev.row_activations);
  ledger_.record(Event::RblDischarge, ev.rbl_discharges);
  ledger_.record(Event::SaOp, ev.shift_adds);
  ledger_.record(Event::ArOp, ev.adder_reductions);
  events_ += ev;
  charge_rounds(row_id);
  if (own_batch) end_batch();
  if (lanes) {
    products.resize(x.size());
    *lanes = std::move(products);
  }
  return acc;
}

std::int64_t Datapath::mac_constraint(std::size_t constraint, std::span<const std::int64_t> x) {
  const std::size_t id = stored_id_.at(constraint);
  return run_mac(id, stored_words_[id], x, nullptr);
}

std::vector<std::int64_t> Datapath::lane_products(std::size_t constraint,
                                                  std::span<const std::int64_t> x) {
  const std::size_t id = stored_id_.at(constraint);
  std::vector<std::int64_t> lanes;
  run_mac(id, stored_words_[id], x, &lanes);
  return lanes;
}

std::int64_t Datapath::mac_cost(std::span<const std::int64_t> x) {
  return run_mac(cost_row_, stored_words_[cost_row_], x, nullptr);
}

std::vector<std::int64_t> Datapath::cost_lane_products(std::span<const std::int64_t> x) {
  std::vector<std::int64_t> lanes;
  run_mac(cost_row_, stored_words_[cost_row_], x, &lanes);
  return lanes;
}

std::int64_t Datapath::divide(std::int64_t numerator, std::int64_t divisor) {
  if (divider_) return divider_->divide_fixed(numerator, divisor, 0);
  return div::exact_divide_fixed(numerator, divisor, 0);
}

std::int64_t PimJacobiBackend::mac(std::size_t constraint, std::span<const std::int64_t> x) {
  if (!open_) {
    dp_.begin_batch();
    open_ = true;
  }
  return dp_.mac_constraint(constraint, x);
}

std::int64_t PimJacobiBackend::divide(std::int64_t numerator, std::int64_t divisor) {
  return dp_.divide(numerator, divisor);
}

void PimJacobiBackend::iteration_overhead(std::size_t rows) {
  if (open_) {
    dp_.end_batch();
    open_ = false;
  }
  auto& ledger = dp_.ledger();
  const auto units = dp_.banks_count();
  ledger.record_parallel(Event::SubOp, 3 * rows, units);  // numerator, |delta|, L1 accumulate
  ledger.record_parallel(Event::DivOp, rows, units);
  ledger.record_parallel(Event::QueueRw, 2 * rows, units);  // Iter2 write, Iter2 -> Iter1 copy
  ledger.record(Event::SubOp, 1);                           // L1 against the error limit
}

sle::FixedPointConfig fixed_point_config(const SimConfig& config) {
  sle::FixedPointConfig f;
  f.frac_bits = config.frac_bits;
  f.x_width = static_cast<int>(config.geometry.x_width);
  f.max_iters = config.max_iters;
  if (config.epsilon > 0) {
    const double ulps = std::ceil(config.epsilon / f.ulp());
    f.tolerance_ulps_per_var = static_cast<std::uint64_t>(std::max(1.0, ulps));
  }
  return f;
}

sle::SleResult solve_on_datapath(Datapath& dp, const IlpProblem& problem,
                                 const sle::SquareSystem& system) {
  if (!system.fixed.empty()) {
    std::vector<std::int64_t> lanes(problem.n(), 0);
    for (const auto& [var, value] : system.fixed) lanes[var] = value;
    dp.begin_batch();
    for (std::size_t row : system.rows) dp.mac_constraint(row, lanes);
    dp.end_batch();
    dp.ledger().record_parallel(Event::SubOp, system.size(), dp.banks_count());
  }
  PimJacobiBackend backend(dp);
  return sle::solve_sle_fixed(system, problem.n(), fixed_point_config(dp.config()), backend);
}

sle::SleResult PimBnbBackend::relax(const IlpProblem& problem, const sle::SquareSystem& system) {
  auto& ledger = dp_.ledger();
  const auto saved = ledger.phase();
  ledger.set_phase(Phase::Sle);
  auto res = solve_on_datapath(dp_, problem, system);
  ledger.set_phase(saved);
  if (!first_relax_end_) first_relax_end_ = ledger.total_cycles();
  return res;
}

void PimBnbBackend::verify(std::size_t rows, std::size_t) {
  auto& ledger = dp_.ledger();
  ledger.record_parallel(Event::QueueRw, rows, dp_.banks_count());
  ledger.record_parallel(Event::SubOp, rows, dp_.banks_count());
}

void PimBnbBackend::prune_batch(std::size_t nodes) {
  dp_.ledger().record_parallel(Event::SubOp, nodes, bnb::kPruneLanes);
}

void PimBnbBackend::expand(std::size_t children) {
  // Branch value, variable and parent arrays plus the bound array.
  dp_.ledger().record(Event::QueueRw, 4 * children);
}

double PimBnbBackend::int_tolerance() const {
  return std::ldexp(1.0, -dp_.config().frac_bits);
}

}  // namespace spark::sim
