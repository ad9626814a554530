// SPDX-License-Identifier: Apache-2.0
#include "spark/cost/ledger.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spark::cost {

void CostConfig::validate() const {
  const double reals[] = {clock_ns, sram_latency_ns, move_pj_per_bit, rbl_cap_f, read_cap_f, vdd,
                          swing_fraction, div_pj, div_ns, sub_pj, sub_ns, sa_pj, ar_pj, queue_pj,
                          queue_ns, l2_latency_ns, dram_latency_ns};
  for (double v : reals) {
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("cost config values must be > 0");
  }
  if (l2_bytes == 0 || dram_bytes == 0 || line_bytes == 0 || prefetch_stride_lines == 0 ||
      macs_per_cycle == 0) {
    throw std::invalid_argument("cost config sizes must be > 0");
  }
}

namespace {

std::int64_t pj_to_aj(double pj) { return std::llround(pj * kAttojoulesPerPicojoule); }

}  // namespace

std::uint32_t ns_to_cycles(const CostConfig& c, double ns) {
  return static_cast<std::uint32_t>(std::ceil(ns / c.clock_ns - 1e-9));
}

double rbl_energy_pj(const CostConfig& c, std::uint64_t events) {
  const double per_event = c.rbl_cap_f * c.vdd * (c.vdd * c.swing_fraction) * 1e12;
  return per_event * static_cast<double>(events);
}

EventCost event_cost(const CostConfig& c, Event e) {
  const double line_pj = c.line_bytes * 8.0 * c.move_pj_per_bit;
  switch (e) {
    case Event::RblDischarge: return {pj_to_aj(rbl_energy_pj(c, 1)), 0};
    case Event::RowActivate:
      return {pj_to_aj(c.read_cap_f * c.vdd * (c.vdd * c.swing_fraction) * 1e12), 0};
    case Event::SaOp: return {pj_to_aj(c.sa_pj), 0};
    case Event::ArOp: return {pj_to_aj(c.ar_pj), 0};
    case Event::SubOp: return {pj_to_aj(c.sub_pj), ns_to_cycles(c, c.sub_ns)};
    case Event::DivOp: return {pj_to_aj(c.div_pj), ns_to_cycles(c, c.div_ns)};
    case Event::QueueRw: return {pj_to_aj(c.queue_pj), ns_to_cycles(c, c.queue_ns)};
    case Event::LineFillL2: return {pj_to_aj(line_pj), 0};
    case Event::LineFillDram: return {pj_to_aj(line_pj), 0};
  }
  throw std::invalid_argument("unknown event");
}

Component component_of(Event e) {
  switch (e) {
    case Event::RblDischarge:
    case Event::RowActivate: return Component::PimCompute;
    case Event::SaOp:
    case Event::ArOp: return Component::ShiftAddAr;
    case Event::SubOp:
    case Event::DivOp: return Component::SubDiv;
    case Event::QueueRw: return Component::Queues;
    case Event::LineFillL2: return Component::L2ToL1;
    case Event::LineFillDram: return Component::DramToL2;
  }
  throw std::invalid_argument("unknown event");
}

namespace {
constexpr std::array<const char*, kEventCount> kEventNames{
    "rbl_discharge", "row_activate", "sa_op",         "ar_op",          "sub_op",
    "div_op",        "queue_rw",     "line_fill_l2", "line_fill_dram"};
constexpr std::array<const char*, kPhaseCount> kPhaseNames{"fetch_detect", "sa", "sle", "bnb",
                                                           "fill_stall"};
constexpr std::array<const char*, kComponentCount> kComponentNames{
    "pim_compute", "shift_add_ar", "sub_div", "queues", "l2_to_l1", "dram_to_l2"};
}  // namespace

const char* to_string(Event e) { return kEventNames.at(static_cast<std::size_t>(e)); }
const char* to_string(Phase p) { return kPhaseNames.at(static_cast<std::size_t>(p)); }
const char* to_string(Component c) { return kComponentNames.at(static_cast<std::size_t>(c)); }

Event parse_event(std::string_view name) {
  for (std::size_t i = 0; i < kEventCount; ++i) {
    if (name == kEventNames[i]) return static_cast<Event>(i);
  }
  throw std::invalid_argument("unknown event kind '" + std::string(name) + "'");
}

Ledger::Ledger(const CostConfig& config) : config_(config) {
  config_.validate();
  for (std::size_t i = 0; i < kEventCount; ++i) costs_[i] = event_cost(config_, static_cast<Event>(i));
}

void Ledger::record(Event event, std::uint64_t count) { record_parallel(event, count, 1); }

void Ledger::record_parallel(Event event, std::uint64_t count, std::uint64_t units) {
  if (count == 0) return;
  if (units == 0) throw std::invalid_argument("record_parallel: zero units");
  const auto idx = static_cast<std::size_t>(event);
  const EventCost& c = costs_[idx];
  const auto energy = c.energy_aj * static_cast<std::int64_t>(count);
  energy_[static_cast<std::size_t>(component_of(event))] += energy;
  total_energy_ += energy;
  events_[idx] += count;
  add_cycles(phase_, (count + units - 1) / units * c.cycles);
}

void Ledger::add_cycles(Phase phase, std::uint64_t cycles) {
  cycles_[static_cast<std::size_t>(phase)] += cycles;
  total_cycles_ += cycles;
}

double Ledger::energy_pj(Component c) const {
  return static_cast<double>(energy_aj(c)) / kAttojoulesPerPicojoule;
}

double Ledger::total_energy_pj() const {
  return static_cast<double>(total_energy_) / kAttojoulesPerPicojoule;
}

bool Ledger::conserved() const {
  std::uint64_t cycles = 0;
  for (auto c : cycles_) cycles += c;
  std::int64_t energy = 0;
  for (auto e : energy_) energy += e;
  return cycles == total_cycles_ && energy == total_energy_;
}

void Ledger::merge(const Ledger& other) {
  for (std::size_t i = 0; i < kPhaseCount; ++i) cycles_[i] += other.cycles_[i];
  for (std::size_t i = 0; i < kComponentCount; ++i) energy_[i] += other.energy_[i];
  for (std::size_t i = 0; i < kEventCount; ++i) events_[i] += other.events_[i];
  total_cycles_ += other.total_cycles_;
  total_energy_ += other.total_energy_;
}

}  // namespace spark::cost
