// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace spark::cost {

enum class Event : std::uint8_t {
  RblDischarge,
  RowActivate,
  SaOp,
  ArOp,
  SubOp,
  DivOp,
  QueueRw,
  LineFillL2,
  LineFillDram,
};
inline constexpr std::size_t kEventCount = 9;

enum class Phase : std::uint8_t { FetchDetect, Sa, Sle, Bnb, FillStall };
inline constexpr std::size_t kPhaseCount = 5;

enum class Component : std::uint8_t { PimCompute, ShiftAddAr, SubDiv, Queues, L2ToL1, DramToL2 };
inline constexpr std::size_t kComponentCount = 6;

/// Physical and per-operation constants. Energies are per event; the
/// near-memory logic figures (sa, ar, sub, queue) are estimates.
struct CostConfig {
  double clock_ns = 2.0;
  double sram_latency_ns = 2.0;
  double move_pj_per_bit = 1.0;
  double rbl_cap_f = 40e-15;
  double read_cap_f = 35e-15;
  double vdd = 1.0;
  double swing_fraction = 0.5;  // bitline swing as a fraction of vdd
  double div_pj = 0.15;
  double div_ns = 0.5;
  double sub_pj = 0.05;
  double sub_ns = 0.5;
  double sa_pj = 0.05;
  double ar_pj = 0.1;
  double queue_pj = 0.02;
  double queue_ns = 0.5;
  std::uint64_t l2_bytes = 4ULL << 20;
  std::uint64_t dram_bytes = 2ULL << 30;
  std::uint32_t line_bytes = 64;
  std::uint32_t prefetch_stride_lines = 2;
  double l2_latency_ns = 10.0;
  double dram_latency_ns = 100.0;
  std::uint32_t macs_per_cycle = 32;

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
  bool operator==(const CostConfig&) const = default;
};

/// Per-event energy in attojoules and issue latency in cycles.
struct EventCost {
  std::int64_t energy_aj;
  std::uint32_t cycles;
};

EventCost event_cost(const CostConfig& config, Event event);
Component component_of(Event event);

/// C * V * dV per discharge event.
double rbl_energy_pj(const CostConfig& config, std::uint64_t events);

std::uint32_t ns_to_cycles(const CostConfig& config, double ns);

const char* to_string(Event e);
const char* to_string(Phase p);
const char* to_string(Component c);
/// Throws std::invalid_argument for an unknown name.
Event parse_event(std::string_view name);

inline constexpr std::int64_t kAttojoulesPerPicojoule = 1'000'000;

/// Cycle and energy accounting for one simulation. Energy is kept in
/// integer attojoules so that totals and component sums agree exactly.
class Ledger {
 public:
  explicit Ledger(const CostConfig& config = {});

  void set_phase(Phase phase) { phase_ = phase; }
  Phase phase() const { return phase_; }

  /// Adds `count` events: energy to the event's component and
  /// count * latency cycles to the current phase.
  void record(Event event, std::uint64_t count);
  /// Same energy as record(); cycles assume `units` identical units working
  /// side by side.
  void record_parallel(Event event, std::uint64_t count, std::uint64_t units);
  void add_cycles(Phase phase, std::uint64_t cycles);
  void add_cycles(std::uint64_t cycles) { add_cycles(phase_, cycles); }

  std::uint64_t cycles(Phase p) const { return cycles_[static_cast<std::size_t>(p)]; }
  std::uint64_t total_cycles() const { return total_cycles_; }
  std::int64_t energy_aj(Component c) const { return energy_[static_cast<std::size_t>(c)]; }
  std::int64_t total_energy_aj() const { return total_energy_; }
  double energy_pj(Component c) const;
  double total_energy_pj() const;
  std::uint64_t events(Event e) const { return events_[static_cast<std::size_t>(e)]; }

  /// Sum of parts equals the running totals.
  bool conserved() const;
  void merge(const Ledger& other);

  const CostConfig& config() const { return config_; }

 private:
  CostConfig config_;
  std::array<EventCost, kEventCount> costs_{};
  Phase phase_ = Phase::FetchDetect;
  std::array<std::uint64_t, kPhaseCount> cycles_{};
  std::array<std::int64_t, kComponentCount> energy_{};
  std::array<std::uint64_t, kEventCount> events_{};
  std::uint64_t total_cycles_ = 0;
  std::int64_t total_energy_ = 0;
};

}  // namespace spark::cost
