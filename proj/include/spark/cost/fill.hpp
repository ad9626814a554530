// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/cost/ledger.hpp"

#include <cstdint>
#include <vector>

namespace spark::cost {

struct FillConfig {
  std::uint64_t l1_lines = 1024;
  std::uint32_t l2_latency_cycles = 5;
  std::uint32_t dram_latency_cycles = 50;
  std::uint32_t prefetch_stride = 2;  // lines fetched ahead of each demand access
  bool prefetch = true;
  bool l2_holds_working_set = true;   // false: every fill comes from DRAM

  static FillConfig from(const CostConfig& cost, std::uint64_t l1_lines,
                         std::uint64_t working_set_lines, bool prefetch);
};

/// Line-granular L1 residency over a fixed working set, simulated against
/// the compute clock. Only computed lines are installed in L1; the victim
/// is the resident line computed least recently. Prefetched lines wait in a
/// stride-deep fill buffer until their first compute, so prefetching can
/// shorten a miss but never changes which lines are resident.
class FillModel {
 public:
  FillModel(FillConfig config, std::uint64_t total_lines);

  struct Access {
    std::uint64_t stall = 0;
    std::uint32_t l2_fills = 0;    // L2 -> L1 transfers started by this access
    std::uint32_t dram_fills = 0;  // DRAM -> L2 transfers started by this access
  };

  /// Demand access to `line` at cycle `now`. Returns the stall before the
  /// line can be computed on plus the fills it triggered.
  Access access(std::uint64_t line, std::uint64_t now);

  bool resident(std::uint64_t line) const { return lines_.at(line).resident; }
  std::uint64_t total_stall() const { return total_stall_; }
  std::uint64_t l2_fills() const { return l2_fills_; }
  std::uint64_t dram_fills() const { return dram_fills_; }
  /// Misses that found no prefetch for the line.
  std::uint64_t demand_misses() const { return demand_misses_; }
  std::uint64_t prefetch_hits() const { return prefetch_hits_; }
  const FillConfig& config() const { return config_; }

 private:
  struct Line {
    bool resident = false;
    bool in_l2 = false;
    std::uint64_t last_computed = 0;  // access sequence number
  };
  struct Pending {
    std::uint64_t line;
    std::uint64_t ready_at;
  };

  std::uint64_t latency(Line& l, Access& acc);
  void install(std::uint64_t line);
  void prefetch_after(std::uint64_t line, std::uint64_t now, Access& acc);

  FillConfig config_;
  std::vector<Line> lines_;
  std::vector<Pending> buffer_;  // oldest first
  std::uint64_t occupied_ = 0;
  std::uint64_t capacity_;
  std::uint64_t sequence_ = 0;
  std::uint64_t port_free_ = 0;
  std::uint64_t total_stall_ = 0;
  std::uint64_t l2_fills_ = 0;
  std::uint64_t dram_fills_ = 0;
  std::uint64_t demand_misses_ = 0;
  std::uint64_t prefetch_hits_ = 0;
};

}  // namespace spark::cost
