// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spark::cost {

struct RunSummary {
  std::string instance;
  std::uint64_t cycles = 0;
  std::uint64_t word_macs = 0;   // PIM multiply-accumulates on stored words
  std::uint32_t word_bits = 16;
  std::uint32_t line_bits = 512;
};

struct Attribution {
  std::uint64_t movement_delta = 0;
  std::uint64_t parallel_delta = 0;
  std::uint64_t sparsity_delta = 0;
  double movement_pct = 0;
  double parallel_pct = 0;
  double sparsity_pct = 0;
};

class AttributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Splits the speedup of `full` into three factors:
///  - sparsity: cycles saved against the run with the sparse path disabled;
///  - parallel compute: cycles saved against the one-MAC-per-cycle run;
///  - data movement: line transfers a load/compute core would have needed
///    for the operands the full run consumed in place.
/// Each share is a percentage of the sum of the three deltas; negative
/// deltas count as zero.
Attribution attribution_report(const RunSummary& full, const RunSummary& no_sparsity,
                               const RunSummary& serial_pim);

}  // namespace spark::cost
