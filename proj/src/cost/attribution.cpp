// SPDX-License-Identifier: Apache-2.0
#include "spark/cost/attribution.hpp"

namespace spark::cost {

namespace {
std::uint64_t gap(std::uint64_t slower, std::uint64_t faster) {
  return slower > faster ? slower - faster : 0;
}
}  // namespace

Attribution attribution_report(const RunSummary& full, const RunSummary& no_sparsity,
                               const RunSummary& serial_pim) {
  if (full.instance != no_sparsity.instance || full.instance != serial_pim.instance) {
    throw AttributionError("attribution runs refer to different instances: '" + full.instance +
                           "', '" + no_sparsity.instance + "', '" + serial_pim.instance + "'");
  }
  if (full.line_bits == 0) throw AttributionError("line_bits must be positive");
  Attribution a;
  a.sparsity_delta = gap(no_sparsity.cycles, full.cycles);
  a.parallel_delta = gap(serial_pim.cycles, full.cycles);
  const std::uint64_t bits = full.word_macs * full.word_bits;
  a.movement_delta = (bits + full.line_bits - 1) / full.line_bits;
  const double total =
      static_cast<double>(a.sparsity_delta + a.parallel_delta + a.movement_delta);
  if (total > 0) {
    a.sparsity_pct = 100.0 * static_cast<double>(a.sparsity_delta) / total;
    a.parallel_pct = 100.0 * static_cast<double>(a.parallel_delta) / total;
    a.movement_pct = 100.0 * static_cast<double>(a.movement_delta) / total;
  }
  return a;
}

}  // namespace spark::cost
