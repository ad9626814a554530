// SPDX-License-Identifier: Apache-2.0
#include "spark/cost/fill.hpp"

#include <algorithm>
#include <stdexcept>

namespace spark::cost {

FillConfig FillConfig::from(const CostConfig& cost, std::uint64_t l1_lines,
                            std::uint64_t working_set_lines, bool prefetch) {
  FillConfig f;
  f.l1_lines = l1_lines;
  f.l2_latency_cycles = ns_to_cycles(cost, cost.l2_latency_ns);
  f.dram_latency_cycles = ns_to_cycles(cost, cost.dram_latency_ns);
  f.prefetch_stride = cost.prefetch_stride_lines;
  f.prefetch = prefetch;
  f.l2_holds_working_set = working_set_lines * cost.line_bytes <= cost.l2_bytes;
  return f;
}

FillModel::FillModel(FillConfig config, std::uint64_t total_lines)
    : config_(config),
      lines_(total_lines),
      capacity_(std::max<std::uint64_t>(config.l1_lines, 1)) {}

std::uint64_t FillModel::latency(Line& l, Access& acc) {
  const bool from_dram = !l.in_l2 || !config_.l2_holds_working_set;
  l.in_l2 = true;
  ++acc.l2_fills;
  ++l2_fills_;
  if (from_dram) {
    ++acc.dram_fills;
    ++dram_fills_;
  }
  return config_.l2_latency_cycles + (from_dram ? config_.dram_latency_cycles : 0);
}

void FillModel::install(std::uint64_t line) {
  if (occupied_ == capacity_) {
    std::uint64_t victim = lines_.size();
    for (std::uint64_t i = 0; i < lines_.size(); ++i) {
      if (!lines_[i].resident) continue;
      if (victim == lines_.size() || lines_[i].last_computed < lines_[victim].last_computed) {
        victim = i;
      }
    }
    lines_[victim].resident = false;
    --occupied_;
  }
  lines_[line].resident = true;
  ++occupied_;
}

void FillModel::prefetch_after(std::uint64_t line, std::uint64_t now, Access& acc) {
  for (std::uint64_t k = 1; k <= config_.prefetch_stride; ++k) {
    const std::uint64_t next = line + k;
    if (next >= lines_.size()) break;
    if (lines_[next].resident) continue;
    const bool queued = std::any_of(buffer_.begin(), buffer_.end(),
                                    [next](const Pending& p) { return p.line == next; });
    if (queued) continue;
    const std::uint64_t start = std::max(now, port_free_);
    port_free_ = start + 1;
    buffer_.push_back(Pending{next, start + latency(lines_[next], acc)});
    if (buffer_.size() > config_.prefetch_stride) buffer_.erase(buffer_.begin());
  }
}

FillModel::Access FillModel::access(std::uint64_t line, std::uint64_t now) {
  if (line >= lines_.size()) throw std::out_of_range("fill model: line outside working set");
  Access acc;
  Line& l = lines_[line];
  if (!l.resident) {
    const auto hit = std::find_if(buffer_.begin(), buffer_.end(),
                                  [line](const Pending& p) { return p.line == line; });
    const std::uint64_t demand = config_.l2_latency_cycles +
                                 (l.in_l2 && config_.l2_holds_working_set ? 0 : config_.dram_latency_cycles);
    if (hit != buffer_.end()) {
      // A late prefetch is overtaken by a demand fill issued now.
      const std::uint64_t wait = hit->ready_at > now ? hit->ready_at - now : 0;
      acc.stall = std::min(wait, demand);
      buffer_.erase(hit);
      ++prefetch_hits_;
    } else {
      acc.stall = latency(l, acc);
      ++demand_misses_;
    }
    port_free_ = std::max(port_free_, now + 1);
    install(line);
  }
  l.last_computed = ++sequence_;
  if (config_.prefetch) prefetch_after(line, now, acc);
  total_stall_ += acc.stall;
  return acc;
}

}  // namespace spark::cost
