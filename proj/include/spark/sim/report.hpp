// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/bnb/branch_and_bound.hpp"
#include "spark/cost/attribution.hpp"
#include "spark/cost/ledger.hpp"
#include "spark/ilp/solution.hpp"
#include "spark/pim/array.hpp"
#include "spark/sa/sparsity_aware.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spark::sim {

enum class Engine : std::uint8_t { Fc, Sa, Sle, Bnb };
const char* to_string(Engine e);

/// Half-open cycle interval during which one engine was active.
struct Span {
  Engine engine;
  std::uint64_t begin;
  std::uint64_t end;
};

enum class Fallback : std::uint8_t { None, NoCandidate, VerifyImproved, VerifyConfirmed };
const char* to_string(Fallback f);

struct SaCandidate {
  sa::PsEntry entry;
  std::optional<Rational> cost;  // set when the candidate passed every constraint
};

struct SimStats {
  std::uint64_t jacobi_iterations = 0;
  std::optional<bnb::BnbStats> bnb;
  pim::PimEvents pim;
  std::uint64_t l2_fills = 0;
  std::uint64_t dram_fills = 0;
  std::uint64_t fill_stall_cycles = 0;
  std::uint64_t demand_misses = 0;
  std::uint64_t prefetch_hits = 0;
  std::uint64_t mac_mismatches = 0;
  bool overflow = false;  // a fixed-point value left the X range and was clamped
  Fallback fallback = Fallback::None;
  std::vector<SaCandidate> sa_candidates;
  std::optional<Solution> sa_solution;  // the sparse path's own answer, before any fallback
};

struct SimReport {
  std::string instance;
  std::string config_label;
  bool sparse = false;      // detection verdict
  std::string path;         // "sa", "dense", "fc" (rejected at detection) or "error"
  Solution solution;
  cost::Ledger ledger;
  std::vector<Span> trace;
  SimStats stats;
  std::string error;        // set when the run failed; other fields hold the partial state
  std::vector<std::string> warnings;

  /// Sum of words times word bits over every MAC, used for attribution.
  cost::RunSummary summary(std::uint32_t word_bits, std::uint32_t line_bits) const;
};

/// Full report as pretty-printed JSON with a trailing newline. Rationals are
/// printed exactly as "p" or "p/q".
std::string to_json(const SimReport& report);

/// "12.345678" from attojoules, exact to the last digit.
std::string format_pj(std::int64_t attojoules);

std::string csv_header();
std::string csv_row(const SimReport& report);
std::string csv_attribution_row(const std::string& instance, const cost::Attribution& a);

/// One-screen summary for the terminal.
std::string to_text(const SimReport& report);

}  // namespace spark::sim
