// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/bnb/branch_and_bound.hpp"
#include "spark/cost/ledger.hpp"
#include "spark/pim/array.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace spark::sim {

struct SimFlags {
  bool sa_enabled = true;
  bool prefetch_enabled = true;
  bool serial_pim = false;
  bool approx_div_enabled = true;
  bool verify_sa = false;  // also run the dense path and keep the better answer

  bool operator==(const SimFlags&) const = default;
};

struct SimConfig {
  pim::CacheGeometry geometry;
  cost::CostConfig cost;
  double epsilon = 0;  // 0: one grid ULP per variable
  std::uint64_t max_iters = 100'000;
  std::uint32_t depth_cap = 64;
  std::uint64_t node_cap = 1'000'000;
  int frac_bits = 8;
  int div_m_bits = 8;
  bnb::BranchRule branch_rule = bnb::BranchRule::HighestFraction;
  std::uint64_t seed = 0;
  SimFlags flags;

  /// Throws std::invalid_argument on an illegal combination.
  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown key
/// or a malformed value.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Plain-text settings: one `key = value` per line, `#` starts a comment.
void apply_config_text(SimConfig& config, std::string_view text);
void apply_config_file(SimConfig& config, const std::filesystem::path& path);

/// Every recognized key with its current value, in a stable order.
std::map<std::string, std::string> describe(const SimConfig& config);

}  // namespace spark::sim
