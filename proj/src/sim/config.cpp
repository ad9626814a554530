// SPDX-License-Identifier: Apache-2.0
#include "spark/sim/config.hpp"

#include "spark/ilp/io.hpp"

#include <charconv>
#include <functional>
#include <sstream>

namespace spark::sim {

void SimConfig::validate() const {
  geometry.validate();
  cost.validate();
  if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
  if (node_cap < 1) throw std::invalid_argument("node_cap must be >= 1");
  if (frac_bits < 0 || frac_bits >= static_cast<int>(geometry.x_width) - 1) {
    throw std::invalid_argument("frac_bits must leave integer bits in x_width");
  }
  if (div_m_bits < 4 || div_m_bits > 16) throw std::invalid_argument("m_bits must lie in [4, 16]");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "off" || text == "no") return false;
  throw ConfigError("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;
using Getter = std::function<std::string(const SimConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

template <class T>
std::string fmt(T v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <class T, class M>
Field number_field(M SimConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) {
            c.*member = parse_number<T>(k, v);
          },
          [member](const SimConfig& c) { return fmt(c.*member); }};
}

template <class T, class M>
Field geometry_field(M pim::CacheGeometry::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) {
            c.geometry.*member = parse_number<T>(k, v);
          },
          [member](const SimConfig& c) { return fmt(c.geometry.*member); }};
}

template <class T, class M>
Field cost_field(M cost::CostConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) {
            c.cost.*member = parse_number<T>(k, v);
          },
          [member](const SimConfig& c) { return fmt(c.cost.*member); }};
}

Field flag_field(bool SimFlags::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) {
            c.flags.*member = parse_bool(k, v);
          },
          [member](const SimConfig& c) { return std::string(c.flags.*member ? "true" : "false"); }};
}

const std::map<std::string, Field, std::less<>>& fields() {
  static const std::map<std::string, Field, std::less<>> table = {
      {"epsilon", number_field<double>(&SimConfig::epsilon)},
      {"max_iters", number_field<std::uint64_t>(&SimConfig::max_iters)},
      {"depth_cap", number_field<std::uint32_t>(&SimConfig::depth_cap)},
      {"node_cap", number_field<std::uint64_t>(&SimConfig::node_cap)},
      {"frac_bits", number_field<int>(&SimConfig::frac_bits)},
      {"div_m_bits", number_field<int>(&SimConfig::div_m_bits)},
      {"seed", number_field<std::uint64_t>(&SimConfig::seed)},
      {"branch_rule",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          if (v == "highest") c.branch_rule = bnb::BranchRule::HighestFraction;
          else if (v == "lowest") c.branch_rule = bnb::BranchRule::LowestFraction;
          else throw ConfigError("bad value '" + std::string(v) + "' for " + std::string(k));
        },
        [](const SimConfig& c) {
          return std::string(c.branch_rule == bnb::BranchRule::HighestFraction ? "highest"
                                                                               : "lowest");
        }}},
      {"sa", flag_field(&SimFlags::sa_enabled)},
      {"prefetch", flag_field(&SimFlags::prefetch_enabled)},
      {"serial_pim", flag_field(&SimFlags::serial_pim)},
      {"approx_div", flag_field(&SimFlags::approx_div_enabled)},
      {"verify_sa", flag_field(&SimFlags::verify_sa)},
      {"banks", geometry_field<std::uint32_t>(&pim::CacheGeometry::banks)},
      {"rows", geometry_field<std::uint32_t>(&pim::CacheGeometry::rows)},
      {"cols", geometry_field<std::uint32_t>(&pim::CacheGeometry::cols)},
      {"word_bits", geometry_field<std::uint32_t>(&pim::CacheGeometry::word_bits)},
      {"line_bytes", geometry_field<std::uint32_t>(&pim::CacheGeometry::line_bytes)},
      {"x_bits", geometry_field<std::uint32_t>(&pim::CacheGeometry::x_bits)},
      {"x_width", geometry_field<std::uint32_t>(&pim::CacheGeometry::x_width)},
      {"clock_ns", cost_field<double>(&cost::CostConfig::clock_ns)},
      {"sram_latency_ns", cost_field<double>(&cost::CostConfig::sram_latency_ns)},
      {"move_pj_per_bit", cost_field<double>(&cost::CostConfig::move_pj_per_bit)},
      {"rbl_cap_f", cost_field<double>(&cost::CostConfig::rbl_cap_f)},
      {"read_cap_f", cost_field<double>(&cost::CostConfig::read_cap_f)},
      {"vdd", cost_field<double>(&cost::CostConfig::vdd)},
      {"swing_fraction", cost_field<double>(&cost::CostConfig::swing_fraction)},
      {"div_pj", cost_field<double>(&cost::CostConfig::div_pj)},
      {"div_ns", cost_field<double>(&cost::CostConfig::div_ns)},
      {"sub_pj", cost_field<double>(&cost::CostConfig::sub_pj)},
      {"sub_ns", cost_field<double>(&cost::CostConfig::sub_ns)},
      {"sa_pj", cost_field<double>(&cost::CostConfig::sa_pj)},
      {"ar_pj", cost_field<double>(&cost::CostConfig::ar_pj)},
      {"queue_pj", cost_field<double>(&cost::CostConfig::queue_pj)},
      {"queue_ns", cost_field<double>(&cost::CostConfig::queue_ns)},
      {"l2_bytes", cost_field<std::uint64_t>(&cost::CostConfig::l2_bytes)},
      {"dram_bytes", cost_field<std::uint64_t>(&cost::CostConfig::dram_bytes)},
      {"cost_line_bytes", cost_field<std::uint32_t>(&cost::CostConfig::line_bytes)},
      {"prefetch_stride_lines", cost_field<std::uint32_t>(&cost::CostConfig::prefetch_stride_lines)},
      {"l2_latency_ns", cost_field<double>(&cost::CostConfig::l2_latency_ns)},
      {"dram_latency_ns", cost_field<double>(&cost::CostConfig::dram_latency_ns)},
      {"macs_per_cycle", cost_field<std::uint32_t>(&cost::CostConfig::macs_per_cycle)},
  };
  return table;
}

}  // namespace

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
  const auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second.set(config, key, value);
}

void apply_config_text(SimConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, trim(std::string_view(body).substr(0, eq)),
                  trim(std::string_view(body).substr(eq + 1)));
  }
}

void apply_config_file(SimConfig& config, const std::filesystem::path& path) {
  apply_config_text(config, read_text_file(path));
}

std::map<std::string, std::string> describe(const SimConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& [key, field] : fields()) out[key] = field.get(config);
  return out;
}

}  // namespace spark::sim
