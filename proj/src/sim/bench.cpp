// SPDX-License-Identifier: Apache-2.0
#include "spark/sim/bench.hpp"

#include "spark/ilp/generate.hpp"
#include "spark/ilp/io.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace spark::sim {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw BenchSpecError("generator parameter " + std::string(key) + ": bad value '" +
                         std::string(text) + "'");
  }
  return v;
}

template <class Params>
using Setter = void (*)(Params&, std::uint64_t);

template <class Params>
void apply_params(Params& params, const std::map<std::string, std::string>& kv,
                  const std::map<std::string_view, Setter<Params>>& setters) {
  for (const auto& [key, value] : kv) {
    if (key == "seed") continue;
    const auto it = setters.find(key);
    if (it == setters.end()) throw BenchSpecError("unknown generator parameter '" + key + "'");
    it->second(params, to_uint(key, value));
  }
}

}  // namespace

IlpProblem generate_from_ref(std::string_view ref) {
  const auto parts = split(ref, ':');
  if (parts.size() < 2 || parts.size() > 3 || parts[0] != "gen") {
    throw BenchSpecError("generator reference must look like gen:<kind>:k=v,...");
  }
  std::map<std::string, std::string> kv;
  if (parts.size() == 3 && !parts[2].empty()) {
    for (const auto& item : split(parts[2], ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw BenchSpecError("expected k=v in '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  const std::uint64_t seed = kv.count("seed") ? to_uint("seed", kv.at("seed")) : 0;
  const InstanceKind kind = parse_instance_kind(parts[1]);
  switch (kind) {
    case InstanceKind::Investment: {
      InvestmentParams p;
      apply_params<InvestmentParams>(
          p, kv,
          {{"n", [](InvestmentParams& q, std::uint64_t v) { q.n = v; }},
           {"general_rows", [](InvestmentParams& q, std::uint64_t v) { q.general_rows = v; }},
           {"max_limit", [](InvestmentParams& q, std::uint64_t v) { q.max_limit = static_cast<std::int64_t>(v); }},
           {"max_price", [](InvestmentParams& q, std::uint64_t v) { q.max_price = static_cast<std::int64_t>(v); }},
           {"max_income", [](InvestmentParams& q, std::uint64_t v) { q.max_income = static_cast<std::int64_t>(v); }}});
      return gen_investment(p, seed);
    }
    case InstanceKind::Transportation: {
      TransportationParams p;
      apply_params<TransportationParams>(
          p, kv,
          {{"sources", [](TransportationParams& q, std::uint64_t v) { q.sources = v; }},
           {"dests", [](TransportationParams& q, std::uint64_t v) { q.dests = v; }},
           {"max_cost", [](TransportationParams& q, std::uint64_t v) { q.max_cost = static_cast<std::int64_t>(v); }},
           {"max_demand", [](TransportationParams& q, std::uint64_t v) { q.max_demand = static_cast<std::int64_t>(v); }}});
      return gen_transportation(p, seed);
    }
    case InstanceKind::RandomDense: {
      RandomDenseParams p;
      apply_params<RandomDenseParams>(
          p, kv,
          {{"n", [](RandomDenseParams& q, std::uint64_t v) { q.n = v; }},
           {"m", [](RandomDenseParams& q, std::uint64_t v) { q.m = v; }},
           {"max_coeff", [](RandomDenseParams& q, std::uint64_t v) { q.max_coeff = static_cast<std::int64_t>(v); }},
           {"max_box", [](RandomDenseParams& q, std::uint64_t v) { q.max_box = static_cast<std::int64_t>(v); }}});
      return gen_random_dense(p, seed);
    }
  }
  throw BenchSpecError("unknown generator kind");
}

void apply_flags(SimConfig& config, std::span<const std::string> flags) {
  static const std::map<std::string_view, std::pair<std::string_view, std::string_view>> kSwitches{
      {"--no-sa", {"sa", "false"}},
      {"--no-prefetch", {"prefetch", "false"}},
      {"--serial-pim", {"serial_pim", "true"}},
      {"--exact-div", {"approx_div", "false"}},
      {"--verify-sa", {"verify_sa", "true"}},
  };
  static const std::map<std::string_view, std::string_view> kValued{
      {"--epsilon", "epsilon"},     {"--max-iters", "max_iters"}, {"--depth-cap", "depth_cap"},
      {"--node-cap", "node_cap"},   {"--seed", "seed"},
  };
  for (std::size_t k = 0; k < flags.size(); ++k) {
    const std::string& flag = flags[k];
    if (const auto s = kSwitches.find(flag); s != kSwitches.end()) {
      apply_setting(config, s->second.first, s->second.second);
    } else if (const auto v = kValued.find(flag); v != kValued.end()) {
      if (k + 1 >= flags.size()) throw ConfigError(flag + " needs a value");
      apply_setting(config, v->second, flags[++k]);
    } else {
      throw ConfigError("unknown flag '" + flag + "'");
    }
  }
  config.validate();
}

BenchSpec parse_bench_spec(std::string_view text, const SimConfig& base,
                           const std::filesystem::path& base_dir) {
  BenchSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const auto where = "bench spec line " + std::to_string(line_no) + ": ";
    try {
      if (tok[0] == "instance") {
        if (tok.size() != 2) throw BenchSpecError("instance takes one argument");
        if (tok[1].rfind("gen:", 0) == 0) {
          spec.instances.push_back(generate_from_ref(tok[1]));
        } else {
          std::filesystem::path path(tok[1]);
          if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
          spec.instances.push_back(load_problem(path));
        }
      } else if (tok[0] == "config") {
        if (tok.size() < 2) throw BenchSpecError("config needs a label");
        LabeledConfig lc{tok[1], base};
        apply_flags(lc.config, std::span<const std::string>(tok).subspan(2));
        spec.configs.push_back(std::move(lc));
      } else {
        throw BenchSpecError("unknown directive '" + tok[0] + "'");
      }
    } catch (const std::exception& e) {
      throw BenchSpecError(where + e.what());
    }
  }
  return spec;
}

std::string bench_csv(const BenchSpec& spec, unsigned threads) {
  const auto reports = run_matrix(spec.instances, spec.configs, threads);
  std::string out = csv_header();
  for (const auto& r : reports) out += csv_row(r);

  auto index_of = [&](std::string_view label) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < spec.configs.size(); ++c) {
      if (spec.configs[c].label == label) return c;
    }
    return std::nullopt;
  };
  const auto full = index_of("full");
  const auto no_sa = index_of("no-sa");
  const auto serial = index_of("serial-pim");
  if (!full || !no_sa || !serial) return out;

  const std::size_t width = spec.configs.size();
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    const auto& f = reports[i * width + *full];
    const auto& g = spec.configs[*full].config.geometry;
    const std::uint32_t line_bits = g.line_bytes * 8;
    if (!f.error.empty() || !reports[i * width + *no_sa].error.empty() ||
        !reports[i * width + *serial].error.empty()) {
      continue;
    }
    const auto a = cost::attribution_report(f.summary(g.word_bits, line_bits),
                                            reports[i * width + *no_sa].summary(g.word_bits, line_bits),
                                            reports[i * width + *serial].summary(g.word_bits, line_bits));
    out += csv_attribution_row(f.instance, a);
  }
  return out;
}

}  // namespace spark::sim
