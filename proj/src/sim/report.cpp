// SPDX-License-Identifier: Apache-2.0
#include "spark/sim/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace spark::sim {

using nlohmann::ordered_json;
using spark::to_string;

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Fc: return "fc";
    case Engine::Sa: return "sa";
    case Engine::Sle: return "sle";
    case Engine::Bnb: return "bnb";
  }
  return "?";
}

const char* to_string(Fallback f) {
  switch (f) {
    case Fallback::None: return "none";
    case Fallback::NoCandidate: return "no_candidate";
    case Fallback::VerifyImproved: return "verify_improved";
    case Fallback::VerifyConfirmed: return "verify_confirmed";
  }
  return "?";
}

cost::RunSummary SimReport::summary(std::uint32_t word_bits, std::uint32_t line_bits) const {
  return cost::RunSummary{instance, ledger.total_cycles(), stats.pim.word_macs, word_bits,
                          line_bits};
}

std::string format_pj(std::int64_t aj) {
  const bool neg = aj < 0;
  const std::uint64_t mag = neg ? static_cast<std::uint64_t>(-(aj + 1)) + 1 : static_cast<std::uint64_t>(aj);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%06llu", neg ? "-" : "",
                static_cast<unsigned long long>(mag / cost::kAttojoulesPerPicojoule),
                static_cast<unsigned long long>(mag % cost::kAttojoulesPerPicojoule));
  return buf;
}

namespace {

ordered_json rational_vector(const std::vector<Rational>& xs) {
  auto out = ordered_json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

ordered_json solution_json(const Solution& s) {
  ordered_json j;
  j["status"] = to_string(s.status);
  j["objective"] = s.has_point() ? ordered_json(to_string(s.objective)) : ordered_json(nullptr);
  j["x"] = rational_vector(s.x);
  return j;
}

ordered_json ledger_json(const cost::Ledger& ledger) {
  ordered_json j;
  j["cycles_total"] = ledger.total_cycles();
  ordered_json phases;
  for (std::size_t p = 0; p < cost::kPhaseCount; ++p) {
    phases[cost::to_string(static_cast<cost::Phase>(p))] = ledger.cycles(static_cast<cost::Phase>(p));
  }
  j["cycles_by_phase"] = phases;
  j["energy_pj_total"] = format_pj(ledger.total_energy_aj());
  ordered_json comps;
  for (std::size_t c = 0; c < cost::kComponentCount; ++c) {
    const auto comp = static_cast<cost::Component>(c);
    comps[cost::to_string(comp)] = format_pj(ledger.energy_aj(comp));
  }
  j["energy_pj_by_component"] = comps;
  ordered_json events;
  for (std::size_t e = 0; e < cost::kEventCount; ++e) {
    const auto ev = static_cast<cost::Event>(e);
    events[cost::to_string(ev)] = ledger.events(ev);
  }
  j["events"] = events;
  j["conserved"] = ledger.conserved();
  return j;
}

ordered_json bnb_json(const bnb::BnbStats& s) {
  ordered_json j;
  j["created"] = s.created;
  j["fathomed"] = s.fathomed;
  j["expanded"] = s.expanded;
  j["open"] = s.open;
  j["peak_open"] = s.peak_open;
  j["relaxations"] = s.relaxations;
  j["relax_not_converged"] = s.relax_not_converged;
  j["relax_unverified"] = s.relax_unverified;
  j["infeasible_nodes"] = s.infeasible_nodes;
  j["incumbent_updates"] = s.incumbent_updates;
  j["rule_fired"] = {{"a", s.rule_fired[0]}, {"b", s.rule_fired[1]},
                     {"c", s.rule_fired[2]}, {"d", s.rule_fired[3]}};
  j["created_per_level"] = s.created_per_level;
  j["fathomed_per_level"] = s.fathomed_per_level;
  j["max_depth"] = s.max_depth;
  j["cap_hit"] = s.cap_hit;
  return j;
}

ordered_json candidates_json(const std::vector<SaCandidate>& cands) {
  auto out = ordered_json::array();
  for (const auto& c : cands) {
    ordered_json j;
    j["x"] = rational_vector(c.entry.x);
    if (c.entry.source) {
      j["source"] = {{"row", c.entry.source->row}, {"var", c.entry.source->var}};
    } else {
      j["source"] = nullptr;
    }
    j["nonnegative"] = c.entry.feasible;
    j["cost"] = c.cost ? ordered_json(to_string(*c.cost)) : ordered_json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string to_json(const SimReport& r) {
  ordered_json j;
  j["instance"] = r.instance;
  j["config"] = r.config_label;
  j["verdict"] = r.sparse ? "sparse" : "dense";
  j["path"] = r.path;
  j["solution"] = solution_json(r.solution);
  j["ledger"] = ledger_json(r.ledger);
  auto trace = ordered_json::array();
  for (const auto& s : r.trace) {
    trace.push_back({{"engine", to_string(s.engine)}, {"begin", s.begin}, {"end", s.end}});
  }
  j["trace"] = trace;

  ordered_json st;
  st["jacobi_iterations"] = r.stats.jacobi_iterations;
  st["bnb"] = r.stats.bnb ? bnb_json(*r.stats.bnb) : ordered_json(nullptr);
  st["pim"] = {{"row_activations", r.stats.pim.row_activations},
               {"rbl_discharges", r.stats.pim.rbl_discharges},
               {"shift_adds", r.stats.pim.shift_adds},
               {"adder_reductions", r.stats.pim.adder_reductions},
               {"word_macs", r.stats.pim.word_macs}};
  st["fills"] = {{"l2_to_l1", r.stats.l2_fills},
                 {"dram_to_l2", r.stats.dram_fills},
                 {"demand_misses", r.stats.demand_misses},
                 {"prefetch_hits", r.stats.prefetch_hits},
                 {"stall_cycles", r.stats.fill_stall_cycles}};
  st["mac_mismatches"] = r.stats.mac_mismatches;
  st["overflow"] = r.stats.overflow;
  st["fallback"] = to_string(r.stats.fallback);
  st["sa_solution"] = r.stats.sa_solution ? solution_json(*r.stats.sa_solution) : ordered_json(nullptr);
  st["sa_candidates"] = candidates_json(r.stats.sa_candidates);
  j["stats"] = st;
  j["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string csv_header() {
  std::string h = "row_type,instance,config,path,status,objective,cycles_total";
  for (std::size_t p = 0; p < cost::kPhaseCount; ++p) {
    h += ",cycles_";
    h += cost::to_string(static_cast<cost::Phase>(p));
  }
  for (std::size_t c = 0; c < cost::kComponentCount; ++c) {
    h += ",energy_pj_";
    h += cost::to_string(static_cast<cost::Component>(c));
  }
  h += ",energy_pj_total,iterations,bnb_nodes,fill_stalls,word_macs";
  h += ",movement_delta,parallel_delta,sparsity_delta,movement_pct,parallel_pct,sparsity_pct,note\n";
  return h;
}

namespace {
std::string note(const SimReport& r) {
  if (!r.error.empty()) return r.error;
  std::string joined;
  for (const auto& w : r.warnings) joined += (joined.empty() ? "" : "; ") + w;
  return joined;
}
}  // namespace

std::string csv_row(const SimReport& r) {
  std::ostringstream o;
  o << "run," << csv_escape(r.instance) << ',' << csv_escape(r.config_label) << ',' << r.path << ','
    << to_string(r.solution.status) << ','
    << (r.solution.has_point() ? to_string(r.solution.objective) : std::string{}) << ','
    << r.ledger.total_cycles();
  for (std::size_t p = 0; p < cost::kPhaseCount; ++p) {
    o << ',' << r.ledger.cycles(static_cast<cost::Phase>(p));
  }
  for (std::size_t c = 0; c < cost::kComponentCount; ++c) {
    o << ',' << format_pj(r.ledger.energy_aj(static_cast<cost::Component>(c)));
  }
  o << ',' << format_pj(r.ledger.total_energy_aj()) << ',' << r.stats.jacobi_iterations << ','
    << (r.stats.bnb ? r.stats.bnb->created : 0) << ',' << r.stats.fill_stall_cycles << ','
    << r.stats.pim.word_macs << ",,,,,,," << csv_escape(note(r)) << '\n';
  return o.str();
}

std::string csv_attribution_row(const std::string& instance, const cost::Attribution& a) {
  std::ostringstream o;
  o << "attribution," << csv_escape(instance) << ",,,,,";
  for (std::size_t k = 0; k < 1 + cost::kPhaseCount + cost::kComponentCount + 5; ++k) o << ',';
  o << a.movement_delta << ',' << a.parallel_delta << ',' << a.sparsity_delta << ','
    << percent(a.movement_pct) << ',' << percent(a.parallel_pct) << ',' << percent(a.sparsity_pct)
    << ",\n";
  return o.str();
}

std::string to_text(const SimReport& r) {
  std::ostringstream o;
  o << "instance   " << r.instance << '\n'
    << "verdict    " << (r.sparse ? "sparse" : "dense") << '\n'
    << "path       " << r.path;
  if (r.stats.fallback != Fallback::None) o << " (fallback: " << to_string(r.stats.fallback) << ')';
  o << '\n' << "status     " << to_string(r.solution.status) << '\n';
  if (r.solution.has_point()) {
    o << "objective  " << to_string(r.solution.objective) << '\n' << "x          ";
    for (std::size_t j = 0; j < r.solution.x.size(); ++j) {
      o << (j ? " " : "") << to_string(r.solution.x[j]);
    }
    o << '\n';
  }
  o << "cycles     " << r.ledger.total_cycles() << '\n'
    << "energy_pj  " << format_pj(r.ledger.total_energy_aj()) << '\n'
    << "iterations " << r.stats.jacobi_iterations << '\n';
  if (r.stats.bnb) o << "bnb_nodes  " << r.stats.bnb->created << '\n';
  if (!r.error.empty()) o << "error      " << r.error << '\n';
  for (const auto& w : r.warnings) o << "warning    " << w << '\n';
  return o.str();
}

}  // namespace spark::sim
