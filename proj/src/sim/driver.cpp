// SPDX-License-Identifier: Apache-2.0
#include "spark/sim/driver.hpp"

#include "spark/bnb/branch_and_bound.hpp"
#include "spark/fc/sparsity.hpp"
#include "spark/sa/sparsity_aware.hpp"
#include "spark/sim/datapath.hpp"
#include "spark/sle/jacobi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace spark::sim {

using cost::Event;
using cost::Phase;

namespace {

class Run {
 public:
  Run(const IlpProblem& problem, const SimConfig& config, const std::string& label)
      : p_(problem), cfg_(config), dp_(config, problem) {
    rep_.instance = problem.name;
    rep_.config_label = label;
  }

  SimReport execute() {
    try {
      fetch_detect();
      if (part_.infeasible) {
        rep_.path = "fc";
        rep_.solution = Solution{Status::Infeasible, {}, Rational(0)};
      } else if (part_.is_sparse && cfg_.flags.sa_enabled) {
        sparse_path();
      } else {
        rep_.solution = dense();
        rep_.path = "dense";
      }
    } catch (const std::exception& e) {
      rep_.error = e.what();
      rep_.path = "error";
      finish();
      throw SimError(e.what(), std::move(rep_));
    }
    finish();
    return std::move(rep_);
  }

 private:
  cost::Ledger& ledger() { return dp_.ledger(); }

  void span(Engine engine, std::uint64_t begin) {
    rep_.trace.push_back(Span{engine, begin, ledger().total_cycles()});
  }

  void fetch_detect() {
    const auto begin = ledger().total_cycles();
    dp_.load();
    part_ = fc::detect_sparsity(p_);
    rep_.sparse = part_.is_sparse;
    span(Engine::Fc, begin);
  }

  void sparse_path() {
    const auto begin = ledger().total_cycles();
    ledger().set_phase(Phase::Sa);
    const auto candidates = sa::pot_soln(part_, p_);
    const auto costs = sa::pot_costs(candidates, p_);
    charge_sa(candidates, costs);
    span(Engine::Sa, begin);

    for (std::size_t k = 0; k < candidates.size(); ++k) {
      SaCandidate c{candidates[k], std::nullopt};
      for (const auto& pc : costs.pc) {
        if (pc.ps_index == k) c.cost = pc.cost;
      }
      rep_.stats.sa_candidates.push_back(std::move(c));
    }
    rep_.stats.sa_solution = costs.solution;

    if (costs.solution.status != Status::Optimal) {
      rep_.stats.fallback = Fallback::NoCandidate;
      rep_.solution = dense();
      rep_.path = "dense";
      return;
    }
    rep_.solution = costs.solution;
    rep_.path = "sa";
    if (!cfg_.flags.verify_sa) return;

    const Solution check = dense();
    const bool better =
        check.status == Status::Optimal &&
        (p_.sense == Sense::Max ? check.objective > costs.solution.objective
                                : check.objective < costs.solution.objective);
    if (better) {
      rep_.stats.fallback = Fallback::VerifyImproved;
      rep_.solution = check;
      rep_.path = "dense";
    } else {
      rep_.stats.fallback = Fallback::VerifyConfirmed;
    }
  }

  // CC rows live in the CC array as bounds, so only the general rows and
  // the cost row go through the array, once, at the CC corner. Their lane
  // products stay in the row buffers; a candidate differs from the corner
  // in one lane, so each of its row activities costs one shift-add product
  // and a subtraction, and its CC check is a single compare.
  void charge_sa(const std::vector<sa::PsEntry>& candidates, const sa::PotCosts& costs) {
    std::vector<std::int64_t> corner(p_.n(), 0);
    for (const auto& e : part_.cc) {
      corner[e.var] = std::max<std::int64_t>(0, static_cast<std::int64_t>(floor_rational(e.bound)));
    }
    dp_.begin_batch();
    for (std::size_t i : part_.general) dp_.lane_products(i, corner);
    dp_.cost_lane_products(corner);
    dp_.end_batch();

    const auto units = dp_.banks_count();
    const std::uint64_t general = part_.general.size();
    const std::uint64_t generated = candidates.empty() ? 0 : candidates.size() - 1;
    auto& l = ledger();
    l.record_parallel(Event::SubOp, generated, units);
    l.record_parallel(Event::DivOp, generated, units);
    l.record_parallel(Event::QueueRw, candidates.size(), units);

    const std::uint64_t checked = static_cast<std::uint64_t>(
        std::count_if(candidates.begin(), candidates.end(), [](const auto& c) { return c.feasible; }));
    l.record_parallel(Event::SaOp, checked * (general + 1), units);
    l.record_parallel(Event::SubOp, checked * (2 * general + 2), units);
    l.record(Event::QueueRw, costs.pc.size());
    l.record(Event::SubOp, costs.pc.size());
  }

  Solution dense() {
    warn_if_not_dominant();
    return p_.integral ? dense_integral() : dense_continuous();
  }

  // Jacobi may still converge without strict dominance, so this only warns.
  void warn_if_not_dominant() {
    try {
      if (!sle::strictly_diagonally_dominant(sle::select_square_system(p_, {}))) {
        rep_.warnings.emplace_back("root system is not strictly diagonally dominant");
      }
    } catch (const sle::NoDiagonalError& e) {
      rep_.warnings.emplace_back(e.what());
    }
  }

  Solution dense_integral() {
    const auto begin = ledger().total_cycles();
    ledger().set_phase(Phase::Bnb);
    PimBnbBackend backend(dp_);
    bnb::BnbConfig bc;
    bc.depth_cap = cfg_.depth_cap;
    bc.node_cap = cfg_.node_cap;
    bc.rule = cfg_.branch_rule;
    bc.int_tol = backend.int_tolerance();
    auto result = bnb::solve_ilp(p_, backend, bc);
    const auto split = backend.first_relax_end().value_or(begin);
    rep_.trace.push_back(Span{Engine::Sle, begin, split});
    rep_.trace.push_back(Span{Engine::Bnb, split, ledger().total_cycles()});
    rep_.stats.jacobi_iterations += result.stats.jacobi_iterations;
    rep_.stats.bnb = result.stats;
    return result.solution;
  }

  Solution dense_continuous() {
    const auto begin = ledger().total_cycles();
    ledger().set_phase(Phase::Sle);
    const auto sys = sle::select_square_system(p_, {});
    const auto res = solve_on_datapath(dp_, p_, sys);
    span(Engine::Sle, begin);
    rep_.stats.jacobi_iterations += res.iterations;
    rep_.stats.overflow = rep_.stats.overflow || res.overflow;
    if (res.status != Status::Optimal) return Solution{res.status, {}, Rational(0)};

    const auto x = sle::expand(sys, p_.n(), res.x);
    const double tol = fixed_point_config(cfg_).ulp();
    const auto feas = check_feasibility(p_, std::span<const double>(x), tol);
    const bool ok = std::none_of(feas.violated.begin(), feas.violated.end(), [](const Violation& v) {
      return v.kind != Violation::Kind::Fractional;
    });
    std::vector<Rational> exact;
    for (double v : x) exact.push_back(exact_from_double(v));
    return make_solution(p_, ok ? Status::Optimal : Status::Infeasible, std::move(exact));
  }

  void finish() {
    rep_.stats.pim = dp_.pim_events();
    rep_.stats.l2_fills = dp_.fill().l2_fills();
    rep_.stats.dram_fills = dp_.fill().dram_fills();
    rep_.stats.demand_misses = dp_.fill().demand_misses();
    rep_.stats.prefetch_hits = dp_.fill().prefetch_hits();
    rep_.stats.fill_stall_cycles = ledger().cycles(Phase::FillStall);
    rep_.stats.mac_mismatches = dp_.mac_mismatches();
    rep_.ledger = ledger();
  }

  const IlpProblem& p_;
  const SimConfig& cfg_;
  Datapath dp_;
  fc::SparsityPartition part_;
  SimReport rep_;
};

}  // namespace

SimReport run(const IlpProblem& problem, const SimConfig& config, const std::string& label) {
  config.validate();
  validate(problem);
  return Run(problem, config, label).execute();
}

std::vector<SimReport> run_matrix(std::span<const IlpProblem> problems,
                                  std::span<const LabeledConfig> configs, unsigned threads) {
  const std::size_t total = problems.size() * configs.size();
  std::vector<SimReport> out(total);
  if (total == 0) return out;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const auto& problem = problems[k / configs.size()];
      const auto& cfg = configs[k % configs.size()];
      try {
        out[k] = run(problem, cfg.config, cfg.label);
      } catch (const SimError& e) {
        out[k] = e.partial();
      } catch (const std::exception& e) {
        out[k].instance = problem.name;
        out[k].config_label = cfg.label;
        out[k].path = "error";
        out[k].error = e.what();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return out;
}

}  // namespace spark::sim
