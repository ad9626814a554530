// SPDX-License-Identifier: Apache-2.0
#include "spark/sa/sparsity_aware.hpp"

namespace spark::sa {

std::vector<PsEntry> pot_soln(const fc::SparsityPartition& part, const IlpProblem& p) {
  if (!part.is_sparse) throw NotSparseError("pot_soln requires a sparse partition");
  const std::size_t n = p.n();
  std::vector<Rational> corner(n);
  for (const auto& e : part.cc) corner[e.var] = e.bound;

  std::vector<PsEntry> out;
  out.push_back({corner, std::nullopt, true});
  for (std::size_t i : part.general) {
    const auto& row = p.constraints[i];
    Rational full = 0;
    for (std::size_t j = 0; j < n; ++j) full += row.coeffs[j] * corner[j];
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t cik = row.coeffs[k];
      if (cik == 0) continue;
      Rational xk = (Rational(row.rhs) - (full - cik * corner[k])) / cik;
      if (p.integral) xk = cik > 0 ? floor_rational(xk) : ceil_rational(xk);
      PsEntry e{corner, Source{i, k}, true};
      e.x[k] = xk;
      e.feasible = xk >= 0;
      out.push_back(std::move(e));
    }
  }
  return out;
}

PotCosts pot_costs(std::span<const PsEntry> candidates, const IlpProblem& p) {
  PotCosts res;
  std::optional<std::size_t> best_pc;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto& cand = candidates[c];
    if (!cand.feasible || !check_feasibility(p, cand.x).feasible) continue;
    res.pc.push_back({c, evaluate_objective(p, cand.x)});
    const Rational& cost = res.pc.back().cost;
    if (!best_pc) {
      best_pc = res.pc.size() - 1;
    } else if (const Rational& best = res.pc[*best_pc].cost;
               p.sense == Sense::Max ? cost > best : cost < best) {
      best_pc = res.pc.size() - 1;
    }
  }
  if (!best_pc) {
    res.solution.status = Status::NoCandidate;
    return res;
  }
  res.best = res.pc[*best_pc].ps_index;
  res.solution = make_solution(p, Status::Optimal, candidates[*res.best].x);
  return res;
}

}  // namespace spark::sa
