// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/core/rational.hpp"
#include "spark/fc/sparsity.hpp"
#include "spark/ilp/problem.hpp"
#include "spark/ilp/solution.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spark::sa {

struct Source {
  std::size_t row;  // general constraint i
  std::size_t var;  // substituted variable k
  bool operator==(const Source&) const = default;
};

/// One potential solution: every coordinate at its CC bound except the
/// substituted one. The CC corner itself has no source.
struct PsEntry {
  std::vector<Rational> x;
  std::optional<Source> source;
  bool feasible = true;  // false when the substituted value is negative
};

struct PcEntry {
  std::size_t ps_index;
  Rational cost;
};

class NotSparseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Candidate list: the CC corner first, then for each general row i (in
/// storage order) and each k with C_ik != 0,
///   x_k = (D_i - sum_{j != k} C_ij * CC_j) / C_ik.
/// Integral problems round x_k toward the side that keeps row i satisfied
/// (down for C_ik > 0, up for C_ik < 0).
std::vector<PsEntry> pot_soln(const fc::SparsityPartition& partition, const IlpProblem& problem);

struct PotCosts {
  std::vector<PcEntry> pc;          // one entry per candidate that passes every constraint
  std::optional<std::size_t> best;  // index into the candidate list
  Solution solution;                // Optimal at the best candidate, or NoCandidate
};

/// Re-checks each flagged-feasible candidate against all constraints, costs
/// the survivors and picks the max (Max) or min (Min). The first candidate
/// wins ties.
PotCosts pot_costs(std::span<const PsEntry> candidates, const IlpProblem& problem);

}  // namespace spark::sa
