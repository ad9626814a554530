// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/core/rational.hpp"
#include "spark/ilp/problem.hpp"
#include "spark/ilp/solution.hpp"
#include "spark/sle/jacobi.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spark::bnb {

using BrId = std::uint32_t;

enum class Dir : std::uint8_t { Root, Floor, Ceil };

enum class BranchRule : std::uint8_t { HighestFraction, LowestFraction };

/// Variable domain lo <= x <= hi; a missing hi means unbounded above.
struct Domain {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;

  bool empty() const { return hi && *hi < lo; }
  bool pinned() const { return hi && *hi == lo; }
  bool operator==(const Domain&) const = default;
};

struct BnbNode {
  BrId id = 0;
  std::optional<BrId> parent;
  std::size_t branch_var = 0;
  Dir branch_dir = Dir::Root;
  std::int64_t branch_value = 0;
  std::uint32_t depth = 0;
  std::vector<Domain> box;
  /// Latest branch value of every variable branched on along the chain from
  /// the root. The relaxation substitutes these.
  std::map<std::size_t, std::int64_t> chain;
  /// Proven bound on any integer point in the box: an upper bound for Max,
  /// a lower bound for Min. Missing means unbounded.
  std::optional<Rational> local_bound;
  /// floor (Max) or ceil (Min) of F at the node's relaxed point.
  std::optional<Rational> estimate;
  std::vector<double> relaxed_x;
  Status relax_status = Status::NotConverged;
  bool infeasible = false;  // empty box or row activity proves no point exists
};

struct BnbStats {
  std::uint64_t created = 0;
  std::uint64_t fathomed = 0;
  std::uint64_t expanded = 0;
  std::uint64_t open = 0;
  std::uint64_t peak_open = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t relax_not_converged = 0;
  std::uint64_t relax_unverified = 0;  // converged point failed near-memory verification
  std::uint64_t jacobi_iterations = 0;
  std::uint64_t infeasible_nodes = 0;
  std::uint64_t incumbent_updates = 0;
  std::array<std::uint64_t, 4> rule_fired{};  // rules a..d
  std::vector<std::uint64_t> created_per_level;
  std::vector<std::uint64_t> fathomed_per_level;
  std::uint32_t max_depth = 0;
  bool cap_hit = false;

  bool accounting_holds() const { return fathomed + expanded + open == created; }
};

struct BnbConfig {
  std::uint32_t depth_cap = 64;
  std::uint64_t node_cap = 1'000'000;
  BranchRule rule = BranchRule::HighestFraction;
  double int_tol = 1e-6;
};

inline constexpr std::size_t kPruneLanes = 8;
inline constexpr std::size_t kStateEntries = 1024;

/// Relaxation and bookkeeping hooks. The simulator charges cycles and energy
/// through these; ReferenceBackend only solves.
class BnbBackend {
 public:
  virtual ~BnbBackend() = default;
  virtual sle::SleResult relax(const IlpProblem& problem, const sle::SquareSystem& system) = 0;
  /// Near-memory check of `rows` constraints over n variables at a relaxed point.
  virtual void verify(std::size_t /*rows*/, std::size_t /*n*/) {}
  /// Bound comparison of `nodes` open nodes against the incumbent.
  virtual void prune_batch(std::size_t /*nodes*/) {}
  /// Branch-state array writes for one expansion.
  virtual void expand(std::size_t /*children*/) {}
  virtual double int_tolerance() const { return 1e-6; }
};

class ReferenceBackend : public BnbBackend {
 public:
  explicit ReferenceBackend(double epsilon = sle::kDefaultEpsilon,
                            std::uint64_t max_iters = sle::kDefaultMaxIters)
      : epsilon_(epsilon), max_iters_(max_iters) {}
  sle::SleResult relax(const IlpProblem& problem, const sle::SquareSystem& system) override;

 private:
  double epsilon_;
  std::uint64_t max_iters_;
};

struct BnbState {
  Sense sense = Sense::Max;
  std::optional<Rational> global_bound;  // objective of the incumbent
  std::optional<Solution> incumbent;
  std::vector<BnbNode> open;
  std::uint64_t node_cap = 1'000'000;
  std::uint32_t depth_cap = 64;
  BnbStats stats;
  BrId next_id = 0;
  bool solved_at_root = false;
};

class BnbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root bound from a converged relaxation: ceil(F) for Min, floor(F) for
/// Max. The rounded point (ceil for Min, floor for Max) becomes the
/// incumbent when it is feasible; an integral feasible relaxation is the
/// answer outright. Throws BnbError when the relaxation did not converge.
BnbState init_bounds(const IlpProblem& problem, const Solution& relaxed);

/// Index of the component with the largest (or smallest, per rule)
/// fractional part above tol; ties go to the lowest index. Throws when no
/// component is fractional.
std::size_t select_branch_variable(std::span<const double> x,
                                   BranchRule rule = BranchRule::HighestFraction,
                                   double tol = 1e-6);

/// Best open node: greatest bound for Max, least for Min, lowest BrID on
/// ties. Nodes with an unbounded bound rank first. Throws on an empty queue.
std::size_t select_branch_node(const BnbState& state);

/// Children x_b <= floor(x_b) and x_b >= ceil(x_b). A child whose domain
/// becomes empty is marked infeasible.
std::pair<BnbNode, BnbNode> expand_node(const BnbNode& node, std::size_t var, double x_b,
                                        BrId first_id);

/// Drops open nodes whose bound cannot beat the incumbent. Returns the
/// number of nodes removed.
std::size_t prune(BnbState& state);

/// Tightens a box with row-activity reasoning on C x <= D. Returns false when
/// some row cannot be satisfied inside the box.
bool propagate(const IlpProblem& problem, std::vector<Domain>& box);

/// Valid bound on max (Max) / min (Min) of F over integer points of the box
/// satisfying any single row: the best single-row Lagrangian value.
std::optional<Rational> box_bound(const IlpProblem& problem, const std::vector<Domain>& box);

struct BnbResult {
  Solution solution;
  BnbStats stats;
  std::optional<Rational> root_bound;
  std::optional<Rational> root_estimate;
};

/// Best-first branch and bound. Each node relaxes the reduced square system
/// over its free variables (variables pinned by the box or by the branch
/// chain are substituted), verifies the point near-memory, and is pruned
/// only by proven bounds.
BnbResult solve_ilp(const IlpProblem& problem, BnbBackend& backend, const BnbConfig& config = {});

}  // namespace spark::bnb
