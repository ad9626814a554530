// SPDX-License-Identifier: Apache-2.0
#include "spark/bnb/branch_and_bound.hpp"
#include "spark/ilp/generate.hpp"
#include "spark/ilp/io.hpp"
#include "spark/oracle/brute_force.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace spark::bnb {
namespace {

Solution relaxed_point(const IlpProblem& p, std::vector<Rational> x) {
  return make_solution(p, Status::Optimal, std::move(x));
}

TEST(InitBounds, IntegralRelaxationSolvesAtRoot) {
  const auto p = test::le_problem(Sense::Max, {3, 2}, {{{1, 1}, 4}, {{2, 1}, 6}});
  const auto st = init_bounds(p, relaxed_point(p, {2, 2}));
  EXPECT_TRUE(st.solved_at_root);
  EXPECT_TRUE(st.open.empty());
  ASSERT_TRUE(st.incumbent);
  EXPECT_EQ(st.incumbent->objective, 10);
  EXPECT_TRUE(st.stats.accounting_holds());
}

TEST(InitBounds, FractionalRootFloorsBoundAndRoundsIncumbent) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{2, 2}, 5}});
  const auto st = init_bounds(p, relaxed_point(p, {Rational(5, 4), Rational(5, 4)}));
  EXPECT_FALSE(st.solved_at_root);
  ASSERT_EQ(st.open.size(), 1u);
  EXPECT_EQ(*st.open[0].local_bound, 2);
  ASSERT_TRUE(st.global_bound);
  EXPECT_EQ(*st.global_bound, 2);
  EXPECT_THROW(init_bounds(p, Solution{Status::NotConverged, {}, 0}), BnbError);
}

TEST(InitBounds, MinimizationUsesCeiling) {
  const auto p = test::le_problem(Sense::Min, {1, 1}, {{{-2, -2}, -5}});
  const auto st = init_bounds(p, relaxed_point(p, {Rational(5, 4), Rational(5, 4)}));
  EXPECT_EQ(*st.open[0].local_bound, 3);
  ASSERT_TRUE(st.incumbent);
  EXPECT_EQ(st.incumbent->objective, 4);
}

TEST(SelectVariable, FractionRules) {
  const std::vector<double> x{1.2, 2.7, 3.0, 0.5};
  EXPECT_EQ(select_branch_variable(x), 1u);
  EXPECT_EQ(select_branch_variable(x, BranchRule::LowestFraction), 0u);
  const std::vector<double> tie{0.5, 1.5};
  EXPECT_EQ(select_branch_variable(tie), 0u);
  const std::vector<double> integral{1.0, 2.0};
  EXPECT_THROW(select_branch_variable(integral), BnbError);
}

TEST(SelectNode, BestBoundThenLowestId) {
  BnbState st;
  st.sense = Sense::Max;
  auto node = [](BrId id, std::optional<Rational> bound) {
    BnbNode n;
    n.id = id;
    n.local_bound = std::move(bound);
    return n;
  };
  st.open = {node(4, Rational(7)), node(2, Rational(9)), node(1, Rational(9))};
  EXPECT_EQ(select_branch_node(st), 2u);
  st.open.push_back(node(6, std::nullopt));
  EXPECT_EQ(select_branch_node(st), 3u);
  st.sense = Sense::Min;
  st.open.pop_back();
  EXPECT_EQ(select_branch_node(st), 0u);
  st.open.clear();
  EXPECT_THROW(select_branch_node(st), BnbError);
}

TEST(Expand, SplitsAroundFractionalValue) {
  BnbNode root;
  root.id = 0;
  root.box.assign(2, Domain{});
  const auto [lo, hi] = expand_node(root, 1, 2.4, 5);
  EXPECT_EQ(lo.id, 5u);
  EXPECT_EQ(hi.id, 6u);
  EXPECT_EQ(lo.box[1], (Domain{0, 2}));
  EXPECT_EQ(hi.box[1], (Domain{3, std::nullopt}));
  EXPECT_EQ(lo.chain.at(1), 2);
  EXPECT_EQ(hi.chain.at(1), 3);
  EXPECT_EQ(lo.depth, 1u);
  EXPECT_EQ(*lo.parent, 0u);
  EXPECT_FALSE(lo.infeasible);
}

TEST(Expand, NegativeValueEmptiesFloorChild) {
  BnbNode root;
  root.box.assign(1, Domain{});
  const auto [lo, hi] = expand_node(root, 0, -0.5, 1);
  EXPECT_TRUE(lo.infeasible);
  EXPECT_FALSE(hi.infeasible);
  EXPECT_EQ(hi.box[0].lo, 0);
}

TEST(Propagate, TightensAndDetectsInfeasibility) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{2, 3}, 12}});
  std::vector<Domain> box(2);
  ASSERT_TRUE(propagate(p, box));
  EXPECT_EQ(box[0].hi, 6);
  EXPECT_EQ(box[1].hi, 4);
  box[0].lo = 5;
  box[1].lo = 1;
  EXPECT_FALSE(propagate(p, box));
}

TEST(Solve, DenseExampleMatchesOracle) {
  const auto p = load_problem(test::data_path("dense3.json"));
  ReferenceBackend backend;
  const auto r = solve_ilp(p, backend);
  const auto o = oracle::brute_force_ilp(p);
  ASSERT_EQ(r.solution.status, Status::Optimal);
  EXPECT_EQ(r.solution.objective, o.objective);
  EXPECT_TRUE(check_feasibility(p, r.solution.x).feasible);
  EXPECT_TRUE(r.stats.accounting_holds());
  EXPECT_EQ(r.stats.open, 0u);
}

TEST(Solve, IntegralRootNeedsNoBranching) {
  const auto p = test::le_problem(Sense::Max, {3, 2}, {{{4, 1}, 10}, {{1, 3}, 8}});
  ReferenceBackend backend;
  const auto r = solve_ilp(p, backend);
  EXPECT_EQ(r.solution.objective, 10);
  EXPECT_EQ(r.stats.created, 1u);
  EXPECT_EQ(r.stats.expanded, 0u);
}

TEST(Solve, NodeCapReportsNotConverged) {
  const auto p = load_problem(test::data_path("dense3.json"));
  ReferenceBackend backend;
  BnbConfig cfg;
  cfg.node_cap = 1;
  const auto r = solve_ilp(p, backend, cfg);
  if (r.stats.created > 1 || r.stats.cap_hit) {
    EXPECT_TRUE(r.stats.cap_hit);
    EXPECT_EQ(r.solution.status, Status::NotConverged);
  }
  EXPECT_TRUE(r.stats.accounting_holds());
}

// Property: branch and bound agrees with enumeration and keeps its books.
TEST(Property, AgreesWithOracleOnRandomInstances) {
  for (const auto& p : dense_suite(60, 31)) {
    ReferenceBackend backend;
    const auto r = solve_ilp(p, backend);
    const auto o = oracle::brute_force_ilp(p);
    ASSERT_EQ(r.solution.status, o.status) << serialize_json(p);
    if (o.status == Status::Optimal) {
      EXPECT_EQ(r.solution.objective, o.objective) << serialize_json(p);
      EXPECT_TRUE(check_feasibility(p, r.solution.x).feasible);
    }
    EXPECT_TRUE(r.stats.accounting_holds());
    std::uint64_t per_level = 0;
    for (auto c : r.stats.created_per_level) per_level += c;
    EXPECT_EQ(per_level, r.stats.created);
  }
}

}  // namespace
}  // namespace spark::bnb
