// SPDX-License-Identifier: Apache-2.0
#include "spark/ilp/generate.hpp"
#include "spark/ilp/io.hpp"
#include "spark/sa/sparsity_aware.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace spark::sa {
namespace {

TEST(PotSoln, InvestmentCandidates) {
  const auto p = load_problem(test::data_path("invest.json"));
  const auto part = fc::detect_sparsity(p);
  const auto ps = pot_soln(part, p);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[0].x, (std::vector<Rational>{3, 2}));
  EXPECT_FALSE(ps[0].source);
  EXPECT_EQ(ps[1].x, (std::vector<Rational>{2, 2}));
  EXPECT_EQ(*ps[1].source, (Source{2, 0}));
  EXPECT_EQ(ps[2].x, (std::vector<Rational>{3, 1}));
  EXPECT_EQ(*ps[2].source, (Source{2, 1}));

  const auto pc = pot_costs(ps, p);
  ASSERT_EQ(pc.pc.size(), 2u);
  EXPECT_EQ(pc.pc[0].cost, 18);
  EXPECT_EQ(pc.pc[1].cost, 17);
  EXPECT_EQ(*pc.best, 1u);
  EXPECT_EQ(pc.solution.status, Status::Optimal);
  EXPECT_EQ(pc.solution.objective, 18);
}

TEST(PotSoln, SlackCornerWins) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 0}, 2}, {{0, 1}, 2}, {{1, 1}, 10}});
  const auto ps = pot_soln(fc::detect_sparsity(p), p);
  const auto pc = pot_costs(ps, p);
  EXPECT_EQ(*pc.best, 0u);
  EXPECT_EQ(pc.solution.objective, 4);
}

TEST(PotSoln, ZeroCoefficientSpawnsNoCandidate) {
  const auto p = test::le_problem(Sense::Max, {1, 1, 1},
                                  {{{1, 0, 0}, 2}, {{0, 1, 0}, 2}, {{0, 0, 1}, 2}, {{1, 0, 1}, 3}});
  const auto ps = pot_soln(fc::detect_sparsity(p), p);
  ASSERT_EQ(ps.size(), 3u);
  for (std::size_t k = 1; k < ps.size(); ++k) EXPECT_NE(ps[k].source->var, 1u);
}

TEST(PotSoln, NegativeSubstitutionIsFlagged) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 0}, 5}, {{0, 1}, 5}, {{1, 1}, 3}});
  const auto ps = pot_soln(fc::detect_sparsity(p), p);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_FALSE(ps[1].feasible);
  EXPECT_FALSE(ps[2].feasible);
  const auto pc = pot_costs(ps, p);
  EXPECT_TRUE(pc.pc.empty());
  EXPECT_FALSE(pc.best);
  EXPECT_EQ(pc.solution.status, Status::NoCandidate);
}

TEST(PotSoln, NegativeCoefficientRoundsUp) {
  const auto p = test::le_problem(Sense::Min, {1, 1}, {{{1, 0}, 4}, {{0, 1}, 4}, {{-2, 1}, 1}});
  const auto ps = pot_soln(fc::detect_sparsity(p), p);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[1].x[0], 2);  // (1 - 4) / -2 = 1.5, rounded up
}

TEST(PotSoln, DenseProblemIsRejected) {
  const auto p = load_problem(test::data_path("dense3.json"));
  EXPECT_THROW(pot_soln(fc::detect_sparsity(p), p), NotSparseError);
}

// Property: the candidate count is one corner plus the nonzeros of the
// general rows, and every costed candidate is feasible.
TEST(Property, CandidateCountAndFeasibility) {
  for (const auto& p : sparse_suite(100, 41)) {
    const auto part = fc::detect_sparsity(p);
    ASSERT_TRUE(part.is_sparse);
    const auto ps = pot_soln(part, p);
    std::size_t expected = 1;
    for (auto i : part.general) expected += part.nnz[i];
    EXPECT_EQ(ps.size(), expected);
    const auto pc = pot_costs(ps, p);
    for (const auto& e : pc.pc) {
      EXPECT_TRUE(check_feasibility(p, ps[e.ps_index].x).feasible);
      EXPECT_EQ(e.cost, evaluate_objective(p, ps[e.ps_index].x));
    }
  }
}

}  // namespace
}  // namespace spark::sa
