// SPDX-License-Identifier: Apache-2.0
#include "spark/oracle/brute_force.hpp"
#include "spark/oracle/lp_reference.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace spark::oracle {
namespace {

TEST(BruteForce, TwoVariableMax) {
  const auto p = test::le_problem(Sense::Max, {3, 2}, {{{1, 1}, 4}, {{2, 1}, 6}});
  EXPECT_EQ(derive_box(p), (std::vector<std::int64_t>{3, 4}));
  const auto s = brute_force_ilp(p);
  EXPECT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s.objective, 10);
  EXPECT_EQ(s.x, (std::vector<Rational>{2, 2}));
}

TEST(BruteForce, InfeasibleRow) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 1}, 3}, {{-1, -1}, -5}});
  EXPECT_EQ(brute_force_ilp(p).status, Status::Infeasible);
}

TEST(BruteForce, ZeroCostPicksLexFirstPoint) {
  const auto p = test::le_problem(Sense::Min, {0, 0}, {{{1, 1}, 3}});
  const auto s = brute_force_ilp(p);
  EXPECT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s.objective, 0);
  EXPECT_EQ(s.x, (std::vector<Rational>{0, 0}));
}

TEST(BruteForce, MinimizationRespectsCoverRow) {
  const auto p = test::le_problem(Sense::Min, {2, 3}, {{{1, 1}, 5}, {{-1, -1}, -3}});
  const auto s = brute_force_ilp(p);
  EXPECT_EQ(s.objective, 6);
  EXPECT_EQ(s.x, (std::vector<Rational>{3, 0}));
}

TEST(BruteForce, UnboundedBoxAndCap) {
  const auto loose = test::le_problem(Sense::Max, {1, 1}, {{{1, -1}, 2}, {{0, 1}, 4}});
  EXPECT_THROW(derive_box(loose), UnboundedBoxError);
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 1}, 4}});
  EXPECT_THROW(brute_force_ilp(p, {100000, 100000}), EnumerationCapError);
}

TEST(LpReference, IdentityReturnsRhs) {
  const auto x = lp_reference({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {4, -2, 7});
  EXPECT_EQ(x, (std::vector<Rational>{4, -2, 7}));
}

TEST(LpReference, TwoByTwo) {
  const auto x = lp_reference({{4, 1}, {1, 3}}, {9, 7});
  EXPECT_EQ(x, (std::vector<Rational>{Rational(20, 11), Rational(19, 11)}));
}

TEST(LpReference, PivotsPastLeadingZero) {
  const auto x = lp_reference({{0, 2}, {3, 1}}, {4, 5});
  EXPECT_EQ(x, (std::vector<Rational>{1, 2}));
}

TEST(LpReference, SingularThrows) {
  EXPECT_THROW(lp_reference({{1, 2}, {2, 4}}, {3, 6}), SingularMatrixError);
}

}  // namespace
}  // namespace spark::oracle
