// SPDX-License-Identifier: Apache-2.0
#include "spark/core/random.hpp"
#include "spark/fc/sparsity.hpp"
#include "spark/ilp/io.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace spark::fc {
namespace {

TEST(Classify, RowKinds) {
  const std::vector<std::int64_t> cc{0, 3, 0}, general{1, 2, 0}, zero{0, 0, 0};
  const auto c = classify_constraint(cc, 10, true);
  ASSERT_TRUE(std::holds_alternative<CcRow>(c));
  EXPECT_EQ(std::get<CcRow>(c).var, 1u);
  EXPECT_EQ(std::get<CcRow>(c).bound, 3);
  EXPECT_EQ(std::get<CcRow>(classify_constraint(cc, 10, false)).bound, Rational(10, 3));
  EXPECT_TRUE(std::holds_alternative<GeneralRow>(classify_constraint(general, 5, true)));
  EXPECT_TRUE(std::holds_alternative<VacuousRow>(classify_constraint(zero, 0, true)));
  EXPECT_TRUE(std::holds_alternative<InfeasibleRow>(classify_constraint(zero, -1, true)));
  EXPECT_EQ(count_nonzeros(general), 2u);
}

TEST(Classify, SingletonEdgeCases) {
  const std::vector<std::int64_t> neg{-2, 0}, pos{0, 4};
  EXPECT_TRUE(std::holds_alternative<GeneralRow>(classify_constraint(neg, -4, true)));
  EXPECT_TRUE(std::holds_alternative<InfeasibleRow>(classify_constraint(pos, -1, true)));
  EXPECT_EQ(std::get<CcRow>(classify_constraint(pos, 3, true)).bound, 0);
}

TEST(Detect, InvestmentIsSparse) {
  const auto p = load_problem(test::data_path("invest.json"));
  const auto part = detect_sparsity(p);
  EXPECT_TRUE(part.is_sparse);
  ASSERT_EQ(part.cc.size(), 2u);
  EXPECT_EQ(part.cc[0].bound, 3);
  EXPECT_EQ(part.cc[1].bound, 2);
  EXPECT_EQ(part.general, (std::vector<std::size_t>{2}));
  EXPECT_EQ(part.nnz, (std::vector<std::uint32_t>{1, 1, 2}));
}

TEST(Detect, DenseProblemIsNotSparse) {
  const auto part = detect_sparsity(load_problem(test::data_path("dense3.json")));
  EXPECT_FALSE(part.is_sparse);
  EXPECT_TRUE(part.cc.empty());
  EXPECT_EQ(part.general.size(), 3u);
}

TEST(Detect, UncoveredVariableIsNotSparse) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 0}, 3}, {{1, 1}, 5}});
  EXPECT_FALSE(detect_sparsity(p).is_sparse);
}

TEST(Detect, TightestDuplicateBoundWins) {
  const auto p = test::le_problem(Sense::Max, {1}, {{{2}, 9}, {{1}, 3}, {{3}, 20}});
  const auto part = detect_sparsity(p);
  ASSERT_EQ(part.cc.size(), 1u);
  EXPECT_EQ(part.cc[0].bound, 3);
  EXPECT_EQ(part.cc[0].row, 1u);
  EXPECT_EQ(part.cc_rows, 3u);
  EXPECT_TRUE(part.is_sparse);
}

TEST(Detect, InfeasibleRowIsFlagged) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 1}, 5}, {{0, 2}, -1}});
  const auto part = detect_sparsity(p);
  EXPECT_TRUE(part.infeasible);
  EXPECT_EQ(part.infeasible_row, 1u);
  EXPECT_FALSE(part.is_sparse);
}

TEST(StorageOrder, CcRowsFirst) {
  const auto p = test::le_problem(Sense::Max, {1, 1}, {{{1, 1}, 5}, {{0, 2}, 4}, {{3, 1}, 9}, {{1, 0}, 2}});
  EXPECT_EQ(storage_order(p), (std::vector<std::size_t>{1, 3, 0, 2}));
}

// Property: the classes partition the rows, and row order does not change
// the verdict or the bounds.
TEST(Property, PartitionAndPermutationInvariance) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 6));
    IlpProblem p;
    p.name = "perm";
    p.cost.assign(n, 1);
    for (std::size_t i = 0; i < m; ++i) {
      Constraint row{std::vector<std::int64_t>(n, 0), rng.uniform(-2, 12)};
      const auto nnz = rng.uniform(0, static_cast<std::int64_t>(n));
      for (std::int64_t k = 0; k < nnz; ++k) {
        row.coeffs[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] =
            rng.uniform(-3, 5);
      }
      p.constraints.push_back(std::move(row));
    }
    const auto part = detect_sparsity(p);
    std::size_t bad_rows = 0;
    for (const auto& row : p.constraints) {
      bad_rows += std::holds_alternative<InfeasibleRow>(classify_constraint(row.coeffs, row.rhs, true));
    }
    EXPECT_EQ(part.cc_rows + part.general.size() + part.vacuous.size() + bad_rows, m);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    IlpProblem q = p;
    for (std::size_t i = 0; i < m; ++i) q.constraints[i] = p.constraints[perm[i]];
    const auto qpart = detect_sparsity(q);
    EXPECT_EQ(qpart.is_sparse, part.is_sparse);
    EXPECT_EQ(qpart.infeasible, part.infeasible);
    ASSERT_EQ(qpart.cc.size(), part.cc.size());
    for (std::size_t k = 0; k < part.cc.size(); ++k) {
      EXPECT_EQ(qpart.cc[k].var, part.cc[k].var);
      EXPECT_EQ(qpart.cc[k].bound, part.cc[k].bound);
    }
  }
}

}  // namespace
}  // namespace spark::fc
