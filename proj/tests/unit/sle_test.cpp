// SPDX-License-Identifier: Apache-2.0
#include "spark/core/random.hpp"
#include "spark/ilp/io.hpp"
#include "spark/oracle/lp_reference.hpp"
#include "spark/sle/jacobi.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace spark::sle {
namespace {

IlpProblem system_problem(std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> rows) {
  std::vector<std::int64_t> cost(rows.front().first.size(), 1);
  return test::le_problem(Sense::Max, std::move(cost), std::move(rows), false);
}

TEST(Select, NaturalRowsWhenDiagonalNonzero) {
  const auto p = load_problem(test::data_path("dense3.json"));
  const auto sys = select_square_system(p, {});
  EXPECT_EQ(sys.rows, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(sys.vars, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(sys.verify_rows.empty());
  EXPECT_TRUE(strictly_diagonally_dominant(sys));
}

TEST(Select, FixedVariablesMoveToRhs) {
  const auto p = load_problem(test::data_path("dense3.json"));
  const auto sys = select_square_system(p, {{1, 2}});
  EXPECT_EQ(sys.vars, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(sys.rows, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(sys.rhs, (std::vector<std::int64_t>{9, 15}));
  EXPECT_EQ(sys.verify_rows, (std::vector<std::size_t>{1}));
  EXPECT_FALSE(sys.free_mask[1]);
}

TEST(Select, LargestMagnitudeWhenDiagonalZero) {
  const auto p = system_problem({{{0, 1}, 4}, {{2, 0}, 6}, {{5, 3}, 9}});
  const auto sys = select_square_system(p, {});
  EXPECT_EQ(sys.rows, (std::vector<std::size_t>{2, 0}));
  EXPECT_EQ(sys.verify_rows, (std::vector<std::size_t>{1}));
}

TEST(Select, MissingDiagonalThrows) {
  const auto p = system_problem({{{1, 0}, 4}, {{3, 0}, 6}});
  try {
    select_square_system(p, {});
    FAIL() << "expected NoDiagonalError";
  } catch (const NoDiagonalError& e) {
    EXPECT_EQ(e.vars(), (std::vector<std::size_t>{1}));
  }
}

TEST(Step, HandIterate) {
  const auto sys = select_square_system(load_problem(test::data_path("lp_dense.json")), {});
  JacobiState<double> st(2, 0.0);
  jacobi_step(st, sys);
  EXPECT_DOUBLE_EQ(st.iter2[0], 2.25);
  EXPECT_DOUBLE_EQ(st.iter2[1], 7.0 / 3.0);
  EXPECT_DOUBLE_EQ(st.l1, 2.25 + 7.0 / 3.0);
  EXPECT_EQ(st.iteration, 1u);
}

TEST(Solve, ConvergesToExactSolution) {
  const auto sys = select_square_system(load_problem(test::data_path("lp_dense.json")), {});
  const auto r = solve_sle(sys);
  ASSERT_EQ(r.status, Status::Optimal);
  EXPECT_NEAR(r.x[0], 20.0 / 11.0, 1e-6);
  EXPECT_NEAR(r.x[1], 19.0 / 11.0, 1e-6);
  EXPECT_LT(residual_inf(sys, r.x), 1e-5);
}

TEST(Solve, IdentityConvergesImmediately) {
  const auto sys = select_square_system(system_problem({{{1, 0, 0}, 3}, {{0, 1, 0}, 5}, {{0, 0, 1}, 2}}), {});
  const auto r = solve_sle(sys);
  EXPECT_EQ(r.status, Status::Optimal);
  EXPECT_LE(r.iterations, 2u);
  EXPECT_EQ(r.x, (std::vector<double>{3, 5, 2}));
}

TEST(Solve, DivergenceReportsNotConverged) {
  const auto sys = select_square_system(system_problem({{{1, 3}, 1}, {{3, 1}, 1}}), {});
  const auto r = solve_sle(sys);
  EXPECT_EQ(r.status, Status::NotConverged);
  EXPECT_FALSE(strictly_diagonally_dominant(sys));
}

TEST(Solve, IterationBudget) {
  const auto sys = select_square_system(load_problem(test::data_path("lp_dense.json")), {});
  const auto r = solve_sle(sys, 1e-6, 1);
  EXPECT_EQ(r.status, Status::NotConverged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_THROW(solve_sle(sys, 1e-6, 0), std::invalid_argument);
  EXPECT_THROW(solve_sle(sys, 0.0), std::invalid_argument);
}

TEST(Fixed, HandIterate) {
  const auto p = load_problem(test::data_path("lp_dense.json"));
  const auto sys = select_square_system(p, {});
  FixedPointConfig cfg;
  SoftwareBackend backend(p, exact_round_divide);
  FixedJacobiState st(2);
  st.q.iter1 = {256, 512};
  jacobi_step_fixed(st, sys, p.n(), cfg, backend);
  EXPECT_EQ(st.q.iter2, (std::vector<std::int64_t>{448, 512}));
  EXPECT_EQ(st.q.l1, 192);
  EXPECT_FALSE(st.overflow);
  EXPECT_EQ(cfg.to_raw(1.5), 384);
  EXPECT_DOUBLE_EQ(cfg.from_raw(448), 1.75);
}

TEST(Fixed, OverflowClampsToWidth) {
  const auto p = system_problem({{{1, 0}, 30000}, {{0, 1}, 1}});
  const auto sys = select_square_system(p, {});
  FixedPointConfig cfg;
  SoftwareBackend backend(p, exact_round_divide);
  const auto r = solve_sle_fixed(sys, p.n(), cfg, backend);
  EXPECT_TRUE(r.overflow);
}

// Property: update order does not change a step, in floating or fixed point.
TEST(Property, UpdateOrderInvariance) {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
    std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> c(n);
      std::int64_t off = 0;
      for (auto& v : c) {
        v = rng.uniform(-4, 4);
        off += std::abs(v);
      }
      c[i] = off + rng.uniform(1, 5);
      rows.emplace_back(std::move(c), rng.uniform(-20, 20));
    }
    const auto p = system_problem(rows);
    const auto sys = select_square_system(p, {});
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());

    JacobiState<double> a(n, 0.5), b(n, 0.5);
    jacobi_step(a, sys);
    jacobi_step(b, sys, order);
    EXPECT_EQ(a.iter2, b.iter2);

    FixedPointConfig cfg;
    SoftwareBackend backend(p, exact_round_divide);
    FixedJacobiState fa(n), fb(n);
    jacobi_step_fixed(fa, sys, n, cfg, backend);
    jacobi_step_fixed(fb, sys, n, cfg, backend, order);
    EXPECT_EQ(fa.q.iter2, fb.q.iter2);

    const auto exact = oracle::lp_reference(sys.matrix, sys.rhs);
    const auto r = solve_sle(sys);
    ASSERT_EQ(r.status, Status::Optimal);
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(r.x[j], to_double(exact[j]), 1e-5);
  }
}

TEST(Expand, FillsFixedValues) {
  const auto p = load_problem(test::data_path("dense3.json"));
  const auto sys = select_square_system(p, {{1, 2}});
  const std::vector<double> x{1.5, 2.5};
  EXPECT_EQ(expand(sys, 3, x), (std::vector<double>{1.5, 2, 2.5}));
}

}  // namespace
}  // namespace spark::sle
