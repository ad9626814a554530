// SPDX-License-Identifier: Apache-2.0
#include "spark/core/random.hpp"
#include "spark/div/approx_div.hpp"
#include "spark/ilp/io.hpp"
#include "spark/sle/jacobi.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace spark::div {
namespace {

TEST(ApproxDivide, PowerOfTwoDivisorIsExact) {
  const ApproxDivider d;
  EXPECT_EQ(d.divide(1234.0, 1.0), 1234.0);
  EXPECT_EQ(d.divide(-77.0, 4.0), -19.25);
  EXPECT_EQ(d.divide_fixed(5, 2, 8), 640);
}

TEST(ApproxDivide, EqualOperandsGiveOne) {
  const ApproxDivider d;
  for (double a : {3.0, 7.0, 100.0, 12345.0}) EXPECT_DOUBLE_EQ(d.divide(a, a), 1.0);
}

TEST(ApproxDivide, SignsFollowOperands) {
  const ApproxDivider d;
  const double q = d.divide(100.0, 7.0);
  EXPECT_GT(q, 0);
  EXPECT_EQ(d.divide(-100.0, 7.0), -q);
  EXPECT_EQ(d.divide(100.0, -7.0), -q);
  EXPECT_EQ(d.divide(-100.0, -7.0), q);
  EXPECT_EQ(d.divide(0.0, -7.0), 0.0);
}

TEST(ApproxDivide, ZeroDivisorThrows) {
  const ApproxDivider d;
  EXPECT_THROW(d.divide(1.0, 0.0), DivisionByZero);
  EXPECT_THROW(d.divide_fixed(1, 0, 8), DivisionByZero);
  EXPECT_THROW(exact_divide_fixed(1, 0, 8), DivisionByZero);
}

TEST(ExactDivide, RoundsHalfAwayFromZero) {
  EXPECT_EQ(exact_divide_fixed(1, 3, 8), 85);
  EXPECT_EQ(exact_divide_fixed(-1, 3, 8), -85);
  EXPECT_EQ(exact_divide_fixed(3, 512, 8), 2);
  EXPECT_EQ(exact_divide_fixed(-3, 512, 8), -2);
}

TEST(Table, DeterministicAndBounded) {
  EXPECT_EQ(build_table(8), build_table(8));
  const auto t = build_table(8);
  for (std::size_t i = 0; i < 64; ++i) {
    if (t.enabled[i]) {
      EXPECT_GT(t.bucket_error[i], 0.01);
      EXPECT_NE(t.correction[i], 0);
    }
  }
  EXPECT_EQ(bucket_index(0, 0, 8), 0);
  EXPECT_EQ(bucket_index(255, 255, 8), 63);
  EXPECT_EQ(bucket_index(255, 0, 8), 56);
}

TEST(Property, RelativeErrorStaysSmall) {
  Rng rng(17);
  const ApproxDivider d;
  double total = 0;
  const int count = 20000;
  for (int k = 0; k < count; ++k) {
    const auto a = static_cast<double>(rng.uniform(1, 32767));
    const auto b = static_cast<double>(rng.uniform(1, 32767));
    const double err = std::abs(d.divide(a, b) - a / b) / (a / b);
    ASSERT_LT(err, 0.08);
    total += err;
  }
  EXPECT_LT(total / count, 0.01);
}

std::int64_t approx8(std::int64_t n, std::int64_t d) {
  static const ApproxDivider divider;
  return divider.divide_fixed(n, d, 0);
}

TEST(Jacobi, ApproximateDividerTracksExact) {
  const auto p = load_problem(test::data_path("lp_dense.json"));
  const auto sys = sle::select_square_system(p, {});
  sle::FixedPointConfig cfg;
  cfg.frac_bits = 8;
  sle::SoftwareBackend exact(p, sle::exact_round_divide), approx(p, approx8);
  const auto e = sle::solve_sle_fixed(sys, p.n(), cfg, exact);
  const auto a = sle::solve_sle_fixed(sys, p.n(), cfg, approx);
  ASSERT_EQ(e.status, Status::Optimal);
  for (std::size_t j = 0; j < sys.size(); ++j) {
    EXPECT_NEAR(a.x[j], e.x[j], 0.1 * std::abs(e.x[j]));
  }
}

}  // namespace
}  // namespace spark::div
