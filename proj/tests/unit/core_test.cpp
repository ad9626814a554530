// SPDX-License-Identifier: Apache-2.0
#include "spark/core/random.hpp"
#include "spark/core/rational.hpp"

#include <gtest/gtest.h>

namespace spark {
namespace {

TEST(Rational, FloorAndCeilFollowTheNumberLine) {
  EXPECT_EQ(floor_rational(Rational(7, 2)), 3);
  EXPECT_EQ(ceil_rational(Rational(7, 2)), 4);
  EXPECT_EQ(floor_rational(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_rational(Rational(-7, 2)), -3);
  EXPECT_EQ(floor_rational(Rational(5)), 5);
  EXPECT_EQ(ceil_rational(Rational(-5)), -5);
}

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("x"), std::exception);
}

TEST(Rational, DoublesConvertExactly) {
  EXPECT_EQ(exact_from_double(0.75), Rational(3, 4));
  EXPECT_EQ(exact_from_double(-2.5), Rational(-5, 2));
  EXPECT_EQ(exact_from_double(0.0), Rational(0));
  EXPECT_DOUBLE_EQ(to_double(exact_from_double(0.1)), 0.1);
  EXPECT_TRUE(is_integer(Rational(4, 2)));
  EXPECT_FALSE(is_integer(Rational(1, 3)));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto va = a.uniform(-9, 9);
    EXPECT_EQ(va, b.uniform(-9, 9));
    differs = differs || va != c.uniform(-9, 9);
    EXPECT_GE(va, -9);
    EXPECT_LE(va, 9);
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, DegenerateRangeAndUnitInterval) {
  Rng r(1);
  EXPECT_EQ(r.uniform(5, 5), 5);
  for (int k = 0; k < 1000; ++k) {
    const double u = r.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace spark
