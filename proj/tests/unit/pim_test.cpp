// SPDX-License-Identifier: Apache-2.0
#include "spark/core/random.hpp"
#include "spark/pim/array.hpp"

#include <gtest/gtest.h>

namespace spark::pim {
namespace {

TEST(Geometry, DefaultShape) {
  const CacheGeometry g;
  EXPECT_EQ(g.words_per_bank_row(), 16u);
  EXPECT_EQ(g.words_per_line(), 32u);
  EXPECT_EQ(g.bank_rows_per_line(), 2u);
  EXPECT_EQ(g.groups(), 8u);
  EXPECT_EQ(g.slices(), 8u);
  EXPECT_EQ(g.capacity_lines(), 1024u);
  CacheGeometry bad;
  bad.banks = 15;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = CacheGeometry{};
  bad.cols = 100;
  EXPECT_THROW(BankState{bad}, std::invalid_argument);
}

TEST(Store, ThirtyTwoCoefficientsFillOneLine) {
  BankState bs{CacheGeometry{}};
  const std::vector<std::int64_t> full(32, 1), over(33, 1);
  const auto a = bs.store(full);
  const auto b = bs.store(over);
  EXPECT_EQ(bs.mapping().rows[a].lines, 1u);
  EXPECT_EQ(bs.mapping().rows[b].lines, 2u);
  EXPECT_EQ(bs.mapping().rows[b].first_line, 1u);
  EXPECT_EQ(bs.mapping().total_lines, 3u);
  EXPECT_FALSE(bs.mapping().overflow);
}

TEST(Store, ReplicasHoldIdenticalBits) {
  BankState bs{CacheGeometry{}};
  const std::vector<std::int64_t> words{5, -3, 32767, -32768};
  bs.store(words);
  EXPECT_TRUE(bs.replicas_consistent());
  const auto g = bs.geometry();
  for (std::uint32_t lane = 0; lane < words.size(); ++lane) {
    EXPECT_EQ(bs.word(Mapping::bank_of(0, 0, g), 0, lane), words[lane]);
    EXPECT_EQ(bs.word(Mapping::bank_of(0, 1, g), 0, lane), words[lane]);
  }
  EXPECT_EQ(bs.bit(0, 0, 0), 1);
  EXPECT_EQ(bs.bit(0, 0, 1), 0);
}

TEST(Store, OutOfRangeCoefficientThrows) {
  BankState bs{CacheGeometry{}};
  const std::vector<std::int64_t> too_big{32768};
  EXPECT_THROW(bs.store(too_big), QuantizationError);
}

TEST(Store, OverflowPastCapacity) {
  CacheGeometry g;
  g.rows = 2;
  BankState bs{g};
  const std::vector<std::int64_t> w{1, 2};
  for (int k = 0; k < 8; ++k) bs.store(w);
  EXPECT_FALSE(bs.mapping().overflow);
  const auto id = bs.store(w);
  EXPECT_TRUE(bs.mapping().overflow);
  PimEvents ev;
  const std::vector<std::int64_t> x{3, 4};
  EXPECT_EQ(bs.mac_vector(id, x, ev), 11);
}

TEST(Bitcell, AndTruthTable) {
  PimEvents ev;
  EXPECT_EQ(bitcell_and(0, 0, &ev), 0);
  EXPECT_EQ(bitcell_and(0, 1, &ev), 0);
  EXPECT_EQ(bitcell_and(1, 0, &ev), 0);
  EXPECT_EQ(bitcell_and(1, 1, &ev), 1);
  EXPECT_EQ(ev.rbl_discharges, 1u);
}

TEST(RowDotProduct, SignedLanes) {
  BankState bs{CacheGeometry{}};
  const std::vector<std::int64_t> words{3, -1, 5};
  bs.store(words);
  PimEvents ev;
  const std::vector<std::uint8_t> x{1, 1, 0};
  const auto buf = bs.row_dot_product(0, 0, x, ev);
  EXPECT_EQ(buf, (std::vector<std::int64_t>{3, -1, 0}));
  EXPECT_EQ(ev.row_activations, 1u);
  EXPECT_EQ(ev.shift_adds, 3u);
  EXPECT_EQ(ev.rbl_discharges, 18u);
}

TEST(RowDotProduct, EmptyRowStillActivates) {
  BankState bs{CacheGeometry{}};
  PimEvents ev;
  const std::vector<std::uint8_t> x(16, 1);
  const auto buf = bs.row_dot_product(3, 40, x, ev);
  EXPECT_EQ(buf, std::vector<std::int64_t>(16, 0));
  EXPECT_EQ(ev.row_activations, 1u);
  EXPECT_EQ(ev.rbl_discharges, 0u);
  const std::vector<std::uint8_t> wide(17, 1);
  EXPECT_THROW(bs.row_dot_product(0, 0, wide, ev), std::invalid_argument);
}

TEST(Mac, HandExampleAndEvents) {
  BankState bs{CacheGeometry{}};
  const std::vector<std::int64_t> c{2, -3, 7};
  const auto id = bs.store(c);
  PimEvents ev;
  const std::vector<std::int64_t> x{4, 1, -2};
  EXPECT_EQ(bs.mac_vector(id, x, ev), -9);
  EXPECT_EQ(ev.word_macs, 3u);
  EXPECT_EQ(ev.row_activations, 16u);  // one per X bit
  EXPECT_EQ(bs.lane_products(id, x, ev), (std::vector<std::int64_t>{8, -3, -14}));
  const std::vector<std::int64_t> wrong{1, 2};
  EXPECT_THROW(bs.mac_vector(id, wrong, ev), std::invalid_argument);
  const std::vector<std::int64_t> wide{1, 1, 40000};
  EXPECT_THROW(bs.mac_vector(id, wide, ev), QuantizationError);
}

// Property: the bit-serial result equals the integer dot product.
TEST(Property, MacMatchesReference) {
  Rng rng(99);
  BankState bs{CacheGeometry{}};
  std::vector<std::vector<std::int64_t>> rows;
  for (int k = 0; k < 40; ++k) {
    std::vector<std::int64_t> r(static_cast<std::size_t>(rng.uniform(1, 70)));
    for (auto& v : r) v = rng.uniform(-32768, 32767);
    bs.store(r);
    rows.push_back(std::move(r));
  }
  for (int t = 0; t < 400; ++t) {
    const auto id = static_cast<std::size_t>(rng.uniform(0, 39));
    std::vector<std::int64_t> x(rows[id].size());
    for (auto& v : x) v = rng.uniform(-32768, 32767);
    PimEvents ev;
    ASSERT_EQ(bs.mac_vector(id, x, ev), reference_mac(rows[id], x));
  }
}

}  // namespace
}  // namespace spark::pim
