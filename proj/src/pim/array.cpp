// SPDX-License-Identifier: Apache-2.0
#include "spark/pim/array.hpp"

#include <bit>
#include <string>

namespace spark::pim {

void CacheGeometry::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("geometry: " + msg); };
  if (banks == 0 || rows == 0 || cols == 0) fail("banks, rows and cols must be positive");
  if (word_bits < 2 || word_bits > 32) fail("word_bits must lie in [2, 32]");
  if (cols % word_bits != 0) fail("cols must be a multiple of word_bits");
  if (cols % 64 != 0) fail("cols must be a multiple of 64");
  if ((line_bytes * 8) % cols != 0) fail("a line must span whole bank rows");
  if (x_bits == 0 || banks % x_bits != 0) fail("banks must be a multiple of x_bits");
  if (x_width < 2 || x_width > 32) fail("x_width must lie in [2, 32]");
}

PimEvents& PimEvents::operator+=(const PimEvents& o) {
  row_activations += o.row_activations;
  rbl_discharges += o.rbl_discharges;
  shift_adds += o.shift_adds;
  adder_reductions += o.adder_reductions;
  word_macs += o.word_macs;
  return *this;
}

LineSlot Mapping::slot(std::size_t line, const CacheGeometry& g) const {
  return {static_cast<std::uint32_t>(line % g.groups()),
          static_cast<std::uint64_t>(line / g.groups()) * g.bank_rows_per_line()};
}

std::uint32_t Mapping::bank_of(std::uint32_t group, std::uint32_t replica, const CacheGeometry& g) {
  return group * g.x_bits + replica;
}

std::uint8_t bitcell_and(std::uint8_t stored_bit, std::uint8_t x_bit, PimEvents* events) {
  const std::uint8_t out = (stored_bit & x_bit) & 1U;
  if (events && out) ++events->rbl_discharges;
  return out;
}

std::int64_t reference_mac(std::span<const std::int64_t> coeffs, std::span<const std::int64_t> x) {
  if (coeffs.size() != x.size()) throw std::invalid_argument("reference_mac: size mismatch");
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * x[j];
  return acc;
}

BankState::BankState(CacheGeometry geometry) : geometry_(geometry) {
  geometry_.validate();
  banks_.resize(geometry_.banks);
}

BankState::BitRow& BankState::row_ref(std::uint32_t bank, std::uint64_t row) {
  auto& rows = banks_[bank];
  if (rows.size() <= row) rows.resize(row + 1, BitRow(geometry_.cols / 64, 0));
  return rows[row];
}

const BankState::BitRow* BankState::row_ptr(std::uint32_t bank, std::uint64_t row) const {
  const auto& rows = banks_.at(bank);
  return row < rows.size() ? &rows[row] : nullptr;
}

std::size_t BankState::store(std::span<const std::int64_t> words) {
  const auto& g = geometry_;
  const std::int64_t limit = std::int64_t{1} << (g.word_bits - 1);
  for (auto w : words) {
    if (w < -limit || w >= limit) {
      throw QuantizationError("coefficient " + std::to_string(w) + " does not fit " +
                              std::to_string(g.word_bits) + " bits");
    }
  }
  Placement place;
  place.first_line = mapping_.total_lines;
  place.words = words.size();
  place.lines = std::max<std::size_t>(1, (words.size() + g.words_per_line() - 1) / g.words_per_line());
  const std::uint64_t mask = (g.word_bits == 64) ? ~0ULL : ((1ULL << g.word_bits) - 1);
  const std::uint32_t wpr = g.words_per_bank_row();
  for (std::size_t k = 0; k < words.size(); ++k) {
    const std::size_t line = place.first_line + k / g.words_per_line();
    const std::size_t in_line = k % g.words_per_line();
    const LineSlot slot = mapping_.slot(line, g);
    const std::uint64_t bank_row = slot.bank_row + in_line / wpr;
    const std::uint32_t col = static_cast<std::uint32_t>(in_line % wpr) * g.word_bits;
    const std::uint64_t bits = static_cast<std::uint64_t>(words[k]) & mask;
    for (std::uint32_t r = 0; r < g.x_bits; ++r) {
      auto& row = row_ref(Mapping::bank_of(slot.group, r, g), bank_row);
      for (std::uint32_t b = 0; b < g.word_bits; ++b) {
        if ((bits >> b) & 1ULL) row[(col + b) / 64] |= 1ULL << ((col + b) % 64);
      }
    }
  }
  mapping_.rows.push_back(place);
  mapping_.total_lines += place.lines;
  mapping_.overflow = mapping_.total_lines > g.capacity_lines();
  return mapping_.rows.size() - 1;
}

void BankState::store_all(std::span<const std::vector<std::int64_t>> rows) {
  for (const auto& r : rows) store(r);
}

std::uint8_t BankState::bit(std::uint32_t bank, std::uint64_t row, std::uint32_t col) const {
  const BitRow* r = row_ptr(bank, row);
  if (!r) return 0;
  return static_cast<std::uint8_t>(((*r)[col / 64] >> (col % 64)) & 1ULL);
}

std::int64_t BankState::word(std::uint32_t bank, std::uint64_t row, std::uint32_t lane) const {
  const auto wb = geometry_.word_bits;
  std::int64_t value = 0;
  for (std::uint32_t b = 0; b < wb; ++b) {
    if (bit(bank, row, lane * wb + b)) value += (b == wb - 1) ? -(std::int64_t{1} << b)
                                                              : (std::int64_t{1} << b);
  }
  return value;
}

std::vector<std::int64_t> BankState::row_dot_product(std::uint32_t bank, std::uint64_t row,
                                                     std::span<const std::uint8_t> x_bits,
                                                     PimEvents& events) const {
  const auto& g = geometry_;
  const std::uint32_t wb = g.word_bits;
  if (x_bits.size() > g.words_per_bank_row()) {
    throw std::invalid_argument("row_dot_product: more X bits than lanes in a bank row");
  }
  std::vector<std::int64_t> buffer(x_bits.size(), 0);
  ++events.row_activations;
  ++events.adder_reductions;
  const BitRow* r = row_ptr(bank, row);
  const std::uint64_t lane_mask = (1ULL << wb) - 1;
  for (std::size_t lane = 0; lane < x_bits.size(); ++lane) {
    ++events.shift_adds;
    if (!r || !(x_bits[lane] & 1U)) continue;
    const std::uint32_t col = static_cast<std::uint32_t>(lane) * wb;
    std::uint64_t cells = ((*r)[col / 64] >> (col % 64));
    if ((col % 64) + wb > 64) cells |= (*r)[col / 64 + 1] << (64 - col % 64);
    cells &= lane_mask;  // every cell in the lane sees the same broadcast X bit
    events.rbl_discharges += static_cast<std::uint64_t>(std::popcount(cells));
    // Shift-add over bit positions; the sign position carries negative weight.
    const std::uint64_t msb = 1ULL << (wb - 1);
    buffer[lane] = static_cast<std::int64_t>(cells & ~msb) - static_cast<std::int64_t>(cells & msb);
  }
  return buffer;
}

void BankState::check_x(std::span<const std::int64_t> x) const {
  const std::int64_t half = std::int64_t{1} << (geometry_.x_width - 1);
  for (auto v : x) {
    if (v < -half || v >= half) {
      throw QuantizationError("X value " + std::to_string(v) + " does not fit " +
                              std::to_string(geometry_.x_width) + "-bit two's complement");
    }
  }
}

std::vector<std::int64_t> BankState::lane_products(std::size_t row_id,
                                                   std::span<const std::int64_t> x,
                                                   PimEvents& events) const {
  const auto& g = geometry_;
  const Placement& place = mapping_.rows.at(row_id);
  if (x.size() != place.words) throw std::invalid_argument("mac_vector: operand size mismatch");
  check_x(x);
  std::vector<std::int64_t> products(x.size(), 0);
  const std::uint32_t wpr = g.words_per_bank_row();
  const std::uint32_t wpl = g.words_per_line();
  std::vector<std::uint8_t> lane_bits;
  for (std::size_t line = 0; line < place.lines; ++line) {
    const LineSlot slot = mapping_.slot(place.first_line + line, g);
    for (std::uint32_t half = 0; half < g.bank_rows_per_line(); ++half) {
      const std::size_t base = line * wpl + static_cast<std::size_t>(half) * wpr;
      if (base >= place.words) break;
      const std::size_t count = std::min<std::size_t>(wpr, place.words - base);
      lane_bits.assign(count, 0);
      for (std::uint32_t s = 0; s < g.slices(); ++s) {
        for (std::uint32_t r = 0; r < g.x_bits; ++r) {
          const std::uint32_t t = s * g.x_bits + r;
          if (t >= g.x_width) break;
          for (std::size_t k = 0; k < count; ++k) {
            lane_bits[k] = static_cast<std::uint8_t>((static_cast<std::uint64_t>(x[base + k]) >> t) & 1ULL);
          }
          const auto buffer = row_dot_product(Mapping::bank_of(slot.group, r, g),
                                              slot.bank_row + half, lane_bits, events);
          const std::int64_t weight = std::int64_t{1} << t;
          for (std::size_t k = 0; k < count; ++k) {
            products[base + k] += (t == g.x_width - 1) ? -buffer[k] * weight : buffer[k] * weight;
          }
        }
      }
    }
  }
  events.word_macs += place.words;
  return products;
}

std::int64_t BankState::mac_vector(std::size_t row_id, std::span<const std::int64_t> x,
                                   PimEvents& events) const {
  // The adder reduction sums each row buffer; the cross-bank shift-add then
  // weights each buffer by its X bit position. Summing per-lane weighted
  // products is the same arithmetic in a different order.
  std::int64_t acc = 0;
  for (auto p : lane_products(row_id, x, events)) acc += p;
  return acc;
}

bool BankState::replicas_consistent() const {
  const auto& g = geometry_;
  for (std::uint32_t grp = 0; grp < g.groups(); ++grp) {
    const auto& ref = banks_[Mapping::bank_of(grp, 0, g)];
    for (std::uint32_t r = 1; r < g.x_bits; ++r) {
      if (banks_[Mapping::bank_of(grp, r, g)] != ref) return false;
    }
  }
  return true;
}

}  // namespace spark::pim
