// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace spark::pim {

class QuantizationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct CacheGeometry {
  std::uint32_t banks = 16;
  std::uint32_t rows = 256;
  std::uint32_t cols = 256;
  std::uint32_t word_bits = 16;
  std::uint32_t line_bytes = 64;
  std::uint32_t x_bits = 2;    // X bits handled per array pass (replication factor)
  std::uint32_t x_width = 16;  // total two's-complement width of an X operand

  std::uint32_t words_per_bank_row() const { return cols / word_bits; }
  std::uint32_t words_per_line() const { return line_bytes * 8 / word_bits; }
  std::uint32_t bank_rows_per_line() const { return words_per_line() / words_per_bank_row(); }
  std::uint32_t groups() const { return banks / x_bits; }
  std::uint32_t slices() const { return (x_width + x_bits - 1) / x_bits; }
  std::uint64_t capacity_lines() const {
    return static_cast<std::uint64_t>(groups()) * (rows / bank_rows_per_line());
  }

  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;

  bool operator==(const CacheGeometry&) const = default;
};

/// Event counts produced by array activity. Cost accounting lives elsewhere.
struct PimEvents {
  std::uint64_t row_activations = 0;
  std::uint64_t rbl_discharges = 0;
  std::uint64_t shift_adds = 0;
  std::uint64_t adder_reductions = 0;
  std::uint64_t word_macs = 0;

  PimEvents& operator+=(const PimEvents& o);
  bool operator==(const PimEvents&) const = default;
};

struct Placement {
  std::size_t first_line = 0;
  std::size_t lines = 0;
  std::size_t words = 0;
};

struct LineSlot {
  std::uint32_t group;
  std::uint64_t bank_row;  // first of bank_rows_per_line() consecutive rows
};

struct Mapping {
  std::vector<Placement> rows;  // indexed by stored row id
  std::size_t total_lines = 0;
  bool overflow = false;

  LineSlot slot(std::size_t line, const CacheGeometry& g) const;
  /// Banks holding replica r of `group`; replica r serves X bit r of each slice.
  static std::uint32_t bank_of(std::uint32_t group, std::uint32_t replica, const CacheGeometry& g);
};

/// Sense-amplifier rule of one bitcell on the read port: the read bitline
/// only falls below the threshold when both the stored bit and the wordline
/// bit are 1.
std::uint8_t bitcell_and(std::uint8_t stored_bit, std::uint8_t x_bit, PimEvents* events = nullptr);

std::int64_t reference_mac(std::span<const std::int64_t> coeffs, std::span<const std::int64_t> x);

/// Bit-level state of the compute-mode array. Rows beyond the physical
/// capacity are kept virtually so that computation stays exact; the mapping
/// reports the overflow for fill modeling.
class BankState {
 public:
  explicit BankState(CacheGeometry geometry);

  /// Stores one coefficient vector (for example [C_i | D_i]) starting on a
  /// fresh line. Returns its row id.
  std::size_t store(std::span<const std::int64_t> words);
  void store_all(std::span<const std::vector<std::int64_t>> rows);

  const Mapping& mapping() const { return mapping_; }
  const CacheGeometry& geometry() const { return geometry_; }

  std::uint8_t bit(std::uint32_t bank, std::uint64_t row, std::uint32_t col) const;
  std::int64_t word(std::uint32_t bank, std::uint64_t row, std::uint32_t lane) const;

  /// One read-wordline activation: ANDs every cell of the row with its
  /// lane's X bit, then each shift-add unit folds its 16 columns into a
  /// signed partial product. Returns the row buffer.
  std::vector<std::int64_t> row_dot_product(std::uint32_t bank, std::uint64_t row,
                                            std::span<const std::uint8_t> x_bits,
                                            PimEvents& events) const;

  /// Sum_j C_j * x_j over stored row `row_id`, bit-serially over X.
  std::int64_t mac_vector(std::size_t row_id, std::span<const std::int64_t> x,
                          PimEvents& events) const;

  /// Per-lane products C_j * x_j as left in the row buffers by mac_vector.
  std::vector<std::int64_t> lane_products(std::size_t row_id, std::span<const std::int64_t> x,
                                          PimEvents& events) const;

  bool replicas_consistent() const;

 private:
  using BitRow = std::vector<std::uint64_t>;

  BitRow& row_ref(std::uint32_t bank, std::uint64_t row);
  const BitRow* row_ptr(std::uint32_t bank, std::uint64_t row) const;
  void check_x(std::span<const std::int64_t> x) const;

  CacheGeometry geometry_;
  Mapping mapping_;
  std::vector<std::vector<BitRow>> banks_;
};

}  // namespace spark::pim
