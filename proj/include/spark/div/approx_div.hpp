// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace spark::div {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DivConfig {
  int m_bits = 8;                // leading mantissa fraction bits fed to the subtractor
  double error_trigger = 0.01;   // bucket mean relative error that enables correction
};

/// 64 one-byte corrections indexed by the top three fraction bits of the
/// dividend (high half of the index) and divisor (low half). Each entry is
/// added to the log-domain mantissa difference in units of 2^-10.
struct CorrectionTable {
  std::array<std::int8_t, 64> correction{};
  std::array<bool, 64> enabled{};
  std::array<double, 64> bucket_error{};  // mean relative error before correction

  bool operator==(const CorrectionTable&) const = default;
};

inline constexpr int kCorrectionScaleBits = 10;

CorrectionTable build_table(int m_bits, double error_trigger = 0.01);

/// Mantissa-subtraction divider. Operands are split into sign, exponent and
/// a fraction truncated to m_bits; the quotient fraction is the difference
/// of the fractions, re-expanded linearly. A divisor with zero fraction is
/// handled by an exact exponent shift.
class ApproxDivider {
 public:
  explicit ApproxDivider(DivConfig config = {});

  double divide(double a, double b) const;

  /// round(a / b * 2^frac_bits) using the approximate quotient.
  std::int64_t divide_fixed(std::int64_t a, std::int64_t b, int frac_bits) const;

  const DivConfig& config() const { return config_; }
  const CorrectionTable& table() const { return table_; }

 private:
  DivConfig config_;
  CorrectionTable table_;
};

std::int64_t exact_divide_fixed(std::int64_t a, std::int64_t b, int frac_bits);

/// Table bucket for a pair of m-bit fractions.
int bucket_index(std::uint32_t frac_a, std::uint32_t frac_b, int m_bits);

}  // namespace spark::div
