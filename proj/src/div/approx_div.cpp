// SPDX-License-Identifier: Apache-2.0
#include "spark/div/approx_div.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spark::div {

namespace {

struct Split {
  int exponent;        // value = 2^exponent * (1 + fraction / 2^m)
  std::uint32_t fraction;
  bool fraction_exact;  // no bits were lost to truncation
  bool power_of_two;
};

Split split(double magnitude, int m_bits) {
  int e = 0;
  const double mant = std::frexp(magnitude, &e);  // [0.5, 1)
  const double f = mant * 2.0 - 1.0;              // [0, 1)
  const double scaled = std::ldexp(f, m_bits);
  const auto frac = static_cast<std::uint32_t>(scaled);
  return {e - 1, frac, scaled == static_cast<double>(frac), f == 0.0};
}

/// Antilog of a log-domain mantissa difference d in (-1, 1) using the same
/// linear approximation as the forward direction.
double mitchell_antilog(double d, int exponent) {
  if (d >= 0) return std::ldexp(1.0 + d, exponent);
  return std::ldexp(2.0 + d, exponent - 1);
}

double approx_core(double a, double b, int m_bits, const CorrectionTable* table) {
  const Split sa = split(a, m_bits);
  const Split sb = split(b, m_bits);
  const int exponent = sa.exponent - sb.exponent;
  if (sb.power_of_two) return std::ldexp(a, -sb.exponent);
  const double scale = std::ldexp(1.0, -m_bits);
  double d = (static_cast<double>(sa.fraction) - static_cast<double>(sb.fraction)) * scale;
  if (table) {
    const int idx = bucket_index(sa.fraction, sb.fraction, m_bits);
    if (table->enabled[idx]) d += std::ldexp(table->correction[idx], -kCorrectionScaleBits);
  }
  d = std::clamp(d, -1.0 + scale, 1.0 - scale);
  return mitchell_antilog(d, exponent);
}

}  // namespace

int bucket_index(std::uint32_t frac_a, std::uint32_t frac_b, int m_bits) {
  const int shift = m_bits - 3;
  return static_cast<int>(((frac_a >> shift) << 3) | (frac_b >> shift));
}

CorrectionTable build_table(int m_bits, double error_trigger) {
  if (m_bits < 4 || m_bits > 16) {
    throw std::invalid_argument("m_bits must lie in [4, 16], got " + std::to_string(m_bits));
  }
  CorrectionTable table;
  const std::uint32_t per_bucket = 1U << (m_bits - 3);
  // Exhaustive through m = 11 (256 x 256 pairs per bucket), strided above.
  const std::uint32_t stride = per_bucket > 256 ? per_bucket / 256 : 1;
  const double scale = std::ldexp(1.0, -m_bits);
  for (std::uint32_t ha = 0; ha < 8; ++ha) {
    for (std::uint32_t hb = 0; hb < 8; ++hb) {
      double residual_sum = 0;
      double error_sum = 0;
      std::uint64_t samples = 0;
      for (std::uint32_t la = 0; la < per_bucket; la += stride) {
        for (std::uint32_t lb = 0; lb < per_bucket; lb += stride) {
          const double fa = (ha * per_bucket + la) * scale;
          const double fb = (hb * per_bucket + lb) * scale;
          const double exact_ratio = (1.0 + fa) / (1.0 + fb);  // in (0.5, 2)
          const double d = fa - fb;
          const double ideal = exact_ratio >= 1.0 ? exact_ratio - 1.0 : 2.0 * exact_ratio - 2.0;
          residual_sum += ideal - d;
          const double approx = mitchell_antilog(d, 0);
          error_sum += std::abs(approx - exact_ratio) / exact_ratio;
          ++samples;
        }
      }
      const auto idx = static_cast<int>(ha * 8 + hb);
      const double mean_residual = residual_sum / static_cast<double>(samples);
      const double units = std::round(std::ldexp(mean_residual, kCorrectionScaleBits));
      table.correction[idx] = static_cast<std::int8_t>(std::clamp(units, -128.0, 127.0));
      table.bucket_error[idx] = error_sum / static_cast<double>(samples);
      table.enabled[idx] = table.bucket_error[idx] > error_trigger && table.correction[idx] != 0;
    }
  }
  return table;
}

ApproxDivider::ApproxDivider(DivConfig config)
    : config_(config), table_(build_table(config.m_bits, config.error_trigger)) {}

double ApproxDivider::divide(double a, double b) const {
  if (b == 0.0) throw DivisionByZero("approximate divide by zero");
  if (a == 0.0) return 0.0;
  const bool negative = (a < 0) != (b < 0);
  const double q = approx_core(std::abs(a), std::abs(b), config_.m_bits, &table_);
  return negative ? -q : q;
}

std::int64_t ApproxDivider::divide_fixed(std::int64_t a, std::int64_t b, int frac_bits) const {
  const double q = divide(static_cast<double>(a), static_cast<double>(b));
  return static_cast<std::int64_t>(std::llround(std::ldexp(q, frac_bits)));
}

std::int64_t exact_divide_fixed(std::int64_t a, std::int64_t b, int frac_bits) {
  if (b == 0) throw DivisionByZero("exact divide by zero");
  // Round half away from zero on the exact quotient a * 2^f / b.
  const __int128 num = static_cast<__int128>(a) << frac_bits;
  const __int128 den = b;
  const bool negative = (num < 0) != (den < 0);
  const __int128 an = num < 0 ? -num : num;
  const __int128 ad = den < 0 ? -den : den;
  const __int128 q = (2 * an + ad) / (2 * ad);
  return static_cast<std::int64_t>(negative ? -q : q);
}

}  // namespace spark::div
