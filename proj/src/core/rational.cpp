// SPDX-License-Identifier: Apache-2.0
#include "spark/core/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace spark {

Rational floor_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return Rational(q);
}

Rational ceil_rational(const Rational& r) { return -floor_rational(-r); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational exact_from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // 53 significant bits fit in an int64 after scaling.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational out(scaled);
  if (exp > 0) {
    out *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    out /= Rational(BigInt(1) << -exp);
  }
  return out;
}

std::string to_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(text.substr(0, slash)));
    BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
}

}  // namespace spark
