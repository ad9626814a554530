// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace spark {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational floor_rational(const Rational& r);
Rational ceil_rational(const Rational& r);
bool is_integer(const Rational& r);

double to_double(const Rational& r);

/// Exact conversion; every finite double is a dyadic rational.
Rational exact_from_double(double v);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

}  // namespace spark
