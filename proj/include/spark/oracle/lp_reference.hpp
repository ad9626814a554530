// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spark::oracle {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact solution of M x = b by fraction-exact Gaussian elimination with
/// partial pivoting on the first nonzero entry.
std::vector<boost::multiprecision::cpp_rational> lp_reference(
    const std::vector<std::vector<std::int64_t>>& m, const std::vector<std::int64_t>& b);

}  // namespace spark::oracle
