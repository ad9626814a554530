// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"
#include "spark/ilp/solution.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spark::oracle {

class UnboundedBoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// Per-variable upper bound: the tightest floor(D_i / C_ij) over rows whose
/// coefficients are all nonnegative and have C_ij > 0. Such a row caps x_j
/// because every other term is nonnegative. Throws UnboundedBoxError when a
/// variable has no such row.
std::vector<std::int64_t> derive_box(const IlpProblem& problem);

/// Exhaustive scan of {0..box_j}. Returns Optimal with the lexicographically
/// first optimal point, or Infeasible. Throws EnumerationCapError when the
/// box holds more than kEnumerationCap points.
Solution brute_force_ilp(const IlpProblem& problem, const std::vector<std::int64_t>& box);
Solution brute_force_ilp(const IlpProblem& problem);

}  // namespace spark::oracle
