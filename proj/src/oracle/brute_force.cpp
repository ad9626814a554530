// SPDX-License-Identifier: Apache-2.0
#include "spark/oracle/brute_force.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace spark::oracle {

namespace {

// Exact for every width the problem type admits: |C|,|x| < 2^32, n small.
using Big = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool point_feasible(const IlpProblem& p, const std::vector<std::int64_t>& x) {
  for (const auto& row : p.constraints) {
    Big lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += static_cast<Big>(row.coeffs[j]) * x[j];
    if (lhs > row.rhs) return false;
  }
  return true;
}

Big objective_of(const IlpProblem& p, const std::vector<std::int64_t>& x) {
  Big total = 0;
  for (std::size_t j = 0; j < x.size(); ++j) total += static_cast<Big>(p.cost[j]) * x[j];
  return total;
}

}  // namespace

std::vector<std::int64_t> derive_box(const IlpProblem& p) {
  const std::size_t n = p.cost.size();
  std::vector<std::optional<std::int64_t>> box(n);
  for (const auto& row : p.constraints) {
    if (std::any_of(row.coeffs.begin(), row.coeffs.end(), [](std::int64_t c) { return c < 0; })) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[j] <= 0) continue;
      const std::int64_t cap = floor_div(row.rhs, row.coeffs[j]);
      box[j] = box[j] ? std::min(*box[j], cap) : cap;
    }
  }
  std::vector<std::int64_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!box[j]) throw UnboundedBoxError("variable " + std::to_string(j) + " has no finite box");
    out[j] = *box[j];
  }
  return out;
}

Solution brute_force_ilp(const IlpProblem& p, const std::vector<std::int64_t>& box) {
  const std::size_t n = p.cost.size();
  if (box.size() != n) throw std::invalid_argument("box dimension mismatch");
  Solution result;
  result.status = Status::Infeasible;
  if (std::any_of(box.begin(), box.end(), [](std::int64_t b) { return b < 0; })) return result;

  std::uint64_t points = 1;
  for (auto b : box) {
    const auto width = static_cast<std::uint64_t>(b) + 1;
    if (points > kEnumerationCap / width) {
      throw EnumerationCapError("box exceeds the enumeration cap of 10^7 points");
    }
    points *= width;
  }

  std::vector<std::int64_t> x(n, 0);
  std::optional<std::vector<std::int64_t>> best;
  Big best_value = 0;
  std::uint64_t feasible_points = 0;
  for (std::uint64_t visited = 0; visited < points; ++visited) {
    if (point_feasible(p, x)) {
      ++feasible_points;
      const Big value = objective_of(p, x);
      const bool better = !best || (p.sense == Sense::Max ? value > best_value : value < best_value);
      if (better) {
        best = x;
        best_value = value;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {  // odometer increment, variable 0 fastest
      if (x[j] < box[j]) {
        ++x[j];
        break;
      }
      x[j] = 0;
    }
  }
  if (!best) return result;

  // Second pass: the reported optimum is feasible and nothing in the box beats it.
  if (!point_feasible(p, *best)) throw std::logic_error("oracle produced an infeasible optimum");
  std::fill(x.begin(), x.end(), 0);
  std::uint64_t recount = 0;
  for (std::uint64_t visited = 0; visited < points; ++visited) {
    if (point_feasible(p, x)) {
      ++recount;
      const Big value = objective_of(p, x);
      if (p.sense == Sense::Max ? value > best_value : value < best_value) {
        throw std::logic_error("oracle optimum is dominated");
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < box[j]) {
        ++x[j];
        break;
      }
      x[j] = 0;
    }
  }
  if (recount != feasible_points) throw std::logic_error("oracle enumeration is not repeatable");

  result.status = Status::Optimal;
  result.x.assign(best->begin(), best->end());
  result.objective = Rational(static_cast<std::int64_t>(best_value));
  return result;
}

Solution brute_force_ilp(const IlpProblem& p) { return brute_force_ilp(p, derive_box(p)); }

}  // namespace spark::oracle
