// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/core/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spark {

class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { Max, Min };

/// One canonical row: coeffs . x <= rhs.
struct Constraint {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;

  bool operator==(const Constraint&) const = default;
};

enum class Relation { Le, Ge, Eq };

struct RawConstraint {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
  Relation relation = Relation::Le;
};

/// Optimization problem over x >= 0 with every row stored as C_i . x <= D_i.
struct IlpProblem {
  std::string name;
  Sense sense = Sense::Max;
  std::vector<std::int64_t> cost;
  std::vector<Constraint> constraints;
  bool integral = true;
  int coeff_width = 16;

  std::size_t n() const { return cost.size(); }
  std::size_t m() const { return constraints.size(); }

  bool operator==(const IlpProblem&) const = default;
};

/// Builds a canonical problem: >= rows are negated, = rows become a pair of
/// <= rows, all-zero rows with a nonnegative rhs are dropped. Throws
/// ProblemError when the result violates the representation invariants.
IlpProblem make_problem(std::string name, Sense sense, std::vector<std::int64_t> cost,
                        std::span<const RawConstraint> rows, bool integral = true,
                        int coeff_width = 16);

/// Re-applies the canonical rules to an already-canonical problem.
/// normalize(normalize(p)) == normalize(p).
IlpProblem normalize(const IlpProblem& problem);

/// Throws ProblemError on dimension, emptiness or width violations.
void validate(const IlpProblem& problem);

bool fits_width(std::int64_t value, int width);
bool is_vacuous(const Constraint& row);

Rational evaluate_objective(const IlpProblem& problem, std::span<const Rational> x);
std::int64_t evaluate_objective(const IlpProblem& problem, std::span<const std::int64_t> x);

struct Violation {
  enum class Kind { Constraint, Negative, Fractional };
  Kind kind;
  std::size_t index;  // row for Constraint, variable otherwise

  bool operator==(const Violation&) const = default;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violated;
};

FeasibilityReport check_feasibility(const IlpProblem& problem, std::span<const Rational> x);
FeasibilityReport check_feasibility(const IlpProblem& problem, std::span<const std::int64_t> x);

/// Tolerant check for fixed-point or floating results: a row passes when
/// C_i . x <= D_i + tol * (1 + sum_j |C_ij|), variables pass at x_j >= -tol and
/// within tol of an integer.
FeasibilityReport check_feasibility(const IlpProblem& problem, std::span<const double> x,
                                    double tol);

const char* to_string(Sense sense);
const char* to_string(Violation::Kind kind);

}  // namespace spark
