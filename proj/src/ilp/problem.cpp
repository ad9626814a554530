// SPDX-License-Identifier: Apache-2.0
#include "spark/ilp/problem.hpp"

#include <algorithm>
#include <cmath>

namespace spark {

bool fits_width(std::int64_t value, int width) {
  const std::int64_t limit = std::int64_t{1} << (width - 1);
  return value > -limit && value < limit;
}

bool is_vacuous(const Constraint& row) {
  return std::all_of(row.coeffs.begin(), row.coeffs.end(), [](std::int64_t c) { return c == 0; });
}

void validate(const IlpProblem& p) {
  if (p.coeff_width < 2 || p.coeff_width > 32) {
    throw ProblemError("coeff_width must lie in [2, 32], got " + std::to_string(p.coeff_width));
  }
  if (p.n() == 0) throw ProblemError("problem has no variables");
  if (p.m() == 0) throw ProblemError("problem has no constraints");
  auto check = [&](std::int64_t v, const std::string& where) {
    if (!fits_width(v, p.coeff_width)) {
      throw ProblemError(where + " value " + std::to_string(v) + " overflows " +
                         std::to_string(p.coeff_width) + "-bit signed storage");
    }
  };
  for (std::size_t j = 0; j < p.n(); ++j) check(p.cost[j], "cost[" + std::to_string(j) + "]");
  for (std::size_t i = 0; i < p.m(); ++i) {
    const auto& row = p.constraints[i];
    if (row.coeffs.size() != p.n()) {
      throw ProblemError("constraint " + std::to_string(i) + " has " +
                         std::to_string(row.coeffs.size()) + " coefficients, expected " +
                         std::to_string(p.n()));
    }
    for (std::size_t j = 0; j < p.n(); ++j) {
      check(row.coeffs[j], "constraint " + std::to_string(i) + " coeff " + std::to_string(j));
    }
    check(row.rhs, "constraint " + std::to_string(i) + " rhs");
  }
}

IlpProblem make_problem(std::string name, Sense sense, std::vector<std::int64_t> cost,
                        std::span<const RawConstraint> rows, bool integral, int coeff_width) {
  IlpProblem p;
  p.name = std::move(name);
  p.sense = sense;
  p.cost = std::move(cost);
  p.integral = integral;
  p.coeff_width = coeff_width;
  auto negated = [](const RawConstraint& r) {
    Constraint c{r.coeffs, -r.rhs};
    for (auto& v : c.coeffs) v = -v;
    return c;
  };
  for (const auto& r : rows) {
    switch (r.relation) {
      case Relation::Le:
        p.constraints.push_back({r.coeffs, r.rhs});
        break;
      case Relation::Ge:
        p.constraints.push_back(negated(r));
        break;
      case Relation::Eq:
        p.constraints.push_back({r.coeffs, r.rhs});
        p.constraints.push_back(negated(r));
        break;
    }
  }
  return normalize(p);
}

IlpProblem normalize(const IlpProblem& problem) {
  IlpProblem out = problem;
  std::erase_if(out.constraints,
                [](const Constraint& c) { return is_vacuous(c) && c.rhs >= 0; });
  validate(out);
  return out;
}

Rational evaluate_objective(const IlpProblem& p, std::span<const Rational> x) {
  if (x.size() != p.n()) throw ProblemError("objective: dimension mismatch");
  Rational total = 0;
  for (std::size_t j = 0; j < p.n(); ++j) total += p.cost[j] * x[j];
  return total;
}

std::int64_t evaluate_objective(const IlpProblem& p, std::span<const std::int64_t> x) {
  if (x.size() != p.n()) throw ProblemError("objective: dimension mismatch");
  std::int64_t total = 0;
  for (std::size_t j = 0; j < p.n(); ++j) total += p.cost[j] * x[j];
  return total;
}

FeasibilityReport check_feasibility(const IlpProblem& p, std::span<const Rational> x) {
  if (x.size() != p.n()) throw ProblemError("feasibility: dimension mismatch");
  FeasibilityReport rep;
  for (std::size_t i = 0; i < p.m(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < p.n(); ++j) lhs += p.constraints[i].coeffs[j] * x[j];
    if (lhs > p.constraints[i].rhs) rep.violated.push_back({Violation::Kind::Constraint, i});
  }
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (x[j] < 0) rep.violated.push_back({Violation::Kind::Negative, j});
  }
  if (p.integral) {
    for (std::size_t j = 0; j < p.n(); ++j) {
      if (!is_integer(x[j])) rep.violated.push_back({Violation::Kind::Fractional, j});
    }
  }
  rep.feasible = rep.violated.empty();
  return rep;
}

FeasibilityReport check_feasibility(const IlpProblem& p, std::span<const std::int64_t> x) {
  if (x.size() != p.n()) throw ProblemError("feasibility: dimension mismatch");
  FeasibilityReport rep;
  for (std::size_t i = 0; i < p.m(); ++i) {
    std::int64_t lhs = 0;
    for (std::size_t j = 0; j < p.n(); ++j) lhs += p.constraints[i].coeffs[j] * x[j];
    if (lhs > p.constraints[i].rhs) rep.violated.push_back({Violation::Kind::Constraint, i});
  }
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (x[j] < 0) rep.violated.push_back({Violation::Kind::Negative, j});
  }
  rep.feasible = rep.violated.empty();
  return rep;
}

FeasibilityReport check_feasibility(const IlpProblem& p, std::span<const double> x, double tol) {
  if (x.size() != p.n()) throw ProblemError("feasibility: dimension mismatch");
  FeasibilityReport rep;
  for (std::size_t i = 0; i < p.m(); ++i) {
    double lhs = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < p.n(); ++j) {
      const auto c = static_cast<double>(p.constraints[i].coeffs[j]);
      lhs += c * x[j];
      scale += std::abs(c);
    }
    if (lhs > static_cast<double>(p.constraints[i].rhs) + tol * scale) {
      rep.violated.push_back({Violation::Kind::Constraint, i});
    }
  }
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (x[j] < -tol) rep.violated.push_back({Violation::Kind::Negative, j});
  }
  if (p.integral) {
    for (std::size_t j = 0; j < p.n(); ++j) {
      if (std::abs(x[j] - std::round(x[j])) > tol) {
        rep.violated.push_back({Violation::Kind::Fractional, j});
      }
    }
  }
  rep.feasible = rep.violated.empty();
  return rep;
}

const char* to_string(Sense sense) { return sense == Sense::Max ? "max" : "min"; }

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Constraint: return "constraint";
    case Violation::Kind::Negative: return "negative";
    case Violation::Kind::Fractional: return "fractional";
  }
  return "?";
}

}  // namespace spark
