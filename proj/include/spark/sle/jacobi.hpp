// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"
#include "spark/ilp/solution.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spark::sle {

/// Square subsystem M y = b over the free variables. Fixed variables are
/// substituted into b. Rows of the original problem that were not selected
/// are listed in verify_rows.
struct SquareSystem {
  std::vector<std::vector<std::int64_t>> matrix;
  std::vector<std::int64_t> rhs;
  std::vector<std::size_t> rows;         // system row -> original constraint
  std::vector<std::size_t> vars;         // system column -> original variable
  std::vector<std::size_t> verify_rows;  // original constraints left for verification
  std::vector<bool> free_mask;           // per original variable
  std::map<std::size_t, std::int64_t> fixed;

  std::size_t size() const { return rows.size(); }
};

class NoDiagonalError : public std::runtime_error {
 public:
  NoDiagonalError(std::vector<std::size_t> vars);
  const std::vector<std::size_t>& vars() const { return vars_; }

 private:
  std::vector<std::size_t> vars_;
};

/// Each free variable j takes original row j when that row is unused and
/// C_jj != 0, otherwise the unused row with the largest |C_ij| (lowest index
/// on ties). Throws NoDiagonalError naming every variable left without a row.
SquareSystem select_square_system(const IlpProblem& problem,
                                  const std::map<std::size_t, std::int64_t>& fixed);

template <class T>
struct JacobiState {
  std::vector<T> iter1;  // X[n]
  std::vector<T> iter2;  // X[n+1]
  std::uint64_t iteration = 0;
  T l1{};

  explicit JacobiState(std::size_t n, T init = T{}) : iter1(n, init), iter2(n, init) {}
};

/// One true Jacobi update in double precision. `order` permutes the update
/// sequence; the result does not depend on it.
void jacobi_step(JacobiState<double>& state, const SquareSystem& system,
                 std::span<const std::size_t> order = {});

struct SleResult {
  Status status = Status::NotConverged;
  std::vector<double> x;            // per system variable
  std::vector<std::int64_t> x_raw;  // fixed-point values (fixed-point mode only)
  std::uint64_t iterations = 0;
  double l1 = 0;
  bool overflow = false;
  bool cycled = false;  // fixed-point iterates entered a limit cycle
};

inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr std::uint64_t kDefaultMaxIters = 100'000;

/// Iterates until l1 < epsilon or max_iters steps. Stops early with
/// NotConverged once l1 exceeds 1e12 or stops being finite.
SleResult solve_sle(const SquareSystem& system, double epsilon = kDefaultEpsilon,
                    std::uint64_t max_iters = kDefaultMaxIters);

/// Arithmetic provider for the fixed-point mode: a dot product with a stored
/// original constraint, and a divider. The simulator implements it on the
/// modeled array; tests can use SoftwareBackend.
class JacobiBackend {
 public:
  virtual ~JacobiBackend() = default;
  /// Sum_j C_ij * x_j for original constraint i; x has one raw value per
  /// original variable.
  virtual std::int64_t mac(std::size_t constraint, std::span<const std::int64_t> x) = 0;
  /// Raw quotient numerator / divisor on the same grid as the numerator.
  virtual std::int64_t divide(std::int64_t numerator, std::int64_t divisor) = 0;
  /// Per-iteration queue, subtract and convergence-check work for `rows` rows.
  virtual void iteration_overhead(std::size_t /*rows*/) {}
};

struct FixedPointConfig {
  int frac_bits = 8;
  int x_width = 16;            // two's-complement width of a stored X value
  std::uint64_t tolerance_ulps_per_var = 1;
  std::uint64_t max_iters = kDefaultMaxIters;

  double ulp() const;
  std::int64_t to_raw(double v) const;
  double from_raw(std::int64_t raw) const;
};

struct FixedJacobiState {
  JacobiState<std::int64_t> q;
  bool overflow = false;
  explicit FixedJacobiState(std::size_t n) : q(n, 0) {}
};

/// One fixed-point step: iter2_j = divide(b_j * 2^f - mac_j, M_jj).
void jacobi_step_fixed(FixedJacobiState& state, const SquareSystem& system, std::size_t n_vars,
                       const FixedPointConfig& config, JacobiBackend& backend,
                       std::span<const std::size_t> order = {});

/// Converged once l1 (in ULPs) <= tolerance_ulps_per_var * system size.
SleResult solve_sle_fixed(const SquareSystem& system, std::size_t n_vars,
                          const FixedPointConfig& config, JacobiBackend& backend,
                          std::span<const std::int64_t> initial = {});

/// Exact integer MAC against a problem's rows plus an exact or approximate
/// divider; no cost accounting.
class SoftwareBackend : public JacobiBackend {
 public:
  using Divide = std::int64_t (*)(std::int64_t, std::int64_t);
  SoftwareBackend(const IlpProblem& problem, Divide divide);
  std::int64_t mac(std::size_t constraint, std::span<const std::int64_t> x) override;
  std::int64_t divide(std::int64_t numerator, std::int64_t divisor) override;

 private:
  const IlpProblem& problem_;
  Divide divide_;
};

std::int64_t exact_round_divide(std::int64_t numerator, std::int64_t divisor);

/// Expands a per-system-variable vector to the original variables using the
/// system's fixed values.
std::vector<double> expand(const SquareSystem& system, std::size_t n_vars,
                           std::span<const double> x);

/// Residual max_i |(M x - b)_i|.
double residual_inf(const SquareSystem& system, std::span<const double> x);

/// Diagonal dominance check (strict, by rows).
bool strictly_diagonally_dominant(const SquareSystem& system);

}  // namespace spark::sle
