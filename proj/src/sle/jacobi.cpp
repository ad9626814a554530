// SPDX-License-Identifier: Apache-2.0
#include "spark/sle/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spark::sle {

namespace {

std::string var_list(const std::vector<std::size_t>& vars) {
  std::string out;
  for (auto v : vars) out += (out.empty() ? "x" : ", x") + std::to_string(v);
  return out;
}

std::vector<std::size_t> identity_order(std::size_t n, std::span<const std::size_t> order) {
  if (!order.empty()) {
    if (order.size() != n) throw std::invalid_argument("jacobi: order size mismatch");
    return {order.begin(), order.end()};
  }
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  return seq;
}

}  // namespace

NoDiagonalError::NoDiagonalError(std::vector<std::size_t> vars)
    : std::runtime_error("no usable diagonal for " + var_list(vars)), vars_(std::move(vars)) {}

SquareSystem select_square_system(const IlpProblem& p,
                                  const std::map<std::size_t, std::int64_t>& fixed) {
  const std::size_t n = p.n();
  SquareSystem sys;
  sys.fixed = fixed;
  sys.free_mask.assign(n, true);
  for (const auto& [var, value] : fixed) {
    if (var >= n) throw std::invalid_argument("fixed variable out of range");
    sys.free_mask[var] = false;
  }
  std::vector<bool> used(p.m(), false);
  std::vector<std::size_t> missing;
  for (std::size_t j = 0; j < n; ++j) {
    if (!sys.free_mask[j]) continue;
    std::optional<std::size_t> pick;
    if (j < p.m() && !used[j] && p.constraints[j].coeffs[j] != 0) {
      pick = j;
    } else {
      std::int64_t best = 0;
      for (std::size_t i = 0; i < p.m(); ++i) {
        const std::int64_t mag = std::abs(p.constraints[i].coeffs[j]);
        if (!used[i] && mag > best) {
          best = mag;
          pick = i;
        }
      }
    }
    if (!pick) {
      missing.push_back(j);
      continue;
    }
    used[*pick] = true;
    sys.rows.push_back(*pick);
    sys.vars.push_back(j);
  }
  if (!missing.empty()) throw NoDiagonalError(std::move(missing));

  const std::size_t k = sys.vars.size();
  sys.matrix.assign(k, std::vector<std::int64_t>(k, 0));
  sys.rhs.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    const auto& row = p.constraints[sys.rows[r]];
    for (std::size_t c = 0; c < k; ++c) sys.matrix[r][c] = row.coeffs[sys.vars[c]];
    std::int64_t b = row.rhs;
    for (const auto& [var, value] : fixed) b -= row.coeffs[var] * value;
    sys.rhs[r] = b;
  }
  for (std::size_t i = 0; i < p.m(); ++i) {
    if (!used[i]) sys.verify_rows.push_back(i);
  }
  return sys;
}

void jacobi_step(JacobiState<double>& state, const SquareSystem& sys,
                 std::span<const std::size_t> order) {
  const std::size_t n = sys.size();
  for (std::size_t j : identity_order(n, order)) {
    double acc = static_cast<double>(sys.rhs[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) acc -= static_cast<double>(sys.matrix[j][k]) * state.iter1[k];
    }
    state.iter2[j] = acc / static_cast<double>(sys.matrix[j][j]);
  }
  double l1 = 0;
  for (std::size_t j = 0; j < n; ++j) l1 += std::abs(state.iter2[j] - state.iter1[j]);
  state.l1 = l1;
  ++state.iteration;
}

SleResult solve_sle(const SquareSystem& sys, double epsilon, std::uint64_t max_iters) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
  SleResult res;
  JacobiState<double> st(sys.size(), 0.0);
  while (st.iteration < max_iters) {
    jacobi_step(st, sys);
    if (st.l1 < epsilon) {
      res.status = Status::Optimal;
      break;
    }
    if (!std::isfinite(st.l1) || st.l1 > 1e12) break;
    st.iter1 = st.iter2;  // queue swap
  }
  res.x = st.iter2;
  res.iterations = st.iteration;
  res.l1 = st.l1;
  return res;
}

double FixedPointConfig::ulp() const { return std::ldexp(1.0, -frac_bits); }

std::int64_t FixedPointConfig::to_raw(double v) const { return std::llround(std::ldexp(v, frac_bits)); }

double FixedPointConfig::from_raw(std::int64_t raw) const {
  return std::ldexp(static_cast<double>(raw), -frac_bits);
}

void jacobi_step_fixed(FixedJacobiState& state, const SquareSystem& sys, std::size_t n_vars,
                       const FixedPointConfig& cfg, JacobiBackend& backend,
                       std::span<const std::size_t> order) {
  const std::size_t n = sys.size();
  const std::int64_t half = std::int64_t{1} << (cfg.x_width - 1);
  std::vector<std::int64_t> lanes(n_vars, 0);
  for (std::size_t j : identity_order(n, order)) {
    std::fill(lanes.begin(), lanes.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) lanes[sys.vars[k]] = state.q.iter1[k];
    }
    const std::int64_t mac = backend.mac(sys.rows[j], lanes);
    const std::int64_t numerator = sys.rhs[j] * (std::int64_t{1} << cfg.frac_bits) - mac;
    std::int64_t next = backend.divide(numerator, sys.matrix[j][j]);
    if (next < -half || next >= half) {
      state.overflow = true;
      next = std::clamp(next, -half, half - 1);
    }
    state.q.iter2[j] = next;
  }
  std::int64_t l1 = 0;
  for (std::size_t j = 0; j < n; ++j) l1 += std::abs(state.q.iter2[j] - state.q.iter1[j]);
  state.q.l1 = l1;
  ++state.q.iteration;
  backend.iteration_overhead(n);
}

SleResult solve_sle_fixed(const SquareSystem& sys, std::size_t n_vars, const FixedPointConfig& cfg,
                          JacobiBackend& backend, std::span<const std::int64_t> initial) {
  if (cfg.max_iters == 0) throw std::invalid_argument("max_iters must be >= 1");
  SleResult res;
  FixedJacobiState st(sys.size());
  if (!initial.empty()) {
    if (initial.size() != sys.size()) throw std::invalid_argument("initial size mismatch");
    st.q.iter1.assign(initial.begin(), initial.end());
  }
  const auto tolerance = static_cast<std::int64_t>(cfg.tolerance_ulps_per_var * sys.size());
  // The fixed-point map is deterministic on a finite grid, so a repeated
  // state means the iteration cycles forever. Brent's checkpointing finds
  // a cycle of any period.
  std::vector<std::int64_t> checkpoint = st.q.iter1;
  std::uint64_t power = 1, since = 0;
  while (st.q.iteration < cfg.max_iters) {
    jacobi_step_fixed(st, sys, n_vars, cfg, backend);
    if (st.overflow) break;
    if (st.q.l1 <= tolerance) {
      res.status = Status::Optimal;
      break;
    }
    if (st.q.iter2 == checkpoint) {
      res.cycled = true;
      break;
    }
    if (++since == power) {
      checkpoint = st.q.iter2;
      power *= 2;
      since = 0;
    }
    st.q.iter1 = st.q.iter2;
  }
  res.overflow = st.overflow;
  res.x_raw = st.q.iter2;
  res.x.reserve(sys.size());
  for (auto raw : st.q.iter2) res.x.push_back(cfg.from_raw(raw));
  res.iterations = st.q.iteration;
  res.l1 = cfg.from_raw(st.q.l1);
  return res;
}

SoftwareBackend::SoftwareBackend(const IlpProblem& problem, Divide divide)
    : problem_(problem), divide_(divide) {}

std::int64_t SoftwareBackend::mac(std::size_t constraint, std::span<const std::int64_t> x) {
  const auto& row = problem_.constraints.at(constraint);
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += row.coeffs[j] * x[j];
  return acc;
}

std::int64_t SoftwareBackend::divide(std::int64_t numerator, std::int64_t divisor) {
  return divide_(numerator, divisor);
}

std::int64_t exact_round_divide(std::int64_t numerator, std::int64_t divisor) {
  if (divisor == 0) throw std::domain_error("divide by zero");
  const bool negative = (numerator < 0) != (divisor < 0);
  const std::uint64_t an = numerator < 0 ? 0ULL - static_cast<std::uint64_t>(numerator)
                                         : static_cast<std::uint64_t>(numerator);
  const std::uint64_t ad = divisor < 0 ? 0ULL - static_cast<std::uint64_t>(divisor)
                                       : static_cast<std::uint64_t>(divisor);
  const auto q = static_cast<std::int64_t>((an + ad / 2) / ad);
  return negative ? -q : q;
}

std::vector<double> expand(const SquareSystem& sys, std::size_t n_vars, std::span<const double> x) {
  std::vector<double> out(n_vars, 0.0);
  for (const auto& [var, value] : sys.fixed) out[var] = static_cast<double>(value);
  for (std::size_t k = 0; k < sys.vars.size(); ++k) out[sys.vars[k]] = x[k];
  return out;
}

double residual_inf(const SquareSystem& sys, std::span<const double> x) {
  double worst = 0;
  for (std::size_t r = 0; r < sys.size(); ++r) {
    double acc = -static_cast<double>(sys.rhs[r]);
    for (std::size_t c = 0; c < sys.size(); ++c) acc += static_cast<double>(sys.matrix[r][c]) * x[c];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

bool strictly_diagonally_dominant(const SquareSystem& sys) {
  for (std::size_t r = 0; r < sys.size(); ++r) {
    std::int64_t off = 0;
    for (std::size_t c = 0; c < sys.size(); ++c) {
      if (c != r) off += std::abs(sys.matrix[r][c]);
    }
    if (std::abs(sys.matrix[r][r]) <= off) return false;
  }
  return true;
}

}  // namespace spark::sle
