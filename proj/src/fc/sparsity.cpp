// SPDX-License-Identifier: Apache-2.0
#include "spark/fc/sparsity.hpp"

#include <algorithm>
#include <optional>

namespace spark::fc {

std::uint32_t count_nonzeros(std::span<const std::int64_t> row) {
  std::uint32_t count = 0;
  for (auto c : row) count += (c != 0) ? 1U : 0U;
  return count;
}

RowClass classify_constraint(std::span<const std::int64_t> row, std::int64_t rhs, bool integral) {
  const auto nnz = count_nonzeros(row);
  if (nnz == 0) {
    if (rhs >= 0) return VacuousRow{};
    return InfeasibleRow{};
  }
  if (nnz != 1) return GeneralRow{};
  const auto it = std::find_if(row.begin(), row.end(), [](std::int64_t c) { return c != 0; });
  const std::int64_t c = *it;
  if (c < 0) return GeneralRow{};
  Rational bound(rhs, c);
  if (integral) bound = floor_rational(bound);
  if (bound < 0) return InfeasibleRow{};
  return CcRow{static_cast<std::size_t>(it - row.begin()), bound};
}

const CcEntry* SparsityPartition::cc_for(std::size_t var) const {
  for (const auto& e : cc) {
    if (e.var == var) return &e;
  }
  return nullptr;
}

SparsityPartition detect_sparsity(const IlpProblem& problem) {
  SparsityPartition part;
  const std::size_t n = problem.n();
  part.nnz.reserve(problem.m());
  std::vector<std::optional<CcEntry>> by_var(n);
  for (std::size_t i = 0; i < problem.m(); ++i) {
    const auto& row = problem.constraints[i];
    part.nnz.push_back(count_nonzeros(row.coeffs));
    const RowClass cls = classify_constraint(row.coeffs, row.rhs, problem.integral);
    if (const auto* cc = std::get_if<CcRow>(&cls)) {
      ++part.cc_rows;
      auto& slot = by_var[cc->var];
      if (!slot || cc->bound < slot->bound) slot = CcEntry{cc->var, cc->bound, i};
    } else if (std::holds_alternative<GeneralRow>(cls)) {
      part.general.push_back(i);
    } else if (std::holds_alternative<VacuousRow>(cls)) {
      part.vacuous.push_back(i);
    } else if (!part.infeasible) {
      part.infeasible = true;
      part.infeasible_row = i;
    }
  }
  for (auto& slot : by_var) {
    if (slot) part.cc.push_back(*slot);
  }
  part.is_sparse = !part.infeasible && part.cc.size() == n &&
                   part.general.size() == problem.m() - part.cc_rows;
  return part;
}

std::vector<std::size_t> storage_order(const IlpProblem& problem) {
  std::vector<std::size_t> cc_rows, rest;
  for (std::size_t i = 0; i < problem.m(); ++i) {
    const auto& row = problem.constraints[i];
    const RowClass cls = classify_constraint(row.coeffs, row.rhs, problem.integral);
    (std::holds_alternative<CcRow>(cls) ? cc_rows : rest).push_back(i);
  }
  cc_rows.insert(cc_rows.end(), rest.begin(), rest.end());
  return cc_rows;
}

}  // namespace spark::fc
