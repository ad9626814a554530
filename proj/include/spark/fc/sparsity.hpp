// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/core/rational.hpp"
#include "spark/ilp/problem.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace spark::fc {

struct CcRow {
  std::size_t var;
  Rational bound;  // floor(rhs / c) for integral problems, rhs / c otherwise
};
struct GeneralRow {};
struct VacuousRow {};
struct InfeasibleRow {};

using RowClass = std::variant<CcRow, GeneralRow, VacuousRow, InfeasibleRow>;

std::uint32_t count_nonzeros(std::span<const std::int64_t> row);

RowClass classify_constraint(std::span<const std::int64_t> row, std::int64_t rhs, bool integral);

struct CcEntry {
  std::size_t var;
  Rational bound;
  std::size_t row;  // constraint that supplied the tightest bound
};

struct SparsityPartition {
  std::vector<CcEntry> cc;            // one entry per covered variable, ordered by var
  std::vector<std::size_t> general;   // constraint indices, in storage order
  std::vector<std::size_t> vacuous;   // all-zero rows with D >= 0
  std::vector<std::uint32_t> nnz;     // per constraint
  std::size_t cc_rows = 0;            // constraints classified CC, duplicates included
  bool infeasible = false;            // an InfeasibleRow was seen
  std::size_t infeasible_row = 0;
  bool is_sparse = false;

  const CcEntry* cc_for(std::size_t var) const;
};

/// Classifies every row. CC rows precede general rows in the returned
/// storage order. A variable covered by several CC rows keeps the tightest
/// bound. The verdict is sparse iff every variable is covered and every
/// non-CC row is general.
SparsityPartition detect_sparsity(const IlpProblem& problem);

/// Storage order used by the load stage: CC rows first, then the rest, each
/// group in original order.
std::vector<std::size_t> storage_order(const IlpProblem& problem);

}  // namespace spark::fc
