// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace spark {

/// Real-estate style portfolio: buy up to limit_j units of asset j at
/// price_j each, maximize income. Cardinality rows come first, followed by
/// one budget row per entry of `budgets` (row r uses prices[r]).
IlpProblem make_investment(std::span<const std::int64_t> income,
                           std::span<const std::vector<std::int64_t>> prices,
                           std::span<const std::int64_t> limits,
                           std::span<const std::int64_t> budgets);

/// Min-cost shipment x_ij (flattened as i * dests + j) from sources with
/// supply s_i to destinations with demand d_j. Throws when supply cannot
/// cover demand.
IlpProblem make_transportation(std::span<const std::int64_t> unit_cost,
                               std::span<const std::int64_t> supply,
                               std::span<const std::int64_t> demand);

struct InvestmentParams {
  std::size_t n = 4;
  std::size_t general_rows = 1;
  std::int64_t max_limit = 6;
  std::int64_t max_price = 9;
  std::int64_t max_income = 9;
};

struct TransportationParams {
  std::size_t sources = 2;
  std::size_t dests = 3;
  std::int64_t max_cost = 9;
  std::int64_t max_demand = 9;
};

/// Leading n x n block is strictly diagonally dominant with nonnegative
/// entries, so every variable is boxed by floor(D_j / C_jj) <= max_box.
/// The remaining m - n rows are unrestricted random rows.
struct RandomDenseParams {
  std::size_t n = 4;
  std::size_t m = 4;
  std::int64_t max_coeff = 9;
  std::int64_t max_box = 8;
};

using GenParams = std::variant<InvestmentParams, TransportationParams, RandomDenseParams>;

enum class InstanceKind { Transportation, Investment, RandomDense };

IlpProblem gen_investment(const InvestmentParams& params, std::uint64_t seed);
IlpProblem gen_transportation(const TransportationParams& params, std::uint64_t seed);
IlpProblem gen_random_dense(const RandomDenseParams& params, std::uint64_t seed);

/// Dispatches on the params alternative; `kind` must agree with it.
IlpProblem gen_instance(InstanceKind kind, const GenParams& params, std::uint64_t seed);

InstanceKind parse_instance_kind(std::string_view text);

/// Seeded verification suites. The dense suite draws n in [2, 5] and m in
/// [n, 7] with every variable boxed at most 8; the sparse suite draws
/// investment instances with n in [2, 5] and one or two budget rows.
std::vector<IlpProblem> dense_suite(std::size_t count, std::uint64_t seed);
std::vector<IlpProblem> sparse_suite(std::size_t count, std::uint64_t seed);

}  // namespace spark
