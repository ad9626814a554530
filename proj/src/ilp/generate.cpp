// SPDX-License-Identifier: Apache-2.0
#include "spark/ilp/generate.hpp"

#include "spark/core/random.hpp"

#include <numeric>
#include <string>

namespace spark {

IlpProblem make_investment(std::span<const std::int64_t> income,
                           std::span<const std::vector<std::int64_t>> prices,
                           std::span<const std::int64_t> limits,
                           std::span<const std::int64_t> budgets) {
  const std::size_t n = income.size();
  if (limits.size() != n) throw ProblemError("investment: limits size mismatch");
  if (prices.size() != budgets.size() || budgets.empty()) {
    throw ProblemError("investment: need one price row per budget");
  }
  std::vector<RawConstraint> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (limits[j] < 0) throw ProblemError("investment: negative limit");
    RawConstraint r{std::vector<std::int64_t>(n, 0), limits[j], Relation::Le};
    r.coeffs[j] = 1;
    rows.push_back(std::move(r));
  }
  for (std::size_t r = 0; r < budgets.size(); ++r) {
    if (prices[r].size() != n) throw ProblemError("investment: price row size mismatch");
    if (budgets[r] <= 0) throw ProblemError("investment: budget must be positive");
    rows.push_back({prices[r], budgets[r], Relation::Le});
  }
  return make_problem("investment", Sense::Max, {income.begin(), income.end()}, rows, true);
}

IlpProblem make_transportation(std::span<const std::int64_t> unit_cost,
                               std::span<const std::int64_t> supply,
                               std::span<const std::int64_t> demand) {
  const std::size_t s = supply.size();
  const std::size_t t = demand.size();
  if (s == 0 || t == 0) throw ProblemError("transportation: need sources and destinations");
  if (unit_cost.size() != s * t) throw ProblemError("transportation: cost size mismatch");
  const auto total_supply = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
  const auto total_demand = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
  if (total_supply < total_demand) {
    throw ProblemError("transportation: total supply " + std::to_string(total_supply) +
                       " is below total demand " + std::to_string(total_demand));
  }
  const std::size_t n = s * t;
  std::vector<RawConstraint> rows;
  for (std::size_t i = 0; i < s; ++i) {
    RawConstraint r{std::vector<std::int64_t>(n, 0), supply[i], Relation::Le};
    for (std::size_t j = 0; j < t; ++j) r.coeffs[i * t + j] = 1;
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < t; ++j) {
    RawConstraint r{std::vector<std::int64_t>(n, 0), demand[j], Relation::Ge};
    for (std::size_t i = 0; i < s; ++i) r.coeffs[i * t + j] = 1;
    rows.push_back(std::move(r));
  }
  return make_problem("transportation", Sense::Min, {unit_cost.begin(), unit_cost.end()}, rows,
                      true);
}

IlpProblem gen_investment(const InvestmentParams& p, std::uint64_t seed) {
  if (p.n == 0 || p.general_rows == 0) throw ProblemError("investment: n and rows must be >= 1");
  if (p.max_limit < 1 || p.max_price < 1 || p.max_income < 1) {
    throw ProblemError("investment: limits, prices and income must allow positive values");
  }
  Rng rng(seed);
  std::vector<std::int64_t> income(p.n), limits(p.n);
  for (auto& v : income) v = rng.uniform(1, p.max_income);
  for (auto& v : limits) v = rng.uniform(1, p.max_limit);
  std::vector<std::vector<std::int64_t>> prices;
  std::vector<std::int64_t> budgets;
  for (std::size_t r = 0; r < p.general_rows; ++r) {
    std::vector<std::int64_t> row(p.n);
    std::int64_t full = 0;
    for (std::size_t j = 0; j < p.n; ++j) {
      row[j] = rng.uniform(1, p.max_price);
      full += row[j] * limits[j];
    }
    // Budget between 80% and 120% of the cost of buying every unit.
    const std::int64_t budget = std::max<std::int64_t>(1, full * rng.uniform(80, 120) / 100);
    prices.push_back(std::move(row));
    budgets.push_back(budget);
  }
  auto problem = make_investment(income, prices, limits, budgets);
  problem.name = "investment-n" + std::to_string(p.n) + "-s" + std::to_string(seed);
  return problem;
}

IlpProblem gen_transportation(const TransportationParams& p, std::uint64_t seed) {
  if (p.sources == 0 || p.dests == 0) throw ProblemError("transportation: empty network");
  if (p.max_cost < 1 || p.max_demand < 1) throw ProblemError("transportation: bad ranges");
  Rng rng(seed);
  std::vector<std::int64_t> demand(p.dests), supply(p.sources), cost(p.sources * p.dests);
  for (auto& v : demand) v = rng.uniform(1, p.max_demand);
  const auto total = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
  const auto share = (total + static_cast<std::int64_t>(p.sources) - 1) /
                     static_cast<std::int64_t>(p.sources);
  for (auto& v : supply) v = share + rng.uniform(0, p.max_demand);
  for (auto& v : cost) v = rng.uniform(1, p.max_cost);
  auto problem = make_transportation(cost, supply, demand);
  problem.name = "transportation-" + std::to_string(p.sources) + "x" + std::to_string(p.dests) +
                 "-s" + std::to_string(seed);
  return problem;
}

IlpProblem gen_random_dense(const RandomDenseParams& p, std::uint64_t seed) {
  if (p.n == 0 || p.m < p.n) throw ProblemError("random: need 1 <= n <= m");
  if (p.max_coeff < 2 || p.max_box < 1) throw ProblemError("random: bad ranges");
  Rng rng(seed);
  std::vector<RawConstraint> rows;
  for (std::size_t i = 0; i < p.n; ++i) {
    RawConstraint r{std::vector<std::int64_t>(p.n, 0), 0, Relation::Le};
    const std::int64_t diag = rng.uniform(2, p.max_coeff);
    std::int64_t budget = diag - 1;  // off-diagonal sum stays strictly below diag
    for (std::size_t j = 0; j < p.n; ++j) {
      if (j == i) continue;
      const std::int64_t v = rng.uniform(0, budget);
      r.coeffs[j] = v;
      budget -= v;
    }
    r.coeffs[i] = diag;
    r.rhs = rng.uniform(0, diag * p.max_box);
    rows.push_back(std::move(r));
  }
  for (std::size_t i = p.n; i < p.m; ++i) {
    RawConstraint r{std::vector<std::int64_t>(p.n, 0), 0, Relation::Le};
    for (auto& v : r.coeffs) v = rng.uniform(-p.max_coeff, p.max_coeff);
    r.rhs = rng.uniform(-p.max_coeff, p.max_coeff * p.max_box);
    rows.push_back(std::move(r));
  }
  std::vector<std::int64_t> cost(p.n);
  for (auto& v : cost) v = rng.uniform(-p.max_coeff, p.max_coeff);
  const Sense sense = rng.coin() ? Sense::Max : Sense::Min;
  return make_problem("random-n" + std::to_string(p.n) + "-m" + std::to_string(p.m) + "-s" +
                          std::to_string(seed),
                      sense, std::move(cost), rows, true);
}

IlpProblem gen_instance(InstanceKind kind, const GenParams& params, std::uint64_t seed) {
  switch (kind) {
    case InstanceKind::Investment:
      if (const auto* p = std::get_if<InvestmentParams>(&params)) return gen_investment(*p, seed);
      break;
    case InstanceKind::Transportation:
      if (const auto* p = std::get_if<TransportationParams>(&params)) {
        return gen_transportation(*p, seed);
      }
      break;
    case InstanceKind::RandomDense:
      if (const auto* p = std::get_if<RandomDenseParams>(&params)) return gen_random_dense(*p, seed);
      break;
  }
  throw ProblemError("generator parameters do not match the requested kind");
}

InstanceKind parse_instance_kind(std::string_view text) {
  if (text == "investment") return InstanceKind::Investment;
  if (text == "transportation") return InstanceKind::Transportation;
  if (text == "random" || text == "random-dense") return InstanceKind::RandomDense;
  throw ProblemError("unknown instance kind '" + std::string(text) + "'");
}

std::vector<IlpProblem> dense_suite(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IlpProblem> out;
  for (std::size_t k = 0; k < count; ++k) {
    RandomDenseParams p;
    p.n = static_cast<std::size_t>(rng.uniform(2, 5));
    p.m = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(p.n), 7));
    out.push_back(gen_random_dense(p, seed * 100'003 + k));
  }
  return out;
}

std::vector<IlpProblem> sparse_suite(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IlpProblem> out;
  for (std::size_t k = 0; k < count; ++k) {
    InvestmentParams p;
    p.n = static_cast<std::size_t>(rng.uniform(2, 5));
    p.general_rows = static_cast<std::size_t>(rng.uniform(1, 2));
    out.push_back(gen_investment(p, seed * 100'003 + k));
  }
  return out;
}

}  // namespace spark
