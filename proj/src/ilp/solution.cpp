// SPDX-License-Identifier: Apache-2.0
#include "spark/ilp/solution.hpp"

#include <array>
#include <utility>

namespace spark {

Solution make_solution(const IlpProblem& problem, Status status, std::vector<Rational> x) {
  Solution s;
  s.status = status;
  if (!x.empty()) s.objective = evaluate_objective(problem, x);
  s.x = std::move(x);
  return s;
}

Solution make_solution(const IlpProblem& problem, Status status,
                       std::span<const std::int64_t> x) {
  std::vector<Rational> rx(x.begin(), x.end());
  return make_solution(problem, status, std::move(rx));
}

namespace {
constexpr std::array<std::pair<Status, const char*>, 5> kStatusNames{{
    {Status::Optimal, "optimal"},
    {Status::Infeasible, "infeasible"},
    {Status::NotConverged, "not_converged"},
    {Status::Unbounded, "unbounded"},
    {Status::NoCandidate, "no_candidate"},
}};
}  // namespace

const char* to_string(Status status) {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "?";
}

std::optional<Status> parse_status(std::string_view text) {
  for (const auto& [s, name] : kStatusNames) {
    if (text == name) return s;
  }
  return std::nullopt;
}

}  // namespace spark
