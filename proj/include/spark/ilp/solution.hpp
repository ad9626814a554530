// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/core/rational.hpp"
#include "spark/ilp/problem.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace spark {

enum class Status { Optimal, Infeasible, NotConverged, Unbounded, NoCandidate };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective{0};

  bool has_point() const { return !x.empty(); }
  bool operator==(const Solution&) const = default;
};

Solution make_solution(const IlpProblem& problem, Status status, std::vector<Rational> x);
Solution make_solution(const IlpProblem& problem, Status status,
                       std::span<const std::int64_t> x);

const char* to_string(Status status);
std::optional<Status> parse_status(std::string_view text);

}  // namespace spark
