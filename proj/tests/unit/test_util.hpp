// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spark/ilp/problem.hpp"

#include <string>
#include <vector>

namespace spark::test {

inline std::string data_path(const std::string& name) { return std::string(SPARK_TEST_DATA) + "/" + name; }

inline IlpProblem le_problem(Sense sense, std::vector<std::int64_t> cost,
                             std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> rows,
                             bool integral = true) {
  std::vector<RawConstraint> raw;
  for (auto& [c, d] : rows) raw.push_back(RawConstraint{std::move(c), d, Relation::Le});
  return make_problem("t", sense, std::move(cost), raw, integral);
}

}  // namespace spark::test
