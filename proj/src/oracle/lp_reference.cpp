// SPDX-License-Identifier: Apache-2.0
#include "spark/oracle/lp_reference.hpp"

#include <utility>

namespace spark::oracle {

using Q = boost::multiprecision::cpp_rational;

std::vector<Q> lp_reference(const std::vector<std::vector<std::int64_t>>& m,
                            const std::vector<std::int64_t>& b) {
  const std::size_t n = b.size();
  if (m.size() != n) throw std::invalid_argument("matrix/rhs dimension mismatch");
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n] = b[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("matrix is singular");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Q factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  std::vector<Q> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace spark::oracle
