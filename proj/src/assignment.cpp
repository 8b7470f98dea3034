#include "ntged/assignment.hpp"

#include <stdexcept>

namespace ntged {

CostMatrix::CostMatrix(std::size_t n, std::size_t real_columns)
    : n_(n), real_columns_(real_columns), data_(n * n) {
  if (real_columns > n) throw std::invalid_argument("more real columns than matrix columns");
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : CostMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("cost matrix must be square");
    std::size_t c = 0;
    for (const auto& value : row) (*this)(r, c++) = value;
    ++r;
  }
}

Assignment solve_lap(const CostMatrix& costs) {
  const std::size_t n = costs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (costs(i, j) < Rational(0)) throw std::invalid_argument("negative assignment cost");
    }
  }

  // 1-based arrays; column 0 is the virtual source of each augmenting search.
  std::vector<Rational> u(n + 1), v(n + 1), minv(n + 1);
  std::vector<bool> has_min(n + 1), used(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t j0 = 0;
    std::fill(has_min.begin(), has_min.end(), false);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      Rational delta;
      std::size_t j1 = 0;
      bool has_delta = false;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational reduced = costs(i0 - 1, j - 1) - u[i0] - v[j];
        if (!has_min[j] || reduced < minv[j]) {
          minv[j] = reduced;
          has_min[j] = true;
          way[j] = j0;
        }
        if (!has_delta || minv[j] < delta) {
          delta = minv[j];
          j1 = j;
          has_delta = true;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment result;
  result.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (match[j] != 0) result.row_to_col[match[j] - 1] = j - 1;
  }
  for (std::size_t i = 0; i < n; ++i) result.cost += costs(i, result.row_to_col[i]);
  return result;
}

}  // namespace ntged
