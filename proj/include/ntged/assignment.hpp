#pragma once

#include <cstddef>
#include <vector>

#include "ntged/rational.hpp"

namespace ntged {

/// Dense row-major square cost matrix. Columns at index >= real_columns stand
/// for deletion (the epsilon columns of a padded matrix).
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t n, std::size_t real_columns);
  explicit CostMatrix(std::size_t n) : CostMatrix(n, n) {}
  CostMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t size() const { return n_; }
  std::size_t real_columns() const { return real_columns_; }
  bool is_epsilon_column(std::size_t col) const { return col >= real_columns_; }

  Rational& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Rational& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t real_columns_ = 0;
  std::vector<Rational> data_;
};

struct Assignment {
  std::vector<std::size_t> row_to_col;
  Rational cost;
};

/// Minimum-cost perfect assignment (Hungarian method with potentials and
/// shortest augmenting paths, O(n^3)). Ties are broken towards the lowest
/// column index, so the result is deterministic.
///
/// Throws std::invalid_argument if an entry is negative.
Assignment solve_lap(const CostMatrix& costs);

}  // namespace ntged
