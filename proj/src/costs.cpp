#include "ntged/costs.hpp"

#include <stdexcept>

namespace ntged {

void EditCostModel::validate() const {
  for (const Rational* c : {&vertex_sub, &vertex_del, &vertex_ins, &edge_sub, &edge_del, &edge_ins}) {
    if (*c < Rational(0)) throw std::invalid_argument("edit costs must be non-negative");
  }
}

LevelWeights::LevelWeights(Rational w) : w_(w) {
  if (w_ < Rational(0) || w_ > Rational(1)) {
    throw std::invalid_argument("level weight base must lie in [0, 1], got " + w_.to_string());
  }
  table_.push_back(Rational(1));
}

void LevelWeights::reserve(int max_depth) const {
  while (static_cast<int>(table_.size()) <= max_depth) table_.push_back(table_.back() * w_);
}

const Rational& LevelWeights::at(int depth) const {
  if (depth < 0) throw std::out_of_range("negative depth");
  reserve(depth);
  return table_[static_cast<std::size_t>(depth)];
}

}  // namespace ntged
