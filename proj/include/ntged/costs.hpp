#pragma once

#include <vector>

#include "ntged/graph.hpp"
#include "ntged/rational.hpp"

namespace ntged {

/// Constant-per-operation edit costs. Substituting a label by itself is free.
/// The default is the uniform model: every operation costs 1.
struct EditCostModel {
  Rational vertex_sub{1};
  Rational vertex_del{1};
  Rational vertex_ins{1};
  Rational edge_sub{1};
  Rational edge_del{1};
  Rational edge_ins{1};

  static EditCostModel uniform() { return {}; }

  Rational vertex_substitution(Label a, Label b) const { return a == b ? Rational{} : vertex_sub; }
  Rational vertex_deletion(Label) const { return vertex_del; }
  Rational vertex_insertion(Label) const { return vertex_ins; }
  Rational edge_substitution(Label a, Label b) const { return a == b ? Rational{} : edge_sub; }
  Rational edge_deletion(Label) const { return edge_del; }
  Rational edge_insertion(Label) const { return edge_ins; }

  /// Deletion and insertion cost the same for vertices and for edges.
  bool is_symmetric() const { return vertex_del == vertex_ins && edge_del == edge_ins; }

  /// Throws std::invalid_argument on a negative cost.
  void validate() const;

  friend bool operator==(const EditCostModel&, const EditCostModel&) = default;
};

/// Depth weights lambda_d = w^d with w in [0, 1]; lambda_0 = 1.
class LevelWeights {
 public:
  explicit LevelWeights(Rational w = Rational(1, 2));

  const Rational& w() const { return w_; }
  bool is_unit() const { return w_ == Rational(1); }

  /// lambda_depth; the table grows on demand, so callers sharing one instance
  /// across threads should call reserve() first.
  const Rational& at(int depth) const;
  void reserve(int max_depth) const;

 private:
  Rational w_;
  mutable std::vector<Rational> table_;
};

}  // namespace ntged
