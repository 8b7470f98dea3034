#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ntged/costs.hpp"
#include "ntged/ged_approx.hpp"
#include "ntged/graph.hpp"

namespace ntged {

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactOptions {
  /// Upper limit on |V(G)| + |V(H)|.
  std::size_t max_total_vertices = 24;
  /// Initial incumbent; when absent the bound of approx_ged(nt, h=3) is used.
  std::optional<Rational> incumbent;
};

struct ExactResult {
  Rational distance;
  VertexMapping mapping;  // an optimal G -> H mapping
  std::uint64_t expanded_nodes = 0;
};

/// Exact graph edit distance by depth-first branch and bound.
///
/// G's vertices are taken in order of descending degree (then ascending id);
/// each is mapped to an unused H vertex or deleted, and the induced vertex and
/// edge costs are charged as soon as both endpoints are decided. A branch is
/// cut when its cost plus a label-multiset lower bound on the undecided
/// vertices and edges reaches the incumbent.
///
/// Throws SizeGuardError when |V(G)| + |V(H)| exceeds the guard.
ExactResult exact_ged_search(const LabeledGraph& g, const LabeledGraph& h, const EditCostModel& costs,
                             const ExactOptions& options = {});

Rational exact_ged(const LabeledGraph& g, const LabeledGraph& h,
                   const EditCostModel& costs = EditCostModel::uniform(), const ExactOptions& options = {});

}  // namespace ntged
