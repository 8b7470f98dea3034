#include "ntged/sdted.hpp"

#include <mutex>
#include <stdexcept>

#include "ntged/assignment.hpp"

namespace ntged {

// ---------------------------------------------------------------------------
// SdtedCache

void SdtedCache::bind(const EditCostModel& costs, const LevelWeights& weights) {
  std::unique_lock lock(mutex_);
  if (!bound_costs_) {
    bound_costs_ = costs;
    bound_weight_ = weights.w();
    depth_keyed_ = !weights.is_unit();
    return;
  }
  if (!(*bound_costs_ == costs) || !(*bound_weight_ == weights.w())) {
    throw std::invalid_argument("SdtedCache reused with a different cost configuration");
  }
}

std::optional<Rational> SdtedCache::find(CodeId a, CodeId b, int depth) {
  std::shared_lock lock(mutex_);
  auto it = values_.find(Key{a, b, depth_keyed_ ? depth : 0});
  if (it == values_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

void SdtedCache::store(CodeId a, CodeId b, int depth, const Rational& value) {
  std::unique_lock lock(mutex_);
  values_.try_emplace(Key{a, b, depth_keyed_ ? depth : 0}, value);
}

SdtedCache::Stats SdtedCache::stats() const {
  std::shared_lock lock(mutex_);
  return {hits_.load(), misses_.load(), values_.size()};
}

// ---------------------------------------------------------------------------
// SdtedComputer

SdtedComputer::SdtedComputer(EditCostModel costs, LevelWeights weights, SdtedCache* cache)
    : costs_(std::move(costs)), weights_(std::move(weights)), cache_(cache) {
  costs_.validate();
  if (cache_) cache_->bind(costs_, weights_);
}

Rational SdtedComputer::link_removal(Label edge_label, int child_depth, Side side) const {
  const Rational& lambda = weights_.at(child_depth);
  return lambda * (side == Side::deletion ? costs_.edge_deletion(edge_label)
                                          : costs_.edge_insertion(edge_label));
}

PreparedStructure SdtedComputer::prepare(const NeighborhoodStructure& s) const {
  weights_.reserve(s.height() + 1);
  PreparedStructure out;
  out.structure = &s;
  if (cache_) out.codes = canonical_codes(s, cache_->codes()).codes;
  out.deletion.assign(s.size(), Rational{});
  out.insertion.assign(s.size(), Rational{});
  for (NodeId id = static_cast<NodeId>(s.size()); id-- > 0;) {
    const auto& node = s.node(id);
    const Rational& lambda = weights_.at(node.depth);
    Rational del = lambda * costs_.vertex_deletion(node.label);
    Rational ins = lambda * costs_.vertex_insertion(node.label);
    for (const auto& link : s.children(id)) {
      del += link_removal(link.edge_label, node.depth + 1, Side::deletion) + out.deletion[link.child];
      ins += link_removal(link.edge_label, node.depth + 1, Side::insertion) + out.insertion[link.child];
    }
    out.deletion[id] = del;
    out.insertion[id] = ins;
  }
  return out;
}

Rational SdtedComputer::removal_cost(const PreparedStructure& s, Side side) const {
  return side == Side::deletion ? s.deletion.at(NeighborhoodStructure::root())
                                : s.insertion.at(NeighborhoodStructure::root());
}

Rational SdtedComputer::distance(const PreparedStructure& a, const PreparedStructure& b) const {
  const NeighborhoodStructure& ta = *a.structure;
  const NeighborhoodStructure& tb = *b.structure;
  const bool use_cache = cache_ != nullptr && !a.codes.empty() && !b.codes.empty();
  const std::size_t stride = tb.size();
  std::vector<std::optional<Rational>> memo(ta.size() * stride);

  auto solve = [&](auto&& self, NodeId x, NodeId y) -> Rational {
    auto& slot = memo[x * stride + y];
    if (slot) return *slot;
    const int depth = ta.node(x).depth;
    if (use_cache) {
      if (auto hit = cache_->find(a.codes[x], b.codes[y], depth)) {
        slot = *hit;
        return *hit;
      }
    }

    Rational total = weights_.at(depth) * costs_.vertex_substitution(ta.node(x).label, tb.node(y).label);
    const auto cx = ta.children(x);
    const auto cy = tb.children(y);
    if (cy.empty()) {
      for (const auto& l : cx) total += link_removal(l.edge_label, depth + 1, Side::deletion) + a.deletion[l.child];
    } else if (cx.empty()) {
      for (const auto& l : cy) total += link_removal(l.edge_label, depth + 1, Side::insertion) + b.insertion[l.child];
    } else {
      const std::size_t n = std::max(cx.size(), cy.size());
      const Rational& lambda = weights_.at(depth + 1);
      std::vector<Rational> del(cx.size()), ins(cy.size());
      for (std::size_t i = 0; i < cx.size(); ++i) {
        del[i] = link_removal(cx[i].edge_label, depth + 1, Side::deletion) + a.deletion[cx[i].child];
      }
      for (std::size_t j = 0; j < cy.size(); ++j) {
        ins[j] = link_removal(cy[j].edge_label, depth + 1, Side::insertion) + b.insertion[cy[j].child];
      }
      CostMatrix matrix(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i < cx.size() && j < cy.size()) {
            Rational match = lambda * costs_.edge_substitution(cx[i].edge_label, cy[j].edge_label) +
                             self(self, cx[i].child, cy[j].child);
            matrix(i, j) = min(match, del[i] + ins[j]);
          } else if (i < cx.size()) {
            matrix(i, j) = del[i];
          } else if (j < cy.size()) {
            matrix(i, j) = ins[j];
          }
        }
      }
      total += solve_lap(matrix).cost;
    }

    if (use_cache) cache_->store(a.codes[x], b.codes[y], depth, total);
    slot = total;
    return total;
  };
  return solve(solve, NeighborhoodStructure::root(), NeighborhoodStructure::root());
}

Rational sdted(const NeighborhoodStructure& a, const NeighborhoodStructure& b,
               const EditCostModel& costs, const LevelWeights& weights, SdtedCache* cache) {
  SdtedComputer computer(costs, weights, cache);
  auto pa = computer.prepare(a);
  auto pb = computer.prepare(b);
  return computer.distance(pa, pb);
}

Rational subtree_removal_cost(const NeighborhoodStructure& s, NodeId node,
                              const EditCostModel& costs, const LevelWeights& weights, Side side,
                              std::optional<NodeId> parent) {
  if (node >= s.size()) throw std::out_of_range("unknown node " + std::to_string(node));
  const auto parents = s.parents(node);
  if (!parent && parents.size() == 1) parent = parents.front();
  if (!parent && parents.size() > 1) {
    throw std::invalid_argument("node " + std::to_string(node) + " has several parents; name one");
  }

  SdtedComputer computer(costs, weights);
  const auto prepared = computer.prepare(s);
  Rational total = side == Side::deletion ? prepared.deletion[node] : prepared.insertion[node];
  if (parent) {
    bool linked = false;
    for (const auto& link : s.children(*parent)) {
      if (link.child != node) continue;
      const Rational& lambda = weights.at(s.node(node).depth);
      total += lambda * (side == Side::deletion ? costs.edge_deletion(link.edge_label)
                                                : costs.edge_insertion(link.edge_label));
      linked = true;
    }
    if (!linked) throw std::invalid_argument("node " + std::to_string(*parent) + " is not a parent");
  }
  return total;
}

}  // namespace ntged
