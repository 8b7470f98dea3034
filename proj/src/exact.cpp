#include "ntged/exact.hpp"

#include <algorithm>
#include <numeric>

namespace ntged {

namespace {

// Costs scaled to a common denominator so the search runs on integers.
struct ScaledCosts {
  std::int64_t denominator = 1;
  std::int64_t vsub, vdel, vins, esub, edel, eins;

  explicit ScaledCosts(const EditCostModel& c) {
    for (const Rational* r : {&c.vertex_sub, &c.vertex_del, &c.vertex_ins, &c.edge_sub, &c.edge_del, &c.edge_ins}) {
      denominator = std::lcm(denominator, r->den());
    }
    auto scale = [&](const Rational& r) { return r.num() * (denominator / r.den()); };
    vsub = scale(c.vertex_sub);
    vdel = scale(c.vertex_del);
    vins = scale(c.vertex_ins);
    esub = scale(c.edge_sub);
    edel = scale(c.edge_del);
    eins = scale(c.edge_ins);
  }

  Rational unscale(std::int64_t v) const { return Rational(v, denominator); }
};

// Cheapest way to reconcile two label multisets of sizes a and b sharing
// `common` labels.
std::int64_t multiset_bound(std::int64_t a, std::int64_t b, std::int64_t common, std::int64_t sub,
                            std::int64_t del, std::int64_t ins) {
  const std::int64_t swap_cost = std::min(sub, del + ins);
  if (a >= b) return (a - b) * del + (b - common) * swap_cost;
  return (b - a) * ins + (a - common) * swap_cost;
}

class BranchAndBound {
 public:
  BranchAndBound(const LabeledGraph& g, const LabeledGraph& h, const ScaledCosts& c)
      : g_(g), h_(h), c_(c), image_(g.vertex_count(), kUndecided),
        preimage_(h.vertex_count(), kUndecided), processed_(g.vertex_count(), false) {
    order_.resize(g.vertex_count());
    std::iota(order_.begin(), order_.end(), VertexId{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });

    Label vl = 0, el = 0;
    for (auto l : g.vertex_labels()) vl = std::max(vl, l + 1);
    for (auto l : h.vertex_labels()) vl = std::max(vl, l + 1);
    for (const auto& e : g.edges()) el = std::max(el, e.label + 1);
    for (const auto& e : h.edges()) el = std::max(el, e.label + 1);
    g_vertex_.assign(vl, 0);
    h_vertex_.assign(vl, 0);
    g_edge_.assign(el, 0);
    h_edge_.assign(el, 0);
    for (auto l : g.vertex_labels()) ++g_vertex_[l];
    for (auto l : h.vertex_labels()) ++h_vertex_[l];
    for (const auto& e : g.edges()) ++g_edge_[e.label];
    for (const auto& e : h.edges()) ++h_edge_[e.label];
    g_vertices_left_ = static_cast<std::int64_t>(g.vertex_count());
    h_vertices_left_ = static_cast<std::int64_t>(h.vertex_count());
    g_edges_left_ = static_cast<std::int64_t>(g.edge_count());
    h_edges_left_ = static_cast<std::int64_t>(h.edge_count());
  }

  void seed(std::int64_t cost, const VertexMapping* mapping) {
    best_ = cost;
    if (mapping) {
      best_mapping_ = *mapping;
      have_mapping_ = true;
    }
  }

  void run() { descend(0, 0); }

  std::int64_t best() const { return best_; }
  bool have_mapping() const { return have_mapping_; }
  const VertexMapping& best_mapping() const { return best_mapping_; }
  std::uint64_t expanded() const { return expanded_; }

 private:
  static constexpr std::int64_t kUndecided = -2;
  static constexpr std::int64_t kDeleted = -1;

  std::int64_t lower_bound() const {
    std::int64_t common_v = 0, common_e = 0;
    for (std::size_t l = 0; l < g_vertex_.size(); ++l) common_v += std::min(g_vertex_[l], h_vertex_[l]);
    for (std::size_t l = 0; l < g_edge_.size(); ++l) common_e += std::min(g_edge_[l], h_edge_[l]);
    return multiset_bound(g_vertices_left_, h_vertices_left_, common_v, c_.vsub, c_.vdel, c_.vins) +
           multiset_bound(g_edges_left_, h_edges_left_, common_e, c_.esub, c_.edel, c_.eins);
  }

  bool prune(std::int64_t estimate) const {
    return estimate > best_ || (have_mapping_ && estimate == best_);
  }

  // Cost charged when G vertex gv takes image x (kDeleted for deletion).
  std::int64_t step_cost(VertexId gv, std::int64_t x) const {
    std::int64_t cost = 0;
    if (x == kDeleted) {
      cost += c_.vdel;
      for (const auto& nb : g_.neighbors(gv)) {
        if (processed_[nb.vertex]) cost += c_.edel;
      }
      return cost;
    }
    const auto hx = static_cast<VertexId>(x);
    if (g_.vertex_label(gv) != h_.vertex_label(hx)) cost += c_.vsub;
    for (const auto& nb : g_.neighbors(gv)) {
      if (!processed_[nb.vertex]) continue;
      const std::int64_t img = image_[nb.vertex];
      std::optional<Label> target;
      if (img >= 0) target = h_.edge_label(hx, static_cast<VertexId>(img));
      if (!target) cost += c_.edel;
      else if (*target != nb.edge_label) cost += c_.esub;
    }
    for (const auto& nb : h_.neighbors(hx)) {
      const std::int64_t pre = preimage_[nb.vertex];
      if (pre >= 0 && !g_.has_edge(gv, static_cast<VertexId>(pre))) cost += c_.eins;
    }
    return cost;
  }

  void assign(VertexId gv, std::int64_t x) {
    processed_[gv] = true;
    image_[gv] = x;
    --g_vertex_[g_.vertex_label(gv)];
    --g_vertices_left_;
    for (const auto& nb : g_.neighbors(gv)) {
      if (nb.vertex != gv && processed_[nb.vertex]) {
        --g_edge_[nb.edge_label];
        --g_edges_left_;
      }
    }
    if (x >= 0) {
      const auto hx = static_cast<VertexId>(x);
      preimage_[hx] = gv;
      --h_vertex_[h_.vertex_label(hx)];
      --h_vertices_left_;
      for (const auto& nb : h_.neighbors(hx)) {
        if (preimage_[nb.vertex] >= 0 && nb.vertex != hx) {
          --h_edge_[nb.edge_label];
          --h_edges_left_;
        }
      }
    }
  }

  void unassign(VertexId gv) {
    const std::int64_t x = image_[gv];
    if (x >= 0) {
      const auto hx = static_cast<VertexId>(x);
      for (const auto& nb : h_.neighbors(hx)) {
        if (preimage_[nb.vertex] >= 0 && nb.vertex != hx) {
          ++h_edge_[nb.edge_label];
          ++h_edges_left_;
        }
      }
      preimage_[hx] = kUndecided;
      ++h_vertex_[h_.vertex_label(hx)];
      ++h_vertices_left_;
    }
    for (const auto& nb : g_.neighbors(gv)) {
      if (processed_[nb.vertex] && nb.vertex != gv) {
        ++g_edge_[nb.edge_label];
        ++g_edges_left_;
      }
    }
    ++g_vertex_[g_.vertex_label(gv)];
    ++g_vertices_left_;
    image_[gv] = kUndecided;
    processed_[gv] = false;
  }

  void descend(std::size_t pos, std::int64_t acc) {
    ++expanded_;
    if (pos == order_.size()) {
      // Only insertions of the unused H vertices and their edges remain, and
      // the bound is exact for them.
      const std::int64_t total = acc + lower_bound();
      if (total < best_ || !have_mapping_) {
        if (total > best_) return;
        best_ = total;
        best_mapping_.assign(g_.vertex_count(), std::nullopt);
        for (VertexId v = 0; v < g_.vertex_count(); ++v) {
          if (image_[v] >= 0) best_mapping_[v] = static_cast<VertexId>(image_[v]);
        }
        have_mapping_ = true;
      }
      return;
    }

    const VertexId gv = order_[pos];
    std::vector<std::pair<std::int64_t, std::int64_t>> candidates;  // (step cost, image)
    for (VertexId x = 0; x < h_.vertex_count(); ++x) {
      if (preimage_[x] == kUndecided) candidates.emplace_back(step_cost(gv, x), x);
    }
    candidates.emplace_back(step_cost(gv, kDeleted), kDeleted);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [step, x] : candidates) {
      const std::int64_t next = acc + step;
      if (prune(next)) break;  // candidates are sorted by step cost
      assign(gv, x);
      if (!prune(next + lower_bound())) descend(pos + 1, next);
      unassign(gv);
    }
  }

  const LabeledGraph& g_;
  const LabeledGraph& h_;
  const ScaledCosts& c_;
  std::vector<VertexId> order_;
  std::vector<std::int64_t> image_;
  std::vector<std::int64_t> preimage_;
  std::vector<bool> processed_;
  std::vector<std::int64_t> g_vertex_, h_vertex_, g_edge_, h_edge_;
  std::int64_t g_vertices_left_ = 0, h_vertices_left_ = 0, g_edges_left_ = 0, h_edges_left_ = 0;
  std::int64_t best_ = 0;
  bool have_mapping_ = false;
  VertexMapping best_mapping_;
  std::uint64_t expanded_ = 0;
};

}  // namespace

ExactResult exact_ged_search(const LabeledGraph& g, const LabeledGraph& h, const EditCostModel& costs,
                             const ExactOptions& options) {
  costs.validate();
  const std::size_t total = g.vertex_count() + h.vertex_count();
  if (total > options.max_total_vertices) {
    throw SizeGuardError("exact GED limited to " + std::to_string(options.max_total_vertices) +
                         " vertices in total, got " + std::to_string(total));
  }

  const ScaledCosts scaled(costs);
  BranchAndBound search(g, h, scaled);

  if (options.incumbent) {
    // Smallest scaled integer >= incumbent; any cheaper path is still found.
    const Rational scaled_bound = *options.incumbent * Rational(scaled.denominator);
    std::int64_t bound = scaled_bound.num() / scaled_bound.den();
    if (Rational(bound) < scaled_bound) ++bound;
    search.seed(bound, nullptr);
  } else {
    ApproxConfig cfg = ApproxConfig::nt(3);
    cfg.costs = costs;
    const auto approx = approx_ged(g, h, cfg);
    const Rational scaled_bound = approx.upper_bound * Rational(scaled.denominator);
    search.seed(scaled_bound.num(), &approx.mapping);
  }
  search.run();

  ExactResult result;
  result.distance = scaled.unscale(search.best());
  result.mapping = search.best_mapping();
  result.expanded_nodes = search.expanded();
  if (!search.have_mapping()) {
    throw std::invalid_argument("supplied incumbent is below the exact distance");
  }
  return result;
}

Rational exact_ged(const LabeledGraph& g, const LabeledGraph& h, const EditCostModel& costs,
                   const ExactOptions& options) {
  return exact_ged_search(g, h, costs, options).distance;
}

}  // namespace ntged
