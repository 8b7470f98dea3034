#include "ntged/ged_approx.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#include "ntged/ntree.hpp"

namespace ntged {

namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
 public:
  explicit PhaseTimer(std::chrono::nanoseconds* sink) : sink_(sink), start_(Clock::now()) {}
  ~PhaseTimer() {
    if (sink_) *sink_ += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_);
  }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  std::chrono::nanoseconds* sink_;
  Clock::time_point start_;
};

EditCostModel mirrored(const EditCostModel& c) {
  EditCostModel m = c;
  std::swap(m.vertex_del, m.vertex_ins);
  std::swap(m.edge_del, m.edge_ins);
  return m;
}

// Total order on graphs used to orient a pair independently of argument order.
bool orient_before(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return a.vertex_count() > b.vertex_count();
  if (a.edge_count() != b.edge_count()) return a.edge_count() > b.edge_count();
  if (a.vertex_labels() != b.vertex_labels()) return a.vertex_labels() < b.vertex_labels();
  const auto& ea = a.edges();
  const auto& eb = b.edges();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                      [](const Edge& x, const Edge& y) {
                                        return std::tie(x.u, x.v, x.label) < std::tie(y.u, y.v, y.label);
                                      });
}

Rational bgm_entry(const LabeledGraph& rows, VertexId i, const LabeledGraph& cols, VertexId j,
                   const EditCostModel& costs) {
  Rational total = costs.vertex_substitution(rows.vertex_label(i), cols.vertex_label(j));
  const auto ei = rows.neighbors(i);
  const auto ej = cols.neighbors(j);
  const std::size_t n = std::max(ei.size(), ej.size());
  if (n == 0) return total;
  CostMatrix m(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a < ei.size() && b < ej.size()) {
        m(a, b) = min(costs.edge_substitution(ei[a].edge_label, ej[b].edge_label),
                      costs.edge_deletion(ei[a].edge_label) + costs.edge_insertion(ej[b].edge_label));
      } else if (a < ei.size()) {
        m(a, b) = costs.edge_deletion(ei[a].edge_label);
      } else if (b < ej.size()) {
        m(a, b) = costs.edge_insertion(ej[b].edge_label);
      }
    }
  }
  return total + solve_lap(m).cost;
}

Rational bgm_deletion(const LabeledGraph& g, VertexId i, const EditCostModel& costs) {
  Rational total = costs.vertex_deletion(g.vertex_label(i));
  for (const auto& nb : g.neighbors(i)) total += costs.edge_deletion(nb.edge_label);
  return total;
}

std::vector<NeighborhoodStructure> build_structures(const LabeledGraph& g, const ApproxConfig& cfg) {
  std::vector<NeighborhoodStructure> out;
  if (g.vertex_count() == 0) return out;
  out.reserve(g.vertex_count());
  const int diam = diameter(g);
  const int k = cfg.effective_k();
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(build_cnt(g, v, cfg.height, k, diam));
  return out;
}

CostMatrix cost_matrix_impl(const LabeledGraph& rows, const LabeledGraph& cols, const ApproxConfig& cfg,
                            const EditCostModel& costs, SdtedCache* cache, PhaseTimings* timings) {
  if (rows.vertex_count() < cols.vertex_count()) {
    throw std::invalid_argument("row graph must not have fewer vertices than the column graph");
  }
  const std::size_t n = rows.vertex_count();
  const std::size_t m = cols.vertex_count();
  CostMatrix matrix(n, m);

  if (cfg.method == Method::bgm) {
    PhaseTimer timer(timings ? &timings->matrix : nullptr);
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = 0; j < m; ++j) matrix(i, j) = bgm_entry(rows, i, cols, j, costs);
      const Rational del = bgm_deletion(rows, i, costs);
      for (std::size_t j = m; j < n; ++j) matrix(i, j) = del;
    }
    return matrix;
  }

  SdtedComputer computer(costs, LevelWeights(cfg.weight), cache);
  std::vector<NeighborhoodStructure> row_trees, col_trees;
  std::vector<PreparedStructure> row_prep, col_prep;
  {
    PhaseTimer timer(timings ? &timings->trees : nullptr);
    row_trees = build_structures(rows, cfg);
    col_trees = build_structures(cols, cfg);
    for (const auto& t : row_trees) row_prep.push_back(computer.prepare(t));
    for (const auto& t : col_trees) col_prep.push_back(computer.prepare(t));
  }
  PhaseTimer timer(timings ? &timings->matrix : nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) matrix(i, j) = computer.distance(row_prep[i], col_prep[j]);
    const Rational del = computer.removal_cost(row_prep[i], Side::deletion);
    for (std::size_t j = m; j < n; ++j) matrix(i, j) = del;
  }
  return matrix;
}

void check_mapping(const LabeledGraph& g, const LabeledGraph& h, const VertexMapping& mapping) {
  if (mapping.size() != g.vertex_count()) throw std::invalid_argument("mapping size differs from |V(G)|");
  std::vector<bool> used(h.vertex_count(), false);
  for (const auto& image : mapping) {
    if (!image) continue;
    if (*image >= h.vertex_count()) throw std::invalid_argument("mapping image out of range");
    if (used[*image]) throw std::invalid_argument("mapping is not injective");
    used[*image] = true;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

ApproxConfig ApproxConfig::bgm() {
  ApproxConfig c;
  c.method = Method::bgm;
  c.height = 0;
  return c;
}

ApproxConfig ApproxConfig::nt(int height, int k) {
  ApproxConfig c;
  c.method = Method::nt;
  c.height = height;
  c.k = k;
  return c;
}

ApproxConfig ApproxConfig::wl(int height) {
  ApproxConfig c;
  c.method = Method::wl;
  c.height = height;
  c.k = height;
  return c;
}

int ApproxConfig::effective_k() const {
  switch (method) {
    case Method::bgm: return 0;
    case Method::nt: return k;
    case Method::wl: return height;
  }
  return k;
}

std::string ApproxConfig::method_name() const {
  switch (method) {
    case Method::bgm: return "bgm";
    case Method::wl: return "wl";
    case Method::nt: return k == 1 ? "nt1" : "nt";
  }
  return "?";
}

void ApproxConfig::validate() const {
  if (height < 0) throw std::invalid_argument("height must be non-negative");
  if (k < 0) throw std::invalid_argument("redundancy k must be non-negative");
  if (weight < Rational(0) || weight > Rational(1)) throw std::invalid_argument("weight must lie in [0, 1]");
  costs.validate();
}

ApproxConfig config_for_method(std::string_view name, int height) {
  if (name == "bgm") return ApproxConfig::bgm();
  if (name == "nt") return ApproxConfig::nt(height, 0);
  if (name == "nt1") return ApproxConfig::nt1(height);
  if (name == "wl") return ApproxConfig::wl(height);
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected bgm|nt|nt1|wl)");
}

CacheMode parse_cache_mode(std::string_view name) {
  if (name == "off") return CacheMode::off;
  if (name == "pair") return CacheMode::per_pair;
  if (name == "global") return CacheMode::global;
  throw std::invalid_argument("unknown cache mode '" + std::string(name) + "' (expected off|pair|global)");
}

std::string to_string(CacheMode mode) {
  switch (mode) {
    case CacheMode::off: return "off";
    case CacheMode::per_pair: return "pair";
    case CacheMode::global: return "global";
  }
  return "?";
}

const char* to_string(EditOpKind kind) {
  switch (kind) {
    case EditOpKind::delete_edge: return "DeleteEdge";
    case EditOpKind::relabel_edge: return "RelabelEdge";
    case EditOpKind::relabel_vertex: return "RelabelVertex";
    case EditOpKind::delete_vertex: return "DeleteVertex";
    case EditOpKind::insert_vertex: return "InsertVertex";
    case EditOpKind::insert_edge: return "InsertEdge";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Cost matrix

CostMatrix build_cost_matrix_oriented(const LabeledGraph& rows, const LabeledGraph& cols,
                                      const ApproxConfig& cfg, SdtedCache* cache) {
  cfg.validate();
  return cost_matrix_impl(rows, cols, cfg, cfg.costs, cache, nullptr);
}

GroundCostMatrix build_cost_matrix(const LabeledGraph& g, const LabeledGraph& h, const ApproxConfig& cfg,
                                   SdtedCache* cache) {
  cfg.validate();
  GroundCostMatrix out;
  out.swapped = orient_before(h, g);
  out.matrix = out.swapped ? cost_matrix_impl(h, g, cfg, mirrored(cfg.costs), cache, nullptr)
                           : cost_matrix_impl(g, h, cfg, cfg.costs, cache, nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Edit paths

EditPath derive_edit_path(const LabeledGraph& g, const LabeledGraph& h, const VertexMapping& mapping,
                          const EditCostModel& costs) {
  check_mapping(g, h, mapping);
  EditPath path;
  auto emit = [&](EditOperation op) {
    path.cost += op.cost;
    path.operations.push_back(op);
  };

  for (const auto& e : g.edges()) {
    const auto& pu = mapping[e.u];
    const auto& pv = mapping[e.v];
    std::optional<Label> target;
    if (pu && pv) target = h.edge_label(*pu, *pv);
    if (!target) {
      emit({EditOpKind::delete_edge, e.u, e.v, e.label, costs.edge_deletion(e.label)});
    } else if (*target != e.label) {
      emit({EditOpKind::relabel_edge, e.u, e.v, *target, costs.edge_substitution(e.label, *target)});
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!mapping[v]) continue;
    const Label target = h.vertex_label(*mapping[v]);
    if (target != g.vertex_label(v)) {
      emit({EditOpKind::relabel_vertex, v, v, target, costs.vertex_substitution(g.vertex_label(v), target)});
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!mapping[v]) emit({EditOpKind::delete_vertex, v, v, g.vertex_label(v), costs.vertex_deletion(g.vertex_label(v))});
  }

  // Working id of each H vertex: its preimage, or a fresh id for inserted ones.
  std::vector<std::optional<VertexId>> working(h.vertex_count());
  std::vector<bool> has_preimage(h.vertex_count(), false);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (mapping[v]) {
      working[*mapping[v]] = v;
      has_preimage[*mapping[v]] = true;
    }
  }
  auto next_id = static_cast<VertexId>(g.vertex_count());
  for (VertexId x = 0; x < h.vertex_count(); ++x) {
    if (working[x]) continue;
    working[x] = next_id;
    emit({EditOpKind::insert_vertex, next_id, next_id, h.vertex_label(x), costs.vertex_insertion(h.vertex_label(x))});
    ++next_id;
  }
  for (const auto& e : h.edges()) {
    if (has_preimage[e.u] && has_preimage[e.v] && g.has_edge(*working[e.u], *working[e.v])) continue;
    emit({EditOpKind::insert_edge, *working[e.u], *working[e.v], e.label, costs.edge_insertion(e.label)});
  }
  return path;
}

Rational mapping_cost(const LabeledGraph& g, const LabeledGraph& h, const VertexMapping& mapping,
                      const EditCostModel& costs) {
  return derive_edit_path(g, h, mapping, costs).cost;
}

LabeledGraph apply_edit_path(const LabeledGraph& g, const EditPath& path) {
  std::vector<std::optional<Label>> labels(g.vertex_labels().begin(), g.vertex_labels().end());
  std::map<std::pair<VertexId, VertexId>, Label> edges;
  for (const auto& e : g.edges()) edges[{e.u, e.v}] = e.label;

  auto alive = [&](VertexId v) { return v < labels.size() && labels[v].has_value(); };
  auto key = [](VertexId a, VertexId b) { return std::pair{std::min(a, b), std::max(a, b)}; };
  auto fail = [](const EditOperation& op, const char* why) {
    throw std::invalid_argument(std::string(to_string(op.kind)) + "(" + std::to_string(op.u) + "," +
                                std::to_string(op.v) + "): " + why);
  };

  for (const auto& op : path.operations) {
    switch (op.kind) {
      case EditOpKind::delete_edge:
      case EditOpKind::relabel_edge: {
        auto it = edges.find(key(op.u, op.v));
        if (it == edges.end()) fail(op, "no such edge");
        if (op.kind == EditOpKind::delete_edge) edges.erase(it);
        else it->second = op.label;
        break;
      }
      case EditOpKind::relabel_vertex:
        if (!alive(op.u)) fail(op, "no such vertex");
        labels[op.u] = op.label;
        break;
      case EditOpKind::delete_vertex: {
        if (!alive(op.u)) fail(op, "no such vertex");
        for (const auto& [k, l] : edges) {
          if (k.first == op.u || k.second == op.u) fail(op, "vertex still has incident edges");
        }
        labels[op.u].reset();
        break;
      }
      case EditOpKind::insert_vertex:
        if (op.u < labels.size() && labels[op.u]) fail(op, "vertex id already in use");
        if (op.u >= labels.size()) labels.resize(op.u + 1);
        labels[op.u] = op.label;
        break;
      case EditOpKind::insert_edge:
        if (!alive(op.u) || !alive(op.v) || op.u == op.v) fail(op, "invalid endpoints");
        if (!edges.emplace(key(op.u, op.v), op.label).second) fail(op, "edge already present");
        break;
    }
  }

  std::vector<VertexId> compact(labels.size(), 0);
  std::vector<Label> out_labels;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (!labels[v]) continue;
    compact[v] = static_cast<VertexId>(out_labels.size());
    out_labels.push_back(*labels[v]);
  }
  std::vector<Edge> out_edges;
  for (const auto& [k, l] : edges) out_edges.push_back({compact[k.first], compact[k.second], l});
  return LabeledGraph(std::move(out_labels), std::move(out_edges), g.name());
}

// ---------------------------------------------------------------------------
// Pipeline

ApproxResult approx_ged(const LabeledGraph& g, const LabeledGraph& h, const ApproxConfig& cfg,
                        SdtedCache* global_cache) {
  cfg.validate();
  ApproxResult result;
  result.mapping.assign(g.vertex_count(), std::nullopt);

  if (g.vertex_count() > 0 && h.vertex_count() > 0) {
    std::unique_ptr<SdtedCache> pair_cache;
    SdtedCache* cache = nullptr;
    if (cfg.method != Method::bgm) {
      switch (cfg.cache) {
        case CacheMode::off: break;
        case CacheMode::per_pair:
          pair_cache = std::make_unique<SdtedCache>();
          cache = pair_cache.get();
          break;
        case CacheMode::global:
          if (!global_cache) throw std::invalid_argument("global cache mode needs a shared cache");
          cache = global_cache;
          break;
      }
    }
    const SdtedCache::Stats before = cache ? cache->stats() : SdtedCache::Stats{};

    const bool swapped = orient_before(h, g);
    const CostMatrix matrix = swapped
        ? cost_matrix_impl(h, g, cfg, mirrored(cfg.costs), cache, &result.timings)
        : cost_matrix_impl(g, h, cfg, cfg.costs, cache, &result.timings);

    Assignment assignment;
    {
      PhaseTimer timer(&result.timings.lap);
      assignment = solve_lap(matrix);
    }
    for (std::size_t row = 0; row < matrix.size(); ++row) {
      const std::size_t col = assignment.row_to_col[row];
      if (matrix.is_epsilon_column(col)) continue;
      if (swapped) result.mapping[col] = static_cast<VertexId>(row);
      else result.mapping[row] = static_cast<VertexId>(col);
    }
    if (cache) {
      const auto after = cache->stats();
      result.cache_stats = {after.hits - before.hits, after.misses - before.misses, after.entries};
    }
  }

  {
    PhaseTimer timer(&result.timings.path);
    result.path = derive_edit_path(g, h, result.mapping, cfg.costs);
  }
  result.upper_bound = result.path.cost;
  return result;
}

}  // namespace ntged
