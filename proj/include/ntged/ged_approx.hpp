#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntged/assignment.hpp"
#include "ntged/costs.hpp"
#include "ntged/graph.hpp"
#include "ntged/sdted.hpp"

namespace ntged {

enum class Method {
  bgm,  // vertex plus incident edges (classic bipartite graph matching)
  nt,   // compressed k-redundant neighborhood trees, k from ApproxConfig::k
  wl,   // compressed unfolding trees (k = height)
};

enum class CacheMode { off, per_pair, global };

struct ApproxConfig {
  Method method = Method::nt;
  int height = 3;
  int k = 0;  // used by Method::nt only
  Rational weight{1, 2};
  CacheMode cache = CacheMode::per_pair;
  EditCostModel costs;

  static ApproxConfig bgm();
  static ApproxConfig nt(int height, int k = 0);
  static ApproxConfig nt1(int height) { return nt(height, 1); }
  static ApproxConfig wl(int height);

  /// Redundancy actually used to build the trees.
  int effective_k() const;
  /// Short method tag: bgm, nt, nt1, wl (nt with k > 1 is still "nt").
  std::string method_name() const;

  void validate() const;
};

/// Parses bgm|nt|nt1|wl; throws std::invalid_argument otherwise.
ApproxConfig config_for_method(std::string_view name, int height);
CacheMode parse_cache_mode(std::string_view name);
std::string to_string(CacheMode mode);

enum class EditOpKind { delete_edge, relabel_edge, relabel_vertex, delete_vertex, insert_vertex, insert_edge };

const char* to_string(EditOpKind kind);

/// One edit operation. Vertex ids refer to the working graph: original
/// vertices keep their id in G, inserted vertices get ids |V(G)|, |V(G)|+1, ...
struct EditOperation {
  EditOpKind kind;
  VertexId u = 0;
  VertexId v = 0;  // second endpoint for edge operations
  Label label = 0; // new label for relabel/insert
  Rational cost;

  friend bool operator==(const EditOperation&, const EditOperation&) = default;
};

struct EditPath {
  std::vector<EditOperation> operations;
  Rational cost;

  friend bool operator==(const EditPath&, const EditPath&) = default;
};

/// Vertex mapping from G to H: mapping[v] is the image of v or nullopt when v
/// is deleted. H vertices without preimage are inserted.
using VertexMapping = std::vector<std::optional<VertexId>>;

/// Cost matrix between the vertices of two graphs, oriented so that rows are
/// the vertices of the larger graph.
struct GroundCostMatrix {
  CostMatrix matrix;
  bool swapped = false;  // rows are H's vertices, real columns G's
};

/// Rows: vertices of the row graph; columns: vertices of the column graph,
/// then epsilon columns (deletion of the row vertex). Requires
/// |V(rows)| >= |V(cols)|.
CostMatrix build_cost_matrix_oriented(const LabeledGraph& rows, const LabeledGraph& cols,
                                      const ApproxConfig& cfg, SdtedCache* cache = nullptr);

/// Orients the pair (larger graph as rows; ties broken by edge count, then by
/// serialized content) and builds the matrix. For the tree methods the entry
/// (i, j) is the SDTED between the vertices' neighborhood structures and
/// (i, eps) the full weighted deletion cost of vertex i's structure. For bgm,
/// (i, j) is the vertex substitution plus an optimal assignment of incident
/// edges, and (i, eps) deletes the vertex with all incident edges.
GroundCostMatrix build_cost_matrix(const LabeledGraph& g, const LabeledGraph& h,
                                   const ApproxConfig& cfg, SdtedCache* cache = nullptr);

/// Edit path induced by a vertex mapping, in this order: edge relabels and
/// deletions, vertex relabels, vertex deletions, vertex insertions, edge
/// insertions.
EditPath derive_edit_path(const LabeledGraph& g, const LabeledGraph& h, const VertexMapping& mapping,
                          const EditCostModel& costs);

/// Cost of the path induced by a mapping, without materializing it.
Rational mapping_cost(const LabeledGraph& g, const LabeledGraph& h, const VertexMapping& mapping,
                      const EditCostModel& costs);

/// Applies a path to G. Throws std::invalid_argument for an illegal operation
/// (deleting a vertex that still has edges, touching a missing vertex or edge,
/// inserting an existing edge). Surviving vertices are renumbered densely in
/// working-id order.
LabeledGraph apply_edit_path(const LabeledGraph& g, const EditPath& path);

struct PhaseTimings {
  std::chrono::nanoseconds trees{0};
  std::chrono::nanoseconds matrix{0};
  std::chrono::nanoseconds lap{0};
  std::chrono::nanoseconds path{0};

  std::chrono::nanoseconds total() const { return trees + matrix + lap + path; }
};

struct ApproxResult {
  Rational upper_bound;
  VertexMapping mapping;  // G -> H
  EditPath path;
  PhaseTimings timings;
  SdtedCache::Stats cache_stats;
};

/// Bipartite-matching upper bound on the graph edit distance. With
/// CacheMode::global a caller-owned cache must be passed in; otherwise the
/// cache argument is ignored and a per-pair cache is used as configured.
ApproxResult approx_ged(const LabeledGraph& g, const LabeledGraph& h, const ApproxConfig& cfg,
                        SdtedCache* global_cache = nullptr);

}  // namespace ntged
