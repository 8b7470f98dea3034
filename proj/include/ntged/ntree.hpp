#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ntged/graph.hpp"

namespace ntged {

using NodeId = std::uint32_t;

enum class StructureKind { unfolding, knt, cnt };

const char* to_string(StructureKind kind);

struct TreeNode {
  VertexId phi;  // graph vertex this node represents
  int depth;
  Label label;
};

struct ChildLink {
  NodeId child;
  Label edge_label;  // label of the graph edge phi(parent) phi(child)
};

/// Layered rooted structure over a graph neighborhood: an unfolding tree, a
/// k-redundant neighborhood tree, or its compressed form (a layered DAG in
/// which a node may have several parents).
///
/// Nodes are stored level by level, so the root is node 0 and every level
/// occupies a contiguous id range.
class NeighborhoodStructure {
 public:
  /// Validates depth layering and the tree/DAG shape required by `kind`.
  NeighborhoodStructure(StructureKind kind, int k, std::vector<TreeNode> nodes,
                        std::vector<std::vector<ChildLink>> children);

  static constexpr NodeId root() { return 0; }

  StructureKind kind() const { return kind_; }
  int k() const { return k_; }
  int height() const { return static_cast<int>(level_begin_.size()) - 2; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t link_count() const { return link_count_; }

  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const ChildLink> children(NodeId id) const { return children_.at(id); }
  std::span<const NodeId> parents(NodeId id) const { return parents_.at(id); }

  /// Node ids at `depth` as a half-open range [first, last).
  std::pair<NodeId, NodeId> level(int depth) const;

  /// Number of nodes of the fully expanded tree (shared subtrees counted once
  /// per parent path). Saturates at UINT64_MAX.
  std::uint64_t expanded_size() const;

  /// Indented text form, one node per line:
  ///   `<indent>[edge_label] phi=<v> depth=<d> label=<l>`
  /// Shared cNT nodes are printed under every parent.
  std::string debug_string() const;

  friend bool operator==(const NeighborhoodStructure& a, const NeighborhoodStructure& b);

 private:
  StructureKind kind_;
  int k_;
  std::vector<TreeNode> nodes_;
  std::vector<std::vector<ChildLink>> children_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<NodeId> level_begin_;  // level d spans [level_begin_[d], level_begin_[d+1])
  std::size_t link_count_ = 0;
};

/// Unfolding tree of height `height` rooted at `root`: every neighbor of every
/// node becomes a child. Size grows like max_degree^height.
NeighborhoodStructure build_unfolding_tree(const LabeledGraph& g, VertexId root, int height);

/// Compressed k-redundant neighborhood tree.
///
/// Level-wise breadth-first construction: a vertex first reached at depth D is
/// materialized at depth i only while D + k >= i, and at most once per level;
/// every qualifying parent gets a link to that single node. The height is
/// clamped to min(height, diameter(g) + k).
///
/// Merging proceeds level by level from the root downward, which is what makes
/// one node per (vertex, depth) sufficient.
NeighborhoodStructure build_cnt(const LabeledGraph& g, VertexId root, int height, int k);

/// Same as build_cnt with a precomputed diameter of `g`.
NeighborhoodStructure build_cnt(const LabeledGraph& g, VertexId root, int height, int k,
                                int graph_diameter);

/// Uncompressed k-NT obtained by duplicating every shared subtree once per
/// parent link. Identity (up to kind) for structures that are already trees.
NeighborhoodStructure expand(const NeighborhoodStructure& s);

using CodeId = std::uint32_t;

/// Hash-consing table for canonical tree codes.
///
/// A node's signature is its vertex label followed by the sorted list of
/// (edge label, child code) pairs; each distinct signature gets a dense id.
/// Within one table, two nodes receive the same id iff their (expanded)
/// subtrees are isomorphic as labeled rooted trees. Thread-safe.
class CodeTable {
 public:
  CodeId intern(const std::vector<std::uint32_t>& signature);
  std::size_t size() const;

 private:
  struct VectorHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
  };
  mutable std::mutex mutex_;
  std::unordered_map<std::vector<std::uint32_t>, CodeId, VectorHash> ids_;
};

/// Canonical code of every node of a structure; codes[root()] identifies the
/// whole structure. On cNTs each shared node is encoded once.
struct CanonicalCodes {
  std::vector<CodeId> codes;
  CodeId root() const { return codes.front(); }
};

CanonicalCodes canonical_codes(const NeighborhoodStructure& s, CodeTable& table);

/// Interner-independent canonical byte string of the expanded tree rooted at
/// `node`. Length is proportional to the expanded size; intended for tests and
/// debugging.
std::string canonical_string(const NeighborhoodStructure& s,
                             NodeId node = NeighborhoodStructure::root());

}  // namespace ntged
