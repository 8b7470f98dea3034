#include "ntged/ntree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ntged {

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::unfolding: return "unfolding";
    case StructureKind::knt: return "knt";
    case StructureKind::cnt: return "cnt";
  }
  return "?";
}

NeighborhoodStructure::NeighborhoodStructure(StructureKind kind, int k, std::vector<TreeNode> nodes,
                                             std::vector<std::vector<ChildLink>> children)
    : kind_(kind), k_(k), nodes_(std::move(nodes)), children_(std::move(children)) {
  if (nodes_.empty()) throw std::invalid_argument("structure without a root");
  if (children_.size() != nodes_.size()) throw std::invalid_argument("children/node count mismatch");
  if (nodes_[0].depth != 0) throw std::invalid_argument("root must have depth 0");

  level_begin_.push_back(0);
  for (NodeId id = 1; id < nodes_.size(); ++id) {
    const int prev = nodes_[id - 1].depth;
    const int cur = nodes_[id].depth;
    if (cur == prev) continue;
    if (cur != prev + 1) throw std::invalid_argument("nodes must be stored level by level");
    level_begin_.push_back(id);
  }
  level_begin_.push_back(static_cast<NodeId>(nodes_.size()));

  parents_.resize(nodes_.size());
  for (NodeId p = 0; p < nodes_.size(); ++p) {
    for (const auto& link : children_[p]) {
      if (link.child >= nodes_.size()) throw std::invalid_argument("link to unknown node");
      if (nodes_[link.child].depth != nodes_[p].depth + 1) {
        throw std::invalid_argument("link does not connect consecutive levels");
      }
      parents_[link.child].push_back(p);
      ++link_count_;
    }
  }
  for (NodeId id = 1; id < nodes_.size(); ++id) {
    if (parents_[id].empty()) throw std::invalid_argument("non-root node without a parent");
    if (kind_ != StructureKind::cnt && parents_[id].size() != 1) {
      throw std::invalid_argument("tree node with several parents");
    }
  }
}

std::pair<NodeId, NodeId> NeighborhoodStructure::level(int depth) const {
  if (depth < 0 || depth > height()) return {0, 0};
  return {level_begin_[depth], level_begin_[depth + 1]};
}

std::uint64_t NeighborhoodStructure::expanded_size() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(nodes_.size(), 1);
  for (NodeId id = static_cast<NodeId>(nodes_.size()); id-- > 0;) {
    for (const auto& link : children_[id]) {
      count[id] = count[link.child] > kMax - count[id] ? kMax : count[id] + count[link.child];
    }
  }
  return count[0];
}

std::string NeighborhoodStructure::debug_string() const {
  std::ostringstream out;
  out << to_string(kind_) << " k=" << k_ << " height=" << height() << " nodes=" << size()
      << " links=" << link_count_ << '\n';
  auto print = [&](auto&& self, NodeId id, int indent, const Label* edge) -> void {
    const auto& n = nodes_[id];
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    if (edge) out << '[' << *edge << "] ";
    out << "phi=" << n.phi << " depth=" << n.depth << " label=" << n.label << '\n';
    for (const auto& link : children_[id]) self(self, link.child, indent + 1, &link.edge_label);
  };
  print(print, root(), 0, nullptr);
  return out.str();
}

bool operator==(const NeighborhoodStructure& a, const NeighborhoodStructure& b) {
  if (a.kind_ != b.kind_ || a.k_ != b.k_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const auto& x = a.nodes_[i];
    const auto& y = b.nodes_[i];
    if (x.phi != y.phi || x.depth != y.depth || x.label != y.label) return false;
    if (a.children_[i].size() != b.children_[i].size()) return false;
    for (std::size_t j = 0; j < a.children_[i].size(); ++j) {
      if (a.children_[i][j].child != b.children_[i][j].child ||
          a.children_[i][j].edge_label != b.children_[i][j].edge_label) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Construction

NeighborhoodStructure build_unfolding_tree(const LabeledGraph& g, VertexId root, int height) {
  if (root >= g.vertex_count()) throw std::out_of_range("root vertex out of range");
  if (height < 0) throw std::invalid_argument("negative height");

  std::vector<TreeNode> nodes{{root, 0, g.vertex_label(root)}};
  std::vector<std::vector<ChildLink>> children(1);
  NodeId level_start = 0;
  for (int depth = 1; depth <= height; ++depth) {
    const auto level_end = static_cast<NodeId>(nodes.size());
    for (NodeId p = level_start; p < level_end; ++p) {
      for (const auto& nb : g.neighbors(nodes[p].phi)) {
        const auto c = static_cast<NodeId>(nodes.size());
        nodes.push_back({nb.vertex, depth, g.vertex_label(nb.vertex)});
        children.emplace_back();
        children[p].push_back({c, nb.edge_label});
      }
    }
    if (nodes.size() == level_end) break;
    level_start = level_end;
  }
  return NeighborhoodStructure(StructureKind::unfolding, height, std::move(nodes),
                               std::move(children));
}

NeighborhoodStructure build_cnt(const LabeledGraph& g, VertexId root, int height, int k) {
  if (root >= g.vertex_count()) throw std::out_of_range("root vertex out of range");
  return build_cnt(g, root, height, k, diameter(g));
}

NeighborhoodStructure build_cnt(const LabeledGraph& g, VertexId root, int height, int k,
                                int graph_diameter) {
  if (root >= g.vertex_count()) throw std::out_of_range("root vertex out of range");
  if (height < 0 || k < 0) throw std::invalid_argument("negative height or redundancy");
  const int effective = std::min(height, graph_diameter + k);

  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<int> first_depth(g.vertex_count(), -1);
  std::vector<NodeId> found(g.vertex_count(), kNone);  // node for a vertex on the current level

  std::vector<TreeNode> nodes{{root, 0, g.vertex_label(root)}};
  std::vector<std::vector<ChildLink>> children(1);
  first_depth[root] = 0;

  NodeId level_start = 0;
  for (int depth = 1; depth <= effective; ++depth) {
    const auto level_end = static_cast<NodeId>(nodes.size());
    for (NodeId p = level_start; p < level_end; ++p) {
      for (const auto& nb : g.neighbors(nodes[p].phi)) {
        const VertexId u = nb.vertex;
        if (first_depth[u] < 0) first_depth[u] = depth;
        if (first_depth[u] + k < depth) continue;
        if (found[u] == kNone) {
          found[u] = static_cast<NodeId>(nodes.size());
          nodes.push_back({u, depth, g.vertex_label(u)});
          children.emplace_back();
        }
        children[p].push_back({found[u], nb.edge_label});
      }
    }
    for (NodeId c = level_end; c < nodes.size(); ++c) found[nodes[c].phi] = kNone;
    if (nodes.size() == level_end) break;
    level_start = level_end;
  }
  return NeighborhoodStructure(StructureKind::cnt, k, std::move(nodes), std::move(children));
}

NeighborhoodStructure expand(const NeighborhoodStructure& s) {
  const StructureKind kind =
      s.kind() == StructureKind::cnt ? StructureKind::knt : s.kind();
  std::vector<TreeNode> nodes{s.node(s.root())};
  std::vector<NodeId> origin{s.root()};
  std::vector<std::vector<ChildLink>> children(1);
  NodeId level_start = 0;
  while (true) {
    const auto level_end = static_cast<NodeId>(nodes.size());
    for (NodeId p = level_start; p < level_end; ++p) {
      for (const auto& link : s.children(origin[p])) {
        const auto c = static_cast<NodeId>(nodes.size());
        nodes.push_back(s.node(link.child));
        origin.push_back(link.child);
        children.emplace_back();
        children[p].push_back({c, link.edge_label});
      }
    }
    if (nodes.size() == level_end) break;
    level_start = level_end;
  }
  return NeighborhoodStructure(kind, s.k(), std::move(nodes), std::move(children));
}

// ---------------------------------------------------------------------------
// Canonical codes

std::size_t CodeTable::VectorHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= x;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

CodeId CodeTable::intern(const std::vector<std::uint32_t>& signature) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = ids_.try_emplace(signature, static_cast<CodeId>(ids_.size()));
  return it->second;
}

std::size_t CodeTable::size() const {
  std::lock_guard lock(mutex_);
  return ids_.size();
}

CanonicalCodes canonical_codes(const NeighborhoodStructure& s, CodeTable& table) {
  CanonicalCodes out;
  out.codes.assign(s.size(), 0);
  std::vector<std::pair<Label, CodeId>> keyed;
  std::vector<std::uint32_t> signature;
  // Deepest level first; children always have larger ids than their parents.
  for (NodeId id = static_cast<NodeId>(s.size()); id-- > 0;) {
    keyed.clear();
    for (const auto& link : s.children(id)) keyed.emplace_back(link.edge_label, out.codes[link.child]);
    std::sort(keyed.begin(), keyed.end());
    signature.clear();
    signature.push_back(s.node(id).label);
    for (const auto& [edge, code] : keyed) {
      signature.push_back(edge);
      signature.push_back(code);
    }
    out.codes[id] = table.intern(signature);
  }
  return out;
}

std::string canonical_string(const NeighborhoodStructure& s, NodeId node) {
  std::vector<std::string> memo(s.size());
  std::vector<bool> done(s.size(), false);
  auto encode = [&](auto&& self, NodeId id) -> const std::string& {
    if (done[id]) return memo[id];
    std::vector<std::pair<Label, std::string>> parts;
    for (const auto& link : s.children(id)) parts.emplace_back(link.edge_label, self(self, link.child));
    std::sort(parts.begin(), parts.end());
    std::string code = "(" + std::to_string(s.node(id).label);
    for (const auto& [edge, child] : parts) {
      code += ' ';
      code += std::to_string(edge);
      code += ':';
      code += child;
    }
    code += ')';
    memo[id] = std::move(code);
    done[id] = true;
    return memo[id];
  };
  return encode(encode, node);
}

}  // namespace ntged
