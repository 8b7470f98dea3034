#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ntged {

using VertexId = std::uint32_t;
using Label = std::uint32_t;

struct Edge {
  VertexId u;  // u < v
  VertexId v;
  Label label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  VertexId vertex;
  Label edge_label;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected simple graph with categorical vertex and edge labels.
///
/// Immutable once constructed. Adjacency lists are sorted by neighbor id so
/// edge lookups are a binary search over the smaller endpoint list.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate edges or endpoints
  /// outside [0, vertex_labels.size()).
  LabeledGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges, std::string name = {});

  std::size_t vertex_count() const { return vertex_labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& name() const { return name_; }

  Label vertex_label(VertexId v) const { return vertex_labels_.at(v); }
  const std::vector<Label>& vertex_labels() const { return vertex_labels_; }

  /// Edges with u < v, sorted by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const;

  std::optional<Label> edge_label(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return edge_label(u, v).has_value(); }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.vertex_labels_ == b.vertex_labels_ && a.edges_ == b.edges_;
  }

 private:
  std::string name_;
  std::vector<Label> vertex_labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Interns label strings to dense ids, with separate vertex and edge spaces.
class LabelDictionary {
 public:
  Label vertex_label(std::string_view name);
  Label edge_label(std::string_view name);

  std::optional<Label> find_vertex_label(std::string_view name) const;
  std::optional<Label> find_edge_label(std::string_view name) const;

  const std::string& vertex_name(Label id) const { return vertex_names_.at(id); }
  const std::string& edge_name(Label id) const { return edge_names_.at(id); }

  std::size_t vertex_label_count() const { return vertex_names_.size(); }
  std::size_t edge_label_count() const { return edge_names_.size(); }

 private:
  struct Space {
    std::unordered_map<std::string, Label> ids;
  };
  static Label intern(Space& space, std::vector<std::string>& names, std::string_view name);

  Space vertex_space_, edge_space_;
  std::vector<std::string> vertex_names_, edge_names_;
};

struct Dataset {
  std::vector<LabeledGraph> graphs;
  LabelDictionary labels;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Label used for vertices or edges declared without a label token.
inline constexpr std::string_view kUnlabeled = "_";

/// Reads the line-based `t # id` / `v vid label` / `e u v label` format.
/// A `t # -1` record ends the input. Blank lines are skipped.
Dataset parse_graphs(std::istream& in);
Dataset parse_graphs(std::string_view text);
Dataset read_graph_file(const std::string& path);
/// Appends to an existing dataset, sharing its label dictionary.
void append_graphs(std::istream& in, Dataset& out);
void append_graph_file(const std::string& path, Dataset& out);

void write_graphs(std::ostream& out, std::span<const LabeledGraph> graphs,
                  const LabelDictionary& labels);
std::string serialize_graphs(std::span<const LabeledGraph> graphs, const LabelDictionary& labels);

/// Shortest-path distances from `source`; unreachable vertices get -1.
std::vector<int> bfs_distances(const LabeledGraph& g, VertexId source);

/// Maximum over connected components of the component diameter.
/// Throws std::invalid_argument for a graph without vertices.
int diameter(const LabeledGraph& g);

/// Label- and edge-preserving isomorphism test by backtracking. Meant for
/// small graphs (test oracle scale).
bool is_isomorphic(const LabeledGraph& g, const LabeledGraph& h);

}  // namespace ntged
