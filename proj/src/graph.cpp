#include "ntged/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace ntged {

LabeledGraph::LabeledGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges,
                           std::string name)
    : name_(std::move(name)),
      vertex_labels_(std::move(vertex_labels)),
      edges_(std::move(edges)),
      adjacency_(vertex_labels_.size()) {
  const auto n = vertex_labels_.size();
  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") references unknown vertex");
    }
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                  std::to_string(edges_[i].v) + ")");
    }
  }
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back({e.v, e.label});
    adjacency_[e.v].push_back({e.u, e.label});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::size_t LabeledGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::optional<Label> LabeledGraph::edge_label(VertexId u, VertexId v) const {
  if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
  const auto& list = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const VertexId other = (&list == &adjacency_[u]) ? v : u;
  auto it = std::lower_bound(list.begin(), list.end(), other,
                             [](const Neighbor& nb, VertexId x) { return nb.vertex < x; });
  if (it == list.end() || it->vertex != other) return std::nullopt;
  return it->edge_label;
}

Label LabelDictionary::intern(Space& space, std::vector<std::string>& names,
                              std::string_view name) {
  auto [it, inserted] =
      space.ids.try_emplace(std::string(name), static_cast<Label>(names.size()));
  if (inserted) names.emplace_back(name);
  return it->second;
}

Label LabelDictionary::vertex_label(std::string_view name) {
  return intern(vertex_space_, vertex_names_, name);
}

Label LabelDictionary::edge_label(std::string_view name) {
  return intern(edge_space_, edge_names_, name);
}

std::optional<Label> LabelDictionary::find_vertex_label(std::string_view name) const {
  auto it = vertex_space_.ids.find(std::string(name));
  if (it == vertex_space_.ids.end()) return std::nullopt;
  return it->second;
}

std::optional<Label> LabelDictionary::find_edge_label(std::string_view name) const {
  auto it = edge_space_.ids.find(std::string(name));
  if (it == edge_space_.ids.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::uint64_t> to_index(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

struct PendingGraph {
  std::string name;
  std::vector<Label> labels;
  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> seen;
};

}  // namespace

void append_graphs(std::istream& in, Dataset& out) {
  std::optional<PendingGraph> current;
  auto flush = [&] {
    if (current) {
      out.graphs.emplace_back(std::move(current->labels), std::move(current->edges),
                              std::move(current->name));
      current.reset();
    }
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split(line);
    if (tok.empty()) continue;
    const auto kind = tok[0];
    if (kind == "t") {
      if (tok.size() != 3 || tok[1] != "#") throw ParseError(line_no, "malformed graph header");
      flush();
      if (tok[2] == "-1") break;
      current.emplace();
      current->name = std::string(tok[2]);
    } else if (kind == "v") {
      if (!current) throw ParseError(line_no, "vertex outside of a graph record");
      if (tok.size() != 2 && tok.size() != 3) throw ParseError(line_no, "malformed vertex line");
      auto id = to_index(tok[1]);
      if (!id) throw ParseError(line_no, "invalid vertex id '" + std::string(tok[1]) + "'");
      if (*id < current->labels.size()) {
        throw ParseError(line_no, "duplicate vertex id " + std::to_string(*id));
      }
      if (*id != current->labels.size()) {
        throw ParseError(line_no, "vertex id " + std::to_string(*id) + " is not consecutive (expected " +
                                      std::to_string(current->labels.size()) + ")");
      }
      current->labels.push_back(out.labels.vertex_label(tok.size() == 3 ? tok[2] : kUnlabeled));
    } else if (kind == "e") {
      if (!current) throw ParseError(line_no, "edge outside of a graph record");
      if (tok.size() != 3 && tok.size() != 4) throw ParseError(line_no, "malformed edge line");
      auto u = to_index(tok[1]);
      auto v = to_index(tok[2]);
      if (!u || !v) throw ParseError(line_no, "invalid edge endpoint");
      for (auto endpoint : {*u, *v}) {
        if (endpoint >= current->labels.size()) {
          throw ParseError(line_no, "edge references unknown vertex " + std::to_string(endpoint));
        }
      }
      if (*u == *v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(*u));
      const std::pair key{static_cast<VertexId>(std::min(*u, *v)),
                          static_cast<VertexId>(std::max(*u, *v))};
      if (!current->seen.emplace(key.first, key.second).second) {
        throw ParseError(line_no, "duplicate edge " + std::to_string(key.first) + " " +
                                      std::to_string(key.second));
      }
      current->edges.push_back({key.first, key.second,
                                out.labels.edge_label(tok.size() == 4 ? tok[3] : kUnlabeled)});
    } else {
      throw ParseError(line_no, "unknown record type '" + std::string(kind) + "'");
    }
  }
  flush();
}

Dataset parse_graphs(std::istream& in) {
  Dataset out;
  append_graphs(in, out);
  return out;
}

Dataset parse_graphs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graphs(in);
}

Dataset read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return parse_graphs(in);
}

void append_graph_file(const std::string& path, Dataset& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  append_graphs(in, out);
}

void write_graphs(std::ostream& out, std::span<const LabeledGraph> graphs,
                  const LabelDictionary& labels) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    out << "t # " << (g.name().empty() ? std::to_string(i) : g.name()) << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      out << "v " << v << ' ' << labels.vertex_name(g.vertex_label(v)) << '\n';
    }
    for (const auto& e : g.edges()) {
      out << "e " << e.u << ' ' << e.v << ' ' << labels.edge_name(e.label) << '\n';
    }
  }
}

std::string serialize_graphs(std::span<const LabeledGraph> graphs, const LabelDictionary& labels) {
  std::ostringstream out;
  write_graphs(out, graphs, labels);
  return out.str();
}

// ---------------------------------------------------------------------------
// Queries

std::vector<int> bfs_distances(const LabeledGraph& g, VertexId source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<VertexId> queue;
  dist.at(source) = 0;
  queue.push(source);
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(x)) {
      if (dist[nb.vertex] < 0) {
        dist[nb.vertex] = dist[x] + 1;
        queue.push(nb.vertex);
      }
    }
  }
  return dist;
}

int diameter(const LabeledGraph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("diameter of an empty graph");
  int best = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (int d : bfs_distances(g, v)) best = std::max(best, d);
  }
  return best;
}

namespace {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const LabeledGraph& g, const LabeledGraph& h)
      : g_(g), h_(h), map_(g.vertex_count(), kUnmapped), used_(h.vertex_count(), false) {
    order_.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) order_[v] = v;
    // Most constrained first.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
  }

  bool run() { return extend(0); }

 private:
  static constexpr VertexId kUnmapped = ~VertexId{0};

  bool consistent(VertexId gv, VertexId hv) const {
    if (g_.vertex_label(gv) != h_.vertex_label(hv) || g_.degree(gv) != h_.degree(hv)) return false;
    for (VertexId other = 0; other < g_.vertex_count(); ++other) {
      if (map_[other] == kUnmapped) continue;
      if (g_.edge_label(gv, other) != h_.edge_label(hv, map_[other])) return false;
    }
    return true;
  }

  bool extend(std::size_t pos) {
    if (pos == order_.size()) return true;
    const VertexId gv = order_[pos];
    for (VertexId hv = 0; hv < h_.vertex_count(); ++hv) {
      if (used_[hv] || !consistent(gv, hv)) continue;
      map_[gv] = hv;
      used_[hv] = true;
      if (extend(pos + 1)) return true;
      map_[gv] = kUnmapped;
      used_[hv] = false;
    }
    return false;
  }

  const LabeledGraph& g_;
  const LabeledGraph& h_;
  std::vector<VertexId> order_;
  std::vector<VertexId> map_;
  std::vector<bool> used_;
};

}  // namespace

bool is_isomorphic(const LabeledGraph& g, const LabeledGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  auto sorted = [](std::vector<Label> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(g.vertex_labels()) != sorted(h.vertex_labels())) return false;
  std::vector<Label> ge, he;
  for (const auto& e : g.edges()) ge.push_back(e.label);
  for (const auto& e : h.edges()) he.push_back(e.label);
  if (sorted(ge) != sorted(he)) return false;
  return IsomorphismSearch(g, h).run();
}

}  // namespace ntged
