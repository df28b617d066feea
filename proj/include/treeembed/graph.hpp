#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "treeembed/errors.hpp"
#include "treeembed/rational.hpp"

namespace treeembed {

using Vertex = std::int32_t;
inline constexpr Vertex kUnset = -1;

using Edge = std::pair<Vertex, Vertex>;

/// Per-host-vertex flag array. Empty means "no restriction" wherever a mask is optional.
using HostMask = std::vector<std::uint8_t>;

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
///
/// Neighbor lists are sorted and duplicate-free; a packed adjacency matrix backs
/// constant-time adjacency queries.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : adj_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  /// Builds a graph from an edge list. Loops, out-of-range ids and repeated
  /// edges are input errors.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range for n=" + std::to_string(n));
      }
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
      if (g.adjacent(u, v)) {
        throw InputError("repeated edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      g.set_bit(u, v);
      g.set_bit(v, u);
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      ++g.edge_count_;
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    return g;
  }

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    return from_edges(n, std::span<const Edge>(edges));
  }

  std::size_t order() const { return adj_.size(); }
  std::size_t size() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] >>
            (static_cast<std::size_t>(v) & 63)) & 1U;
  }

  /// Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < static_cast<Vertex>(order()); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < order(); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void set_bit(Vertex u, Vertex v) {
    bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] |=
        std::uint64_t{1} << (static_cast<std::size_t>(v) & 63);
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::size_t edge_count_ = 0;
};

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;

  explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
      throw InputError("duplicate vertex in vertex set");
    }
  }

  VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

  /// As the plain constructor, additionally checking every id lies in [0, n).
  static VertexSet within(std::vector<Vertex> ids, std::size_t n) {
    VertexSet s(std::move(ids));
    for (Vertex v : s.ids_) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw InputError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
      }
    }
    return s;
  }

  static VertexSet from_mask(const HostMask& mask) {
    std::vector<Vertex> ids;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) ids.push_back(static_cast<Vertex>(i));
    }
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<Vertex>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }

  HostMask mask(std::size_t n) const {
    HostMask m(n, 0);
    for (Vertex v : ids_) m[v] = 1;
    return m;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

/// Two disjoint sides of a bipartite subgraph of a host graph; its edges are
/// the host edges crossing the sides.
struct BipartitePair {
  VertexSet a;
  VertexSet b;

  BipartitePair() = default;
  BipartitePair(VertexSet side_a, VertexSet side_b) : a(std::move(side_a)), b(std::move(side_b)) {
    for (Vertex v : a) {
      if (b.contains(v)) throw InputError("bipartite sides share vertex " + std::to_string(v));
    }
  }

  std::size_t order() const { return a.size() + b.size(); }
  friend bool operator==(const BipartitePair&, const BipartitePair&) = default;
};

struct DegreeProfile {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  Rational avg_degree{0};
};

inline DegreeProfile degree_profile(const Graph& g) {
  if (g.order() == 0) return {};
  DegreeProfile p;
  p.min_degree = g.degree(0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    p.min_degree = std::min(p.min_degree, g.degree(v));
    p.max_degree = std::max(p.max_degree, g.degree(v));
  }
  p.avg_degree = Rational(static_cast<std::int64_t>(2 * g.size()), static_cast<std::int64_t>(g.order()));
  return p;
}

/// Induced subgraph plus the map from its ids back to the parent graph.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> local(g.order(), kUnset);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.contains(s[i])) throw InputError("vertex " + std::to_string(s[i]) + " not in graph");
    local[s[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (Vertex w : g.neighbors(s[i])) {
      if (local[w] != kUnset && local[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), local[w]);
    }
  }
  return {Graph::from_edges(s.size(), edges), s.ids()};
}

/// Number of neighbors of v inside the mask.
inline std::size_t degree_into(const Graph& g, Vertex v, const HostMask& mask) {
  std::size_t d = 0;
  for (Vertex w : g.neighbors(v)) d += mask[w] ? 1 : 0;
  return d;
}

/// Edges of g with both ends in the mask.
inline std::size_t edges_inside(const Graph& g, const HostMask& mask) {
  std::size_t e = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    if (!mask[v]) continue;
    for (Vertex w : g.neighbors(v)) {
      if (w > v && mask[w]) ++e;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n e
//   u v      (e lines, 0-based)
// '#' starts a comment that runs to end of line.

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

inline std::vector<long long> parse_ints(const std::string& line, std::size_t expected) {
  std::istringstream ss(line);
  std::vector<long long> values;
  long long x = 0;
  while (ss >> x) values.push_back(x);
  if (!ss.eof() || values.size() != expected) {
    throw InputError("expected " + std::to_string(expected) + " integers in line '" + line + "'");
  }
  return values;
}

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw InputError("empty edge-list input");
  auto header = detail::parse_ints(lines[0], 2);
  if (header[0] < 0 || header[1] < 0) throw InputError("negative header in edge list");
  auto e = static_cast<std::size_t>(header[1]);
  if (lines.size() != e + 1) {
    throw InputError("edge list declares " + std::to_string(e) + " edges but has " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(e);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto uv = detail::parse_ints(lines[i], 2);
    edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
  }
  return Graph::from_edges(static_cast<std::size_t>(header[0]), edges);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace treeembed
