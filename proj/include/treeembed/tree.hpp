#pragma once

#include <algorithm>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"

namespace treeembed {

/// Parent/children view of a tree hung from a root.
struct Rooting {
  Vertex root = 0;
  std::vector<Vertex> parent;                 // kUnset at the root
  std::vector<std::vector<Vertex>> children;  // ascending ids
  std::vector<Vertex> bfs_order;              // root first
  std::vector<int> depth;
  std::vector<std::size_t> subtree_size;
};

/// Tree on vertices 0..n-1 with an optional root. Immutable; the rooting is
/// computed once at construction when a root is given.
class Tree {
 public:
  Tree() : Tree(single_vertex()) {}

  static Tree single_vertex() { return Tree(1, {}, std::nullopt); }

  /// Validates that the edges form a spanning tree on n vertices.
  static Tree from_edges(std::size_t n, const std::vector<Edge>& edges,
                         std::optional<Vertex> root = std::nullopt) {
    if (n == 0) throw InputError("tree must have at least one vertex");
    if (edges.size() + 1 != n) {
      throw InputError("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                       " edges, got " + std::to_string(edges.size()));
    }
    return Tree(n, edges, root);
  }

  std::size_t order() const { return adj_.size(); }
  std::size_t edge_count() const { return adj_.size() - 1; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool is_leaf(Vertex v) const { return adj_[v].size() == 1; }
  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < order(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<Vertex> root() const { return root_; }
  bool adjacent(Vertex u, Vertex v) const { return std::binary_search(adj_[u].begin(), adj_[u].end(), v); }

  /// Same tree, rooted at r.
  Tree with_root(Vertex r) const { return Tree(order(), edges_, r); }

  /// Rooting for the stored root. Throws if the tree is unrooted.
  const Rooting& rooting() const {
    if (!rooting_) throw InputError("tree has no root");
    return *rooting_;
  }

  std::vector<Vertex> leaves() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(order()); ++v) {
      if (is_leaf(v)) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const Tree& a, const Tree& b) { return a.adj_ == b.adj_ && a.root_ == b.root_; }

 private:
  Tree(std::size_t n, std::vector<Edge> edges, std::optional<Vertex> root);

  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::optional<Vertex> root_;
  std::shared_ptr<const Rooting> rooting_;
};

/// Hangs the tree from r. Works on any tree regardless of its stored root.
inline Rooting root_at(const Tree& t, Vertex r) {
  if (!t.contains(r)) throw InputError("root " + std::to_string(r) + " not in tree");
  Rooting rt;
  const std::size_t n = t.order();
  rt.root = r;
  rt.parent.assign(n, kUnset);
  rt.children.assign(n, {});
  rt.depth.assign(n, 0);
  rt.subtree_size.assign(n, 1);
  rt.bfs_order.reserve(n);
  rt.bfs_order.push_back(r);
  std::vector<std::uint8_t> seen(n, 0);
  seen[r] = 1;
  for (std::size_t head = 0; head < rt.bfs_order.size(); ++head) {
    Vertex u = rt.bfs_order[head];
    for (Vertex w : t.neighbors(u)) {
      if (seen[w]) continue;
      seen[w] = 1;
      rt.parent[w] = u;
      rt.depth[w] = rt.depth[u] + 1;
      rt.children[u].push_back(w);
      rt.bfs_order.push_back(w);
    }
  }
  for (auto it = rt.bfs_order.rbegin(); it != rt.bfs_order.rend(); ++it) {
    if (rt.parent[*it] != kUnset) rt.subtree_size[rt.parent[*it]] += rt.subtree_size[*it];
  }
  return rt;
}

inline Tree::Tree(std::size_t n, std::vector<Edge> edges, std::optional<Vertex> root)
    : adj_(n), edges_(std::move(edges)), root_(root) {
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InputError("tree edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw InputError("tree edge is a loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& list : adj_) std::sort(list.begin(), list.end());
  // n-1 edges + connected <=> tree.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw InputError("edges do not form a connected tree");
  if (root_) {
    if (!contains(*root_)) throw InputError("root " + std::to_string(*root_) + " not in tree");
    rooting_ = std::make_shared<const Rooting>(root_at(*this, *root_));
  }
}

/// Tree induced on a connected vertex subset, with maps both ways.
struct SubTree {
  Tree tree;
  std::vector<Vertex> to_parent;    // local -> original
  std::vector<Vertex> from_parent;  // original -> local or kUnset
};

inline SubTree extract_subtree(const Tree& t, std::span<const Vertex> vertices,
                               std::optional<Vertex> root = std::nullopt) {
  if (vertices.empty()) throw InputError("cannot extract an empty subtree");
  SubTree st;
  st.from_parent.assign(t.order(), kUnset);
  st.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(st.to_parent.begin(), st.to_parent.end());
  for (std::size_t i = 0; i < st.to_parent.size(); ++i) {
    Vertex v = st.to_parent[i];
    if (!t.contains(v)) throw InputError("subtree vertex out of range");
    if (st.from_parent[v] != kUnset) throw InputError("duplicate subtree vertex");
    st.from_parent[v] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : t.edges()) {
    if (st.from_parent[u] != kUnset && st.from_parent[v] != kUnset) {
      edges.emplace_back(st.from_parent[u], st.from_parent[v]);
    }
  }
  std::optional<Vertex> local_root;
  if (root) {
    if (!t.contains(*root) || st.from_parent[*root] == kUnset) throw InputError("subtree root not in subset");
    local_root = st.from_parent[*root];
  }
  st.tree = Tree::from_edges(st.to_parent.size(), edges, local_root);
  return st;
}

// ---------------------------------------------------------------------------
// Tree text format:
//   n
//   u v      (n-1 lines)
//   root r   (optional)

inline Tree read_tree(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw InputError("empty tree input");
  auto header = detail::parse_ints(lines[0], 1);
  if (header[0] <= 0) throw InputError("tree must have a positive vertex count");
  std::optional<Vertex> root;
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ss(lines[i]);
    std::string first;
    ss >> first;
    if (first == "root") {
      if (root) throw InputError("duplicate root line");
      long long r = 0;
      if (!(ss >> r)) throw InputError("bad root line '" + lines[i] + "'");
      root = static_cast<Vertex>(r);
      continue;
    }
    auto uv = detail::parse_ints(lines[i], 2);
    edges.emplace_back(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
  }
  return Tree::from_edges(static_cast<std::size_t>(header[0]), edges, root);
}

inline Tree parse_tree(const std::string& text) {
  std::istringstream in(text);
  return read_tree(in);
}

inline void write_tree(std::ostream& out, const Tree& t) {
  out << t.order() << '\n';
  for (auto [u, v] : t.edges()) out << u << ' ' << v << '\n';
  if (t.root()) out << "root " << *t.root() << '\n';
}

inline std::string format_tree(const Tree& t) {
  std::ostringstream out;
  write_tree(out, t);
  return out.str();
}

}  // namespace treeembed
