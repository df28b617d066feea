#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Host graph families

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Graph::from_edges(n, e);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u + 1 < static_cast<Vertex>(n); ++u) e.emplace_back(u, u + 1);
  return Graph::from_edges(n, e);
}

inline Graph empty_graph(std::size_t n) { return Graph(n); }

/// Sides 0..a-1 and a..a+b-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < static_cast<Vertex>(a); ++u)
    for (Vertex v = 0; v < static_cast<Vertex>(b); ++v) e.emplace_back(u, static_cast<Vertex>(a) + v);
  return Graph::from_edges(a + b, e);
}

/// Outer cycle 0..4, spokes i -> i+5, inner pentagram on 5..9.
inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph::from_edges(10, e);
}

/// Hamiltonian cycle 0..n-1 plus chords i -> i + shifts[i mod |shifts|] (LCF notation).
inline Graph lcf_graph(std::size_t n, const std::vector<int>& shifts) {
  std::vector<Edge> e;
  auto sn = static_cast<int>(n);
  for (int i = 0; i < sn; ++i) e.emplace_back(i, (i + 1) % sn);
  for (int i = 0; i < sn; ++i) {
    int j = ((i + shifts[static_cast<std::size_t>(i) % shifts.size()]) % sn + sn) % sn;
    if (i < j) e.emplace_back(i, j);
  }
  return Graph::from_edges(n, e);
}

/// Tutte-Coxeter graph: 3-regular, 30 vertices, girth 8.
inline Graph tutte_coxeter_graph() { return lcf_graph(30, {-13, -9, 7, -7, 9, 13}); }

/// Disjoint union, second graph's ids shifted past the first's.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto e = a.edges();
  auto off = static_cast<Vertex>(a.order());
  for (auto [u, v] : b.edges()) e.emplace_back(u + off, v + off);
  return Graph::from_edges(a.order() + b.order(), e);
}

/// Adds one vertex (id n) adjacent to everything.
inline Graph add_universal(const Graph& g) {
  auto e = g.edges();
  auto u = static_cast<Vertex>(g.order());
  for (Vertex v = 0; v < u; ++v) e.emplace_back(v, u);
  return Graph::from_edges(g.order() + 1, e);
}

/// g with the listed edges removed (absent ones are ignored).
inline Graph remove_edges(const Graph& g, const std::vector<Edge>& drop) {
  std::vector<Edge> keep;
  for (auto [u, v] : g.edges()) {
    bool gone = false;
    for (auto [a, b] : drop) gone = gone || (a == u && b == v) || (a == v && b == u);
    if (!gone) keep.emplace_back(u, v);
  }
  return Graph::from_edges(g.order(), keep);
}

/// K_n minus the matching {0,1},{2,3},... on the vertices in `among` (consecutive pairs).
inline Graph complete_minus_matching(std::size_t n, const std::vector<Vertex>& among) {
  std::vector<Edge> drop;
  for (std::size_t i = 0; i + 1 < among.size(); i += 2) drop.emplace_back(among[i], among[i + 1]);
  HostMask dropped(n * n, 0);
  for (auto [u, v] : drop) dropped[u * n + v] = dropped[v * n + u] = 1;
  std::vector<Edge> e;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v)
      if (!dropped[u * n + v]) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph complete_minus_perfect_matching(std::size_t n) {
  std::vector<Vertex> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
  return complete_minus_matching(n, all);
}

// ---------------------------------------------------------------------------
// Tree families

inline Tree path_tree(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u + 1 < static_cast<Vertex>(n); ++u) e.emplace_back(u, u + 1);
  return Tree::from_edges(n, e);
}

/// K_{1,leaves} with center 0.
inline Tree star_tree(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= static_cast<Vertex>(leaves); ++v) e.emplace_back(0, v);
  return Tree::from_edges(leaves + 1, e);
}

/// Three stars on k vertices joined through a new vertex 0 to their centers. Star i has
/// center 1+i*k and leaves 2+i*k .. i*k+k.
inline Tree spider_tree(std::size_t k) {
  if (k < 1) throw InputError("spider needs k >= 1");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 3; ++i) {
    auto c = static_cast<Vertex>(1 + i * k);
    e.emplace_back(0, c);
    for (std::size_t j = 1; j < k; ++j) e.emplace_back(c, c + static_cast<Vertex>(j));
  }
  return Tree::from_edges(3 * k + 1, e);
}

/// Spine 0..s-1 with leaves[i] pendant leaves on spine vertex i.
inline Tree caterpillar(const std::vector<std::size_t>& leaves) {
  std::vector<Edge> e;
  auto s = static_cast<Vertex>(leaves.size());
  for (Vertex i = 0; i + 1 < s; ++i) e.emplace_back(i, i + 1);
  Vertex next = s;
  for (Vertex i = 0; i < s; ++i)
    for (std::size_t j = 0; j < leaves[i]; ++j) e.emplace_back(i, next++);
  return Tree::from_edges(static_cast<std::size_t>(next), e);
}

/// Uniform labelled tree via a random Pruefer sequence.
inline Tree random_tree(std::size_t n, Rng& rng) {
  if (n == 0) throw InputError("tree must have at least one vertex");
  if (n == 1) return Tree::single_vertex();
  if (n == 2) return Tree::from_edges(2, {{0, 1}});
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = pick(rng);
  std::vector<std::size_t> deg(n, 1);
  for (Vertex c : code) ++deg[c];
  std::vector<Edge> e;
  for (Vertex c : code) {
    Vertex leaf = 0;
    while (deg[leaf] != 1) ++leaf;
    e.emplace_back(leaf, c);
    --deg[leaf];
    --deg[c];
  }
  Vertex a = kUnset, b = kUnset;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (deg[v] == 1) (a == kUnset ? a : b) = v;
  }
  e.emplace_back(a, b);
  return Tree::from_edges(n, e);
}

/// Random recursive tree: vertex i attaches to a uniform earlier vertex. Shallower and
/// leafier than Pruefer trees; used to diversify fuzzing.
inline Tree random_recursive_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < static_cast<Vertex>(n); ++v) {
    std::uniform_int_distribution<Vertex> pick(0, v - 1);
    e.emplace_back(pick(rng), v);
  }
  return Tree::from_edges(n, e);
}

/// Random tree in which every vertex has at most one leaf child: a Pruefer tree on
/// ceil(n/2) vertices with every edge subdivided, one leaf extended when n is even.
inline Tree sparse_leaf_tree(std::size_t n, Rng& rng) {
  if (n <= 4) return path_tree(std::max<std::size_t>(n, 1));
  const std::size_t k = (n + 1) / 2;
  Tree base = random_tree(k, rng);
  std::vector<Edge> e;
  auto next = static_cast<Vertex>(k);
  for (auto [u, v] : base.edges()) {
    e.emplace_back(u, next);
    e.emplace_back(next, v);
    ++next;
  }
  if (static_cast<std::size_t>(next) < n) {
    Vertex leaf = 0;
    while (!base.is_leaf(leaf)) ++leaf;
    e.emplace_back(leaf, next++);
  }
  return Tree::from_edges(n, e);
}

/// G(n, p).
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

/// Rejection-sampled G(n, p) with minimum degree >= delta_min and maximum degree
/// >= Delta_min; p is redrawn per attempt from [delta_min/(n-1), 1].
inline Graph gen_random_host(std::size_t n, std::size_t delta_min, std::size_t Delta_min, std::uint64_t seed) {
  if (n == 0) throw InputError("host needs at least one vertex");
  if (delta_min >= n) {
    throw InputError("minimum degree " + std::to_string(delta_min) + " impossible on " + std::to_string(n) +
                     " vertices (max " + std::to_string(n - 1) + ")");
  }
  if (Delta_min >= n) {
    throw InputError("maximum degree " + std::to_string(Delta_min) + " impossible on " + std::to_string(n) +
                     " vertices (max " + std::to_string(n - 1) + ")");
  }
  Rng rng(seed);
  double lo = n > 1 ? static_cast<double>(delta_min) / static_cast<double>(n - 1) : 1.0;
  std::uniform_real_distribution<double> pdist(lo, 1.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Graph g = random_graph(n, pdist(rng), rng);
    auto prof = degree_profile(g);
    if (prof.min_degree >= delta_min && prof.max_degree >= Delta_min) return g;
  }
  throw InputError("no graph with the requested degree bounds after 10000 attempts");
}

// ---------------------------------------------------------------------------
// Tightness constructions

enum class ExtremalKind { TwinCliques, Bipartite };

struct ExtremalInstance {
  std::size_t k = 0;
  ExtremalKind kind = ExtremalKind::TwinCliques;
  Tree tree;
  Graph host;
  bool expected_embeddable = false;
};

/// The spider on 3k edges together with a host of minimum degree 2k-1 and a universal
/// vertex. TwinCliques: two K_{2k-1} on 0..2k-2 and 2k-1..4k-3, universal 4k-2.
/// Bipartite: K_{2k-2,2k-2} with sides 0..2k-3 and 2k-2..4k-5, universal 4k-4.
inline ExtremalInstance gen_extremal(std::size_t k, ExtremalKind kind) {
  ExtremalInstance inst;
  inst.k = k;
  inst.kind = kind;
  if (kind == ExtremalKind::TwinCliques) {
    if (k < 2) {
      throw InputError("twin-clique construction needs k >= 2: k=" + std::to_string(k) + " gives cliques K_" +
                       std::to_string(2 * k - 1 > 0 ? 2 * k - 1 : 0) + " and no room for minimum degree 2k-1");
    }
    inst.host = add_universal(disjoint_union(complete_graph(2 * k - 1), complete_graph(2 * k - 1)));
  } else {
    if (k < 4) {
      throw InputError("bipartite construction needs k >= 4: maximum degree 4k-4=" + std::to_string(4 * k - 4) +
                       " must reach m=3k=" + std::to_string(3 * k));
    }
    inst.host = add_universal(complete_bipartite(2 * k - 2, 2 * k - 2));
  }
  inst.tree = spider_tree(k);
  return inst;
}

}  // namespace treeembed
