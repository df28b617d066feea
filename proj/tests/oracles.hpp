#pragma once

// Independent reference implementations used by the tests. They share only the data
// types with the library and are written for clarity, not speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace oracle {

using treeembed::Edge;
using treeembed::Graph;
using treeembed::Tree;
using treeembed::Vertex;

/// Components of T minus the removed vertices, by plain DFS over the edge list.
inline std::vector<std::size_t> component_sizes(const Tree& t, const std::set<Vertex>& removed) {
  const std::size_t n = t.order();
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> sizes;
  for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
    if (removed.count(s) || comp[s] >= 0) continue;
    int id = static_cast<int>(sizes.size());
    sizes.push_back(0);
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++sizes[id];
      for (auto [a, b] : t.edges()) {
        Vertex w = a == u ? b : b == u ? a : treeembed::kUnset;
        if (w != treeembed::kUnset && !removed.count(w) && comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  return sizes;
}

inline std::size_t max_component(const Tree& t, Vertex z) {
  auto s = component_sizes(t, {z});
  return s.empty() ? 0 : *std::max_element(s.begin(), s.end());
}

/// Parent array of T rooted at r, by repeated relaxation over the edge list.
inline std::vector<Vertex> parents(const Tree& t, Vertex r) {
  std::vector<Vertex> par(t.order(), treeembed::kUnset);
  std::vector<bool> seen(t.order(), false);
  seen[r] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : t.edges()) {
      if (seen[a] && !seen[b]) {
        par[b] = a;
        seen[b] = true;
        changed = true;
      } else if (seen[b] && !seen[a]) {
        par[a] = b;
        seen[a] = true;
        changed = true;
      }
    }
  }
  return par;
}

inline std::size_t degree(const Tree& t, Vertex v) {
  std::size_t d = 0;
  for (auto [a, b] : t.edges()) d += (a == v) + (b == v);
  return d;
}

/// Checks every clause of the stable-set lemma literally.
inline bool stable_set_ok(const Tree& t, Vertex root, const std::vector<Vertex>& s) {
  auto par = parents(t, root);
  std::set<Vertex> in(s.begin(), s.end());
  if (in.size() != s.size() || in.count(root)) return false;
  for (auto [a, b] : t.edges()) {
    if (in.count(a) && in.count(b)) return false;
  }
  for (Vertex v : s) {
    std::size_t d = degree(t, v);
    if (d == 1) continue;
    if (d != 2) return false;
    Vertex p = par[v];
    if (p == root || degree(t, p) != 2) return false;
  }
  // (b): no child of a member is the parent of another member.
  for (Vertex v : s) {
    for (Vertex c = 0; c < static_cast<Vertex>(t.order()); ++c) {
      if (par[c] != v) continue;
      for (Vertex w : s) {
        if (par[w] == c) return false;
      }
    }
  }
  return true;
}

/// Maximum bipartite matching size by DP over subsets of right vertices (right <= 20).
inline std::size_t max_matching_dp(const std::vector<std::vector<Vertex>>& cand, std::size_t right) {
  // best[mask] after processing some left vertices: keep the set of reachable masks.
  std::set<std::uint32_t> reach{0};
  std::size_t best = 0;
  for (const auto& c : cand) {
    std::set<std::uint32_t> next = reach;
    for (std::uint32_t mask : reach) {
      for (Vertex r : c) {
        if (static_cast<std::size_t>(r) < right && !(mask >> r & 1U)) next.insert(mask | (1U << r));
      }
    }
    reach = std::move(next);
  }
  for (std::uint32_t mask : reach) best = std::max<std::size_t>(best, __builtin_popcount(mask));
  return best;
}

/// Edge count of G inside S, via explicit pair checks.
inline std::size_t inside_edges(const Graph& g, const std::vector<Vertex>& s) {
  std::size_t e = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) e += g.adjacent(s[i], s[j]) ? 1 : 0;
  return e;
}

/// Is the map an injective homomorphism of T into G? Written from the definition.
inline bool is_embedding(const Tree& t, const Graph& g, const std::vector<Vertex>& f) {
  if (f.size() != t.order()) return false;
  std::set<Vertex> img;
  for (Vertex x : f) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.order()) return false;
    img.insert(x);
  }
  if (img.size() != f.size()) return false;
  for (auto [a, b] : t.edges()) {
    bool hit = false;
    for (auto [u, v] : g.edges()) hit = hit || (u == f[a] && v == f[b]) || (u == f[b] && v == f[a]);
    if (!hit) return false;
  }
  return true;
}

/// Densest subset of size <= bound by enumerating all subsets (n <= 16). Returns the
/// best average degree as a (numerator, denominator) pair 2e / k.
inline std::pair<std::int64_t, std::int64_t> densest_by_subsets(const Graph& g, std::size_t bound) {
  const std::size_t n = g.order();
  std::int64_t bn = 0, bd = 1;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k > bound) continue;
    std::vector<Vertex> s;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
      if (mask >> v & 1U) s.push_back(v);
    auto e = static_cast<std::int64_t>(inside_edges(g, s));
    if (2 * e * bd > bn * static_cast<std::int64_t>(k)) {
      bn = 2 * e;
      bd = static_cast<std::int64_t>(k);
    }
  }
  return {bn, bd};
}

/// (1 - alpha^(1/k)) m for alpha = num/den, in long double.
inline long double alpha_bound(std::size_t m, std::int64_t num, std::int64_t den, int k) {
  long double a = static_cast<long double>(num) / static_cast<long double>(den);
  return (1.0L - std::pow(a, 1.0L / k)) * static_cast<long double>(m);
}

inline bool at_least(std::size_t d, long double bound) { return static_cast<long double>(d) + 1e-9L >= bound; }

/// Clique (m, alpha)-dense, straight from the definition.
inline bool clique_dense(const Graph& g, const std::vector<Vertex>& s, std::size_t m, std::int64_t num, std::int64_t den) {
  if (s.empty() || s.size() > m + 1) return false;
  for (Vertex v : s) {
    std::size_t d = 0;
    for (Vertex w : s) d += g.adjacent(v, w) ? 1 : 0;
    if (!at_least(d, alpha_bound(m, num, den, 14))) return false;
  }
  return true;
}

/// Bipartite (m, alpha)-dense for the host edges between the sides, from the definition.
inline bool bipartite_dense(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b, std::size_t m,
                            std::int64_t num, std::int64_t den) {
  if (a.empty() || b.empty() || a.size() > m || b.size() > m) return false;
  for (Vertex x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  std::vector<Vertex> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::map<Vertex, Vertex> root;
  for (Vertex v : all) root[v] = v;
  auto find = [&](Vertex v) {
    while (root[v] != v) v = root[v];
    return v;
  };
  for (Vertex x : a) {
    std::size_t d = 0;
    for (Vertex y : b) {
      if (!g.adjacent(x, y)) continue;
      ++d;
      root[find(x)] = find(y);
    }
    if (!at_least(d, alpha_bound(m, num, den, 14))) return false;
  }
  for (Vertex y : b) {
    std::size_t d = 0;
    for (Vertex x : a) d += g.adjacent(x, y) ? 1 : 0;
    if (!at_least(d, alpha_bound(m, num, den, 14))) return false;
  }
  Vertex r = find(all.front());
  for (Vertex v : all)
    if (find(v) != r) return false;
  return true;
}

/// Vertices outside `h` seeing at least (1 - alpha^(1/15)) m of `side`.
inline std::vector<Vertex> absorbable(const Graph& g, const std::vector<Vertex>& h, const std::vector<Vertex>& side,
                                      std::size_t m, std::int64_t num, std::int64_t den) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    if (std::find(h.begin(), h.end(), v) != h.end()) continue;
    std::size_t d = 0;
    for (Vertex w : side) d += g.adjacent(v, w) ? 1 : 0;
    if (at_least(d, alpha_bound(m, num, den, 15))) out.push_back(v);
  }
  return out;
}

/// Whether G contains K_{a,b}, by enumerating b-subsets as bitmasks (n <= 20).
inline bool has_biclique(const Graph& g, std::size_t a, std::size_t b) {
  const std::size_t n = g.order();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != b) continue;
    std::size_t common = 0;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      if (mask >> v & 1U) continue;
      bool all = true;
      for (Vertex u = 0; u < static_cast<Vertex>(n) && all; ++u)
        if ((mask >> u & 1U) && !g.adjacent(u, v)) all = false;
      common += all ? 1 : 0;
    }
    if (common >= a) return true;
  }
  return false;
}

}  // namespace oracle
