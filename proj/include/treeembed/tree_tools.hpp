#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

/// Vertex sets of the components of T - z (or of T minus several vertices).
inline std::vector<std::vector<Vertex>> components_without(const Tree& t, const std::vector<Vertex>& removed) {
  std::vector<std::uint8_t> seen(t.order(), 0);
  for (Vertex r : removed) seen[r] = 1;
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < static_cast<Vertex>(t.order()); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : t.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  // Largest first; equal sizes by smallest member.
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return comps;
}

struct SeparatorResult {
  Vertex z = 0;
  std::vector<std::vector<Vertex>> components;  // of T - z, largest first
};

/// Vertex minimising the largest component of T - z; smallest id among ties.
inline SeparatorResult separator(const Tree& t) {
  const std::size_t n = t.order();
  Rooting rt = root_at(t, 0);
  Vertex best = 0;
  std::size_t best_size = n;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    std::size_t worst = n - rt.subtree_size[v];
    for (Vertex c : rt.children[v]) worst = std::max(worst, rt.subtree_size[c]);
    if (worst < best_size) {
      best_size = worst;
      best = v;
    }
  }
  return {best, components_without(t, {best})};
}

/// For t' < n/2: NONE (nullopt) when every component of T - z is smaller than t'; otherwise
/// a vertex v whose removal leaves z in a component of at most n - t' vertices and
/// every other component below t'.
inline std::optional<Vertex> split_at_threshold(const Tree& t, Vertex z, std::size_t t_prime) {
  if (!t.contains(z)) throw InputError("split vertex not in tree");
  if (2 * t_prime >= t.order()) {
    throw InputError("threshold " + std::to_string(t_prime) + " must be below n/2 = " +
                     std::to_string(t.order()) + "/2");
  }
  auto comps = components_without(t, {z});
  if (comps.empty() || comps.front().size() < t_prime) return std::nullopt;
  const auto& big = comps.front();
  Rooting rt = root_at(t, z);
  Vertex pick = kUnset;
  for (Vertex v : big) {
    if (rt.subtree_size[v] < t_prime) continue;
    if (pick == kUnset || rt.depth[v] > rt.depth[pick]) pick = v;
  }
  return pick;
}

enum class StableTag { Leaf, Degree2 };

struct StableSetResult {
  std::vector<Vertex> vertices;  // ascending
  std::vector<StableTag> tags;   // parallel to vertices
  std::size_t leaf_count = 0;    // non-root leaves of T
  bool from_leaves = false;      // which of the two candidate sets won
};

/// Stable set of non-root leaves / degree-2 vertices with degree-2 non-root parents such
/// that no child of a member is the parent of another member.
inline StableSetResult stable_set_s(const Tree& t, Vertex root) {
  const std::size_t n = t.order();
  if (n < 2) throw InputError("stable set needs a tree with a non-root vertex");
  Rooting rt = root_at(t, root);
  auto low = [&](Vertex v) { return v != root && t.degree(v) <= 2; };

  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (v != root && t.is_leaf(v)) leaves.push_back(v);
  }

  // Chains: maximal downward paths of low vertices. Each starts at a low vertex whose
  // parent is not low and continues through its single child while that child is low.
  std::vector<Vertex> picks;
  for (Vertex v : rt.bfs_order) {
    if (!low(v) || low(rt.parent[v])) continue;
    Vertex cur = v;
    for (std::size_t pos = 1; cur != kUnset && low(cur); ++pos) {
      if (pos % 3 == 2) picks.push_back(cur);
      cur = rt.children[cur].empty() ? kUnset : rt.children[cur].front();
    }
  }

  StableSetResult out;
  out.leaf_count = leaves.size();
  out.from_leaves = leaves.size() >= picks.size();
  out.vertices = out.from_leaves ? leaves : picks;
  std::sort(out.vertices.begin(), out.vertices.end());
  for (Vertex v : out.vertices) out.tags.push_back(t.is_leaf(v) ? StableTag::Leaf : StableTag::Degree2);
  return out;
}

struct MatchedSubtree {
  std::vector<Vertex> vertices;  // ascending
  std::vector<Edge> matching;    // in growth order
};

struct Leafy {
  std::size_t leaf_count = 0;
};

using MatchedSubtreeResult = std::variant<MatchedSubtree, Leafy>;

/// 2*ell vertex subtree through v with a perfect matching, grown greedily by adjacent
/// pairs; when growth stalls, every vertex outside is a leaf and the leaf count is returned.
inline MatchedSubtreeResult matched_subtree(const Tree& t, Vertex v, std::size_t ell) {
  const std::size_t n = t.order();
  if (!t.contains(v)) throw InputError("matched-subtree vertex not in tree");
  if (ell < 1 || 2 * ell > n) {
    throw InputError("ell=" + std::to_string(ell) + " outside [1, n/2] for n=" + std::to_string(n));
  }
  std::vector<std::uint8_t> in(n, 0);
  MatchedSubtree sub;
  auto add_pair = [&](Vertex a, Vertex b) {
    in[a] = in[b] = 1;
    sub.vertices.push_back(a);
    sub.vertices.push_back(b);
    sub.matching.emplace_back(a, b);
  };
  add_pair(v, t.neighbors(v).front());
  while (sub.vertices.size() < 2 * ell) {
    Vertex a = kUnset, b = kUnset;
    for (Vertex x = 0; x < static_cast<Vertex>(n) && a == kUnset; ++x) {
      if (in[x]) continue;
      bool touches = false;
      Vertex outside = kUnset;
      for (Vertex w : t.neighbors(x)) {
        if (in[w]) {
          touches = true;
        } else if (outside == kUnset) {
          outside = w;
        }
      }
      if (touches && outside != kUnset) {
        a = x;
        b = outside;
      }
    }
    if (a == kUnset) return Leafy{t.leaves().size()};
    add_pair(a, b);
  }
  std::sort(sub.vertices.begin(), sub.vertices.end());
  return sub;
}

struct Bipartition {
  std::vector<Vertex> c;  // smaller side
  std::vector<Vertex> d;
  std::vector<std::uint8_t> color;  // 1 for members of c
};

inline Bipartition bipartition(const Tree& t) {
  Rooting rt = root_at(t, 0);
  std::vector<Vertex> even, odd;
  for (Vertex v = 0; v < static_cast<Vertex>(t.order()); ++v) (rt.depth[v] % 2 ? odd : even).push_back(v);
  Bipartition b;
  // even holds vertex 0, so it becomes d unless strictly smaller.
  if (even.size() < odd.size()) {
    b.c = std::move(even);
    b.d = std::move(odd);
  } else {
    b.c = std::move(odd);
    b.d = std::move(even);
  }
  b.color.assign(t.order(), 0);
  for (Vertex v : b.c) b.color[v] = 1;
  return b;
}

struct LeafParent {
  Vertex parent = 0;
  std::vector<Vertex> leaves;  // ascending
};

using GoodOrdering = std::vector<LeafParent>;

/// Parents of the leaves in L, most leaf children first, then by id.
inline GoodOrdering good_ordering(const Tree& t, const VertexSet& leaf_set) {
  std::vector<std::vector<Vertex>> by_parent(t.order());
  for (Vertex l : leaf_set) {
    if (!t.contains(l)) throw InputError("leaf set vertex out of range");
    if (!t.is_leaf(l)) throw InputError("vertex " + std::to_string(l) + " in leaf set is not a leaf");
    by_parent[t.neighbors(l).front()].push_back(l);
  }
  GoodOrdering out;
  for (Vertex p = 0; p < static_cast<Vertex>(t.order()); ++p) {
    if (!by_parent[p].empty()) out.push_back({p, by_parent[p]});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LeafParent& a, const LeafParent& b) { return a.leaves.size() > b.leaves.size(); });
  return out;
}

struct ComponentSplit {
  std::vector<std::vector<Vertex>> c1;  // the larger union
  std::vector<std::vector<Vertex>> c2;
  std::size_t size1 = 0;
  std::size_t size2 = 0;
};

/// Groups the components of T - z into two sides, each holding between
/// floor((n-1)/3) and ceil(2(n-1)/3) vertices.
inline ComponentSplit component_split(const Tree& t, Vertex z) {
  const std::size_t n = t.order();
  if (n < 4) throw InputError("component split needs at least 4 vertices");
  auto comps = components_without(t, {z});
  const std::size_t low = (n - 1) / 3;
  std::vector<std::vector<Vertex>> packed, rest;
  std::size_t packed_size = 0;
  for (auto& c : comps) {
    if (packed_size < low) {
      packed_size += c.size();
      packed.push_back(std::move(c));
    } else {
      rest.push_back(std::move(c));
    }
  }
  const std::size_t rest_size = n - 1 - packed_size;
  const std::size_t high = (2 * (n - 1) + 2) / 3;
  if (packed_size > high || rest_size < low) throw InputError("vertex is not a separator of the tree");
  ComponentSplit s;
  if (packed_size >= rest_size) {
    s.c1 = std::move(packed);
    s.c2 = std::move(rest);
  } else {
    s.c1 = std::move(rest);
    s.c2 = std::move(packed);
  }
  s.size1 = std::max(packed_size, rest_size);
  s.size2 = std::min(packed_size, rest_size);
  return s;
}

struct LeafProfile {
  std::size_t total_leaves = 0;
  std::size_t max_leaf_children = 0;
  Vertex argmax = 0;
  std::vector<std::size_t> leaf_children;  // per vertex: number of leaf neighbours
};

inline LeafProfile leaf_profile(const Tree& t) {
  LeafProfile p;
  p.leaf_children.assign(t.order(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(t.order()); ++v) {
    if (!t.is_leaf(v)) continue;
    ++p.total_leaves;
    ++p.leaf_children[t.neighbors(v).front()];
  }
  for (Vertex v = 0; v < static_cast<Vertex>(t.order()); ++v) {
    if (p.leaf_children[v] > p.max_leaf_children) {
      p.max_leaf_children = p.leaf_children[v];
      p.argmax = v;
    }
  }
  return p;
}

/// Leaf children of each vertex under a rooting (leaves other than the root).
inline std::vector<std::vector<Vertex>> leaf_children(const Tree& t, const Rooting& rt) {
  std::vector<std::vector<Vertex>> out(t.order());
  for (Vertex v = 0; v < static_cast<Vertex>(t.order()); ++v) {
    if (v != rt.root && rt.children[v].empty()) out[rt.parent[v]].push_back(v);
  }
  return out;
}

}  // namespace treeembed
