#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "treeembed/dense_fill.hpp"
#include "treeembed/embed_core.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/rational.hpp"
#include "treeembed/sparse_path.hpp"
#include "treeembed/subgraph_search.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

namespace treeembed {

enum class DenseKind { Clique, Bipartite };

inline const char* to_string(DenseKind k) { return k == DenseKind::Clique ? "CLIQUE_DENSE" : "BIPARTITE_DENSE"; }

/// alpha^(1/k) in floating point.
inline double alpha_root(const Rational& alpha, double k) { return std::pow(to_double(alpha), 1.0 / k); }

/// Integer degree thresholds for a given m and alpha, frozen once.
struct DenseThresholds {
  std::size_t m = 0;
  Rational alpha{1, 5};
  std::int64_t core_degree = 1;  // ceil((1 - alpha^(1/14)) m)
  std::int64_t absorb = 1;       // ceil((1 - alpha^(1/15)) m)
};

inline void check_alpha(const Rational& alpha) {
  if (alpha <= Rational(0) || alpha >= Rational(1)) throw InputError("alpha must lie in (0, 1), got " + to_string(alpha));
}

inline DenseThresholds dense_thresholds(std::size_t m, const Rational& alpha) {
  check_alpha(alpha);
  if (m < 1) throw InputError("m must be at least 1");
  DenseThresholds th;
  th.m = m;
  th.alpha = alpha;
  const double md = static_cast<double>(m);
  // Both bounds are strictly positive reals, so at least 1 as integers.
  th.core_degree = std::max<std::int64_t>(1, frozen_ceil((1 - alpha_root(alpha, 14)) * md));
  th.absorb = std::max<std::int64_t>(1, frozen_ceil((1 - alpha_root(alpha, 15)) * md));
  return th;
}

/// A clique or bipartite (m, alpha)-dense core together with its expansion. For the
/// clique kind the side fields stay empty.
struct DenseWitness {
  DenseKind kind = DenseKind::Clique;
  VertexSet core;
  BipartitePair core_sides;
  VertexSet expansion;
  BipartitePair expansion_sides;
  bool expanded = false;
  std::size_t m = 0;
  Rational alpha{1, 5};
  std::size_t core_min_degree = 0;
};

/// Crossing degree of v into the mask of the opposite side.
inline std::size_t cross_degree(const Graph& g, Vertex v, const HostMask& other) { return degree_into(g, v, other); }

/// Whether the bipartite graph of host edges between the sides is connected.
inline bool cross_connected(const Graph& g, const BipartitePair& p) {
  if (p.order() == 0) return false;
  HostMask in_a = p.a.mask(g.order()), in_b = p.b.mask(g.order());
  HostMask seen(g.order(), 0);
  std::vector<Vertex> stack{p.a.empty() ? p.b[0] : p.a[0]};
  seen[stack.back()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    const HostMask& other = in_a[v] ? in_b : in_a;
    for (Vertex w : g.neighbors(v)) {
      if (other[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == p.order();
}

/// Empty when S is clique (m, alpha)-dense in g, otherwise the failed condition.
inline std::string clique_core_failure(const Graph& g, const VertexSet& s, const DenseThresholds& th) {
  if (s.empty()) return "empty";
  if (s.size() > th.m + 1) return "more than m+1 vertices";
  HostMask mask = s.mask(g.order());
  for (Vertex v : s) {
    if (static_cast<std::int64_t>(degree_into(g, v, mask)) < th.core_degree) {
      return "vertex " + std::to_string(v) + " has degree below " + std::to_string(th.core_degree);
    }
  }
  return "";
}

/// Empty when the sides span a bipartite (m, alpha)-dense subgraph, otherwise the
/// failed condition.
inline std::string bipartite_core_failure(const Graph& g, const BipartitePair& p, const DenseThresholds& th) {
  if (p.a.empty() || p.b.empty()) return "empty side";
  if (p.a.size() > th.m || p.b.size() > th.m) return "a side has more than m vertices";
  HostMask in_a = p.a.mask(g.order()), in_b = p.b.mask(g.order());
  for (Vertex v : p.a) {
    if (static_cast<std::int64_t>(cross_degree(g, v, in_b)) < th.core_degree) {
      return "vertex " + std::to_string(v) + " has crossing degree below " + std::to_string(th.core_degree);
    }
  }
  for (Vertex v : p.b) {
    if (static_cast<std::int64_t>(cross_degree(g, v, in_a)) < th.core_degree) {
      return "vertex " + std::to_string(v) + " has crossing degree below " + std::to_string(th.core_degree);
    }
  }
  if (!cross_connected(g, p)) return "not connected";
  return "";
}

struct WitnessCheck {
  bool core_ok = false;
  bool contains_core = false;
  bool closed = false;  // no outside vertex still qualifies for absorption
  std::vector<std::string> failures;
  bool ok(bool need_closure) const { return core_ok && contains_core && (closed || !need_closure); }
};

/// Checks a witness against the definitions: the core condition, core inside the
/// expansion, and closure of the expansion.
inline WitnessCheck check_witness(const Graph& g, const DenseWitness& w) {
  DenseThresholds th = dense_thresholds(w.m, w.alpha);
  WitnessCheck c;
  for (Vertex v : w.expansion)
    if (!g.contains(v)) throw InputError("witness vertex out of range");
  std::string why = w.kind == DenseKind::Clique ? clique_core_failure(g, w.core, th)
                                                : bipartite_core_failure(g, w.core_sides, th);
  c.core_ok = why.empty();
  if (!c.core_ok) c.failures.push_back("core: " + why);
  c.contains_core = std::includes(w.expansion.begin(), w.expansion.end(), w.core.begin(), w.core.end());
  if (w.kind == DenseKind::Bipartite) {
    c.contains_core = c.contains_core &&
                      std::includes(w.expansion_sides.a.begin(), w.expansion_sides.a.end(), w.core_sides.a.begin(),
                                    w.core_sides.a.end()) &&
                      std::includes(w.expansion_sides.b.begin(), w.expansion_sides.b.end(), w.core_sides.b.begin(),
                                    w.core_sides.b.end());
  }
  if (!c.contains_core) c.failures.push_back("expansion does not contain the core");
  c.closed = true;
  HostMask in_h = w.expansion.mask(g.order());
  HostMask in_a = w.expansion_sides.a.mask(g.order()), in_b = w.expansion_sides.b.mask(g.order());
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()) && c.closed; ++v) {
    if (in_h[v]) continue;
    bool qualifies = w.kind == DenseKind::Clique
                         ? static_cast<std::int64_t>(degree_into(g, v, in_h)) >= th.absorb
                         : static_cast<std::int64_t>(degree_into(g, v, in_a)) >= th.absorb ||
                               static_cast<std::int64_t>(degree_into(g, v, in_b)) >= th.absorb;
    if (qualifies) {
      c.closed = false;
      c.failures.push_back("vertex " + std::to_string(v) + " outside the expansion still qualifies");
    }
  }
  return c;
}

namespace detail {

/// Drops minimum-degree vertices (smallest id on ties) until the induced minimum degree
/// reaches `need` and at most `cap` vertices remain.
inline std::vector<Vertex> peel_clique(const Graph& g, std::vector<Vertex> s, std::int64_t need, std::size_t cap) {
  HostMask in(g.order(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<std::int64_t> deg(g.order(), 0);
  for (Vertex v : s) deg[v] = static_cast<std::int64_t>(degree_into(g, v, in));
  std::sort(s.begin(), s.end());
  while (!s.empty()) {
    auto it = std::min_element(s.begin(), s.end(), [&](Vertex a, Vertex b) { return deg[a] < deg[b]; });
    if (deg[*it] >= need && s.size() <= cap) break;
    Vertex v = *it;
    s.erase(it);
    in[v] = 0;
    for (Vertex w : g.neighbors(v))
      if (in[w]) --deg[w];
  }
  return s;
}

/// Drops side vertices whose crossing degree is below `need`, then the weakest vertex of
/// any side above `cap`, until stable; keeps the crossing component of `anchor` (or of
/// the smallest remaining vertex).
inline std::optional<BipartitePair> peel_bipartite(const Graph& g, const std::vector<Vertex>& a0,
                                                   const std::vector<Vertex>& b0, std::int64_t need, std::size_t cap,
                                                   Vertex anchor) {
  HostMask in_a(g.order(), 0), in_b(g.order(), 0);
  for (Vertex v : a0) in_a[v] = 1;
  for (Vertex v : b0)
    if (!in_a[v]) in_b[v] = 1;
  auto members = [&](const HostMask& m) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
      if (m[v]) out.push_back(v);
    return out;
  };
  for (;;) {
    std::vector<Vertex> a = members(in_a), b = members(in_b);
    Vertex drop = kUnset;
    std::int64_t low = 0;
    auto scan = [&](const std::vector<Vertex>& side, const HostMask& other, bool only_weak) {
      for (Vertex v : side) {
        auto d = static_cast<std::int64_t>(cross_degree(g, v, other));
        if (only_weak && d >= need) continue;
        if (drop == kUnset || d < low) {
          drop = v;
          low = d;
        }
      }
    };
    scan(a, in_b, true);
    scan(b, in_a, true);
    if (drop == kUnset && a.size() > cap) scan(a, in_b, false);
    if (drop == kUnset && b.size() > cap) scan(b, in_a, false);
    if (drop == kUnset) break;
    in_a[drop] = in_b[drop] = 0;
  }
  std::vector<Vertex> a = members(in_a), b = members(in_b);
  if (a.empty() || b.empty()) return std::nullopt;
  Vertex start = anchor != kUnset && (in_a[anchor] || in_b[anchor]) ? anchor : std::min(a.front(), b.front());
  HostMask seen(g.order(), 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    const HostMask& other = in_a[v] ? in_b : in_a;
    for (Vertex w : g.neighbors(v)) {
      if (other[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<Vertex> ca, cb;
  for (Vertex v : a)
    if (seen[v]) ca.push_back(v);
  for (Vertex v : b)
    if (seen[v]) cb.push_back(v);
  if (ca.empty() || cb.empty()) return std::nullopt;
  return BipartitePair(VertexSet(ca), VertexSet(cb));
}

inline std::size_t min_degree_in(const Graph& g, const VertexSet& s) {
  HostMask mask = s.mask(g.order());
  std::size_t d = s.empty() ? 0 : g.order();
  for (Vertex v : s) d = std::min(d, degree_into(g, v, mask));
  return d;
}

inline std::size_t min_cross_degree(const Graph& g, const BipartitePair& p) {
  HostMask in_a = p.a.mask(g.order()), in_b = p.b.mask(g.order());
  std::size_t d = p.order() == 0 ? 0 : g.order();
  for (Vertex v : p.a) d = std::min(d, cross_degree(g, v, in_b));
  for (Vertex v : p.b) d = std::min(d, cross_degree(g, v, in_a));
  return d;
}

inline DenseWitness clique_witness(const Graph& g, VertexSet s, const DenseThresholds& th) {
  DenseWitness w;
  w.kind = DenseKind::Clique;
  w.core_min_degree = min_degree_in(g, s);
  w.core = s;
  w.expansion = std::move(s);
  w.m = th.m;
  w.alpha = th.alpha;
  return w;
}

inline DenseWitness bipartite_witness(const Graph& g, BipartitePair p, const DenseThresholds& th) {
  DenseWitness w;
  w.kind = DenseKind::Bipartite;
  w.core_min_degree = min_cross_degree(g, p);
  std::vector<Vertex> all(p.a.begin(), p.a.end());
  all.insert(all.end(), p.b.begin(), p.b.end());
  w.core = VertexSet(all);
  w.expansion = w.core;
  w.core_sides = p;
  w.expansion_sides = std::move(p);
  w.m = th.m;
  w.alpha = th.alpha;
  return w;
}

/// Maps a witness found in an induced subgraph back to parent ids.
inline DenseWitness lift(const DenseWitness& w, const std::vector<Vertex>& to_parent) {
  auto map = [&](const VertexSet& s) {
    std::vector<Vertex> out;
    for (Vertex v : s) out.push_back(to_parent[v]);
    return VertexSet(out);
  };
  DenseWitness out = w;
  out.core = map(w.core);
  out.expansion = map(w.expansion);
  if (w.kind == DenseKind::Bipartite) {
    out.core_sides = BipartitePair(map(w.core_sides.a), map(w.core_sides.b));
    out.expansion_sides = BipartitePair(map(w.expansion_sides.a), map(w.expansion_sides.b));
  }
  return out;
}

}  // namespace detail

/// Largest small side accepted by find_biclique.
inline constexpr std::size_t kBicliqueSmallSideLimit = 4;

/// A K_{a,b} subgraph (sides need not be independent): b-subsets in lexicographic order,
/// the first whose common neighbourhood has at least a vertices. The a-side comes first,
/// holding the a smallest common neighbours.
inline std::optional<BipartitePair> find_biclique(const Graph& g, std::size_t a, std::size_t b) {
  if (b < 1 || a < b) throw InputError("biclique search needs a >= b >= 1");
  if (b > kBicliqueSmallSideLimit) {
    throw SizeError("biclique search supports a small side of at most " + std::to_string(kBicliqueSmallSideLimit) +
                    ", got " + std::to_string(b));
  }
  std::vector<Vertex> pick;
  std::optional<BipartitePair> found;
  auto rec = [&](auto&& self, Vertex from, const std::vector<Vertex>& common) -> void {
    if (found || common.size() < a) return;
    if (pick.size() == b) {
      found = BipartitePair(VertexSet(std::vector<Vertex>(common.begin(), common.begin() + static_cast<long>(a))),
                            VertexSet(pick));
      return;
    }
    for (Vertex v = from; v < static_cast<Vertex>(g.order()) && !found; ++v) {
      std::vector<Vertex> next;
      auto nb = g.neighbors(v);
      std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
      pick.push_back(v);
      self(self, v + 1, next);
      pick.pop_back();
    }
  };
  std::vector<Vertex> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  rec(rec, 0, all);
  return found;
}

struct SeedSearch {
  std::optional<DenseWitness> witness;
  std::size_t candidates = 0;
  std::vector<std::string> rejected;  // one line per candidate that failed its definition
};

/// Direct search for a clique or bipartite (m, alpha)-dense core. For each vertex u in
/// turn it peels the closed neighbourhood of u as a clique candidate, then the pair
/// (vertices seeing much of N(u), N(u)) as a bipartite candidate; finally the peeled
/// densest small subgraph. The first candidate passing its definition is returned.
inline SeedSearch find_dense_seed(const Graph& g, std::size_t m, const Rational& alpha) {
  if (m < 2) throw InputError("dense seed search needs m >= 2");
  DenseThresholds th = dense_thresholds(m, alpha);
  SeedSearch out;
  auto reject = [&](const std::string& what, const std::string& why) { out.rejected.push_back(what + ": " + why); };
  for (Vertex u = 0; u < static_cast<Vertex>(g.order()); ++u) {
    std::vector<Vertex> ball(g.neighbors(u).begin(), g.neighbors(u).end());
    ball.push_back(u);
    ++out.candidates;
    auto kept = detail::peel_clique(g, ball, th.core_degree, m + 1);
    std::string label = "N[" + std::to_string(u) + "] clique";
    if (kept.empty()) {
      reject(label, "nothing left after peeling");
    } else {
      VertexSet s(kept);
      std::string why = clique_core_failure(g, s, th);
      if (why.empty()) {
        out.witness = detail::clique_witness(g, std::move(s), th);
        return out;
      }
      reject(label, why);
    }

    std::vector<Vertex> b0(g.neighbors(u).begin(), g.neighbors(u).end());
    HostMask in_b0(g.order(), 0);
    for (Vertex v : b0) in_b0[v] = 1;
    std::vector<Vertex> a0;
    for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x) {
      if (!in_b0[x] && static_cast<std::int64_t>(degree_into(g, x, in_b0)) >= th.core_degree) a0.push_back(x);
    }
    ++out.candidates;
    label = "N(" + std::to_string(u) + ") bipartite";
    auto pair = detail::peel_bipartite(g, a0, b0, th.core_degree, m, u);
    if (!pair) {
      reject(label, "a side vanished while peeling");
      continue;
    }
    std::string why = bipartite_core_failure(g, *pair, th);
    if (why.empty()) {
      out.witness = detail::bipartite_witness(g, std::move(*pair), th);
      return out;
    }
    reject(label, why);
  }
  if (g.order() > 0) {
    ++out.candidates;
    DenseSubgraph d = densest_small_subgraph(g, m + 1, SearchMode::Peeling);
    auto kept = detail::peel_clique(g, d.vertices.ids(), th.core_degree, m + 1);
    if (kept.empty()) {
      reject("densest clique", "nothing left after peeling");
    } else {
      VertexSet s(kept);
      std::string why = clique_core_failure(g, s, th);
      if (why.empty()) {
        out.witness = detail::clique_witness(g, std::move(s), th);
        return out;
      }
      reject("densest clique", why);
    }
  }
  return out;
}

/// Grows the witness's expansion to its fixpoint. Each round adds, by ascending id, every
/// outside vertex seeing at least (1 - alpha^(1/15)) m vertices of the expansion as it
/// stood at the start of the round; in the bipartite case of one side, joining the other.
inline DenseWitness expand(const DenseWitness& d, const Graph& g) {
  DenseThresholds th = dense_thresholds(d.m, d.alpha);
  for (Vertex v : d.expansion)
    if (!g.contains(v)) throw InputError("witness vertex out of range");
  DenseWitness w = d;
  w.expanded = true;
  if (d.kind == DenseKind::Clique) {
    HostMask in = d.expansion.mask(g.order());
    for (;;) {
      std::vector<Vertex> add;
      for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
        if (!in[v] && static_cast<std::int64_t>(degree_into(g, v, in)) >= th.absorb) add.push_back(v);
      }
      if (add.empty()) break;
      for (Vertex v : add) in[v] = 1;
    }
    w.expansion = VertexSet::from_mask(in);
    return w;
  }
  HostMask in_a = d.expansion_sides.a.mask(g.order()), in_b = d.expansion_sides.b.mask(g.order());
  for (;;) {
    std::vector<Vertex> to_a, to_b;
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
      if (in_a[v] || in_b[v]) continue;
      if (static_cast<std::int64_t>(degree_into(g, v, in_a)) >= th.absorb) {
        to_b.push_back(v);
      } else if (static_cast<std::int64_t>(degree_into(g, v, in_b)) >= th.absorb) {
        to_a.push_back(v);
      }
    }
    if (to_a.empty() && to_b.empty()) break;
    for (Vertex v : to_a) in_a[v] = 1;
    for (Vertex v : to_b) in_b[v] = 1;
  }
  w.expansion_sides = BipartitePair(VertexSet::from_mask(in_a), VertexSet::from_mask(in_b));
  HostMask all = in_a;
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = all[i] | in_b[i];
  w.expansion = VertexSet::from_mask(all);
  return w;
}

struct DecompositionPiece {
  DenseWitness witness;      // ids of the full graph
  std::size_t max_into = 0;  // most neighbours a vertex outside H_i has in H_i
  std::size_t max_out = 0;   // most neighbours a vertex of H_i has outside H_i
};

struct DecompositionResult {
  std::vector<DecompositionPiece> pieces;
  VertexSet residual;
  std::size_t max_into_union = 0;  // most neighbours a residual vertex has in the union
  Rational gamma{0};
  bool condition_a = true;  // max_into <= 2 gamma m for every piece
  bool condition_b = true;  // max_out <= 2 gamma m for every piece
  bool condition_c = true;  // max_into_union <= 10 gamma m
};

/// Greedy maximal sequence of dense cores, each found in and expanded within what the
/// earlier expansions left over, with the cross-degree statistics between the pieces
/// and the rest. gamma defaults to alpha^2.
inline DecompositionResult dense_decomposition(const Graph& g, std::size_t m, const Rational& alpha,
                                               std::optional<Rational> gamma = std::nullopt) {
  dense_thresholds(m, alpha);
  DecompositionResult r;
  r.gamma = gamma.value_or(alpha * alpha);
  HostMask taken(g.order(), 0);
  for (;;) {
    std::vector<Vertex> left;
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
      if (!taken[v]) left.push_back(v);
    if (left.empty()) break;
    InducedSubgraph sub = induced_subgraph(g, VertexSet(left));
    SeedSearch seed = find_dense_seed(sub.graph, m, alpha);
    if (!seed.witness) break;
    DenseWitness local = expand(*seed.witness, sub.graph);
    DecompositionPiece piece;
    piece.witness = detail::lift(local, sub.to_parent);
    for (Vertex v : piece.witness.expansion) taken[v] = 1;
    r.pieces.push_back(std::move(piece));
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
    if (!taken[v]) rest.push_back(v);
  r.residual = VertexSet(rest);
  const Rational gm = r.gamma * static_cast<std::int64_t>(m);
  for (auto& p : r.pieces) {
    HostMask in = p.witness.expansion.mask(g.order());
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
      if (in[v]) {
        p.max_out = std::max(p.max_out, g.degree(v) - degree_into(g, v, in));
      } else {
        p.max_into = std::max(p.max_into, degree_into(g, v, in));
      }
    }
    if (Rational(static_cast<std::int64_t>(p.max_into)) > 2 * gm) r.condition_a = false;
    if (Rational(static_cast<std::int64_t>(p.max_out)) > 2 * gm) r.condition_b = false;
  }
  for (Vertex v : r.residual) r.max_into_union = std::max(r.max_into_union, degree_into(g, v, taken));
  r.condition_c = Rational(static_cast<std::int64_t>(r.max_into_union)) <= 10 * gm;
  return r;
}

/// What the paired-parent step ran into when no image of p keeps the union large enough.
struct LeafEvidence {
  Vertex parent = kUnset;   // p
  Vertex partner = kUnset;  // its already embedded pair partner p'
  VertexSet a;              // unused neighbours of the image of p's parent
  VertexSet b;              // neighbourhood of the image of p'
  VertexSet b_prime;        // vertices of B seeing most of A
};

struct ManyLeavesReport {
  EmbedOutcome outcome;
  std::vector<PairCheck> pairs;
  std::optional<LeafEvidence> evidence;
  std::optional<DenseWitness> witness;
  std::vector<std::string> warnings;
  bool success() const { return outcome.success(); }
};

namespace detail {

inline std::size_t union_size(const Graph& g, Vertex x, Vertex y) {
  auto nx = g.neighbors(x), ny = g.neighbors(y);
  std::vector<Vertex> u;
  std::set_union(nx.begin(), nx.end(), ny.begin(), ny.end(), std::back_inserter(u));
  return u.size();
}

inline void warn_dense_present(const Graph& g, std::size_t m, const Rational& alpha, std::vector<std::string>& warn) {
  if (m < 2) return;
  auto seed = find_dense_seed(g, m, alpha);
  if (seed.witness) {
    warn.push_back(std::string("hypothesis: host contains a ") + to_string(seed.witness->kind) + " subgraph");
  }
}

/// Turns (A, B') evidence into a witness: A n B' as a clique core, (A - B', B' - A) as a
/// bipartite core, else a seed search inside A u B.
inline std::optional<DenseWitness> witness_from_evidence(const Graph& g, const LeafEvidence& ev,
                                                         const DenseThresholds& th) {
  HostMask in_a = ev.a.mask(g.order()), in_bp = ev.b_prime.mask(g.order());
  std::vector<Vertex> both, a_only, bp_only;
  for (Vertex v : ev.a) (in_bp[v] ? both : a_only).push_back(v);
  for (Vertex v : ev.b_prime)
    if (!in_a[v]) bp_only.push_back(v);
  auto kept = peel_clique(g, both, th.core_degree, th.m + 1);
  if (!kept.empty() && clique_core_failure(g, VertexSet(kept), th).empty()) return clique_witness(g, VertexSet(kept), th);
  auto pair = peel_bipartite(g, a_only, bp_only, th.core_degree, th.m, kUnset);
  if (pair && bipartite_core_failure(g, *pair, th).empty()) return bipartite_witness(g, std::move(*pair), th);
  std::vector<Vertex> all(ev.a.begin(), ev.a.end());
  for (Vertex v : ev.b)
    if (!in_a[v]) all.push_back(v);
  if (th.m < 2 || all.empty()) return std::nullopt;
  InducedSubgraph sub = induced_subgraph(g, VertexSet(all));
  auto seed = find_dense_seed(sub.graph, th.m, th.alpha);
  if (!seed.witness) return std::nullopt;
  return lift(*seed.witness, sub.to_parent);
}

}  // namespace detail

/// Embeds the non-leaf part of T vertex by vertex, giving each leaf parent whose pair
/// partner (in a good ordering) is already placed the image maximising the union of the
/// two neighbourhoods, which must reach m+1; then attaches all leaves by matching. When
/// no image keeps the union large enough the run stops with the evidence sets and a
/// dense witness derived from them when one exists.
inline ManyLeavesReport embed_many_leaves(const Tree& t, const Graph& g, std::size_t m, const Rational& alpha) {
  DenseThresholds th = dense_thresholds(m, alpha);
  ManyLeavesReport rep;
  auto& warn = rep.warnings;
  const double md = static_cast<double>(m), ad = to_double(alpha);
  if (t.edge_count() > m) warn.push_back("hypothesis: tree has more than m edges");
  if (static_cast<double>(degree_profile(g).min_degree) < (1 - ad) * md - kThresholdTolerance) {
    warn.push_back("hypothesis: minimum degree below (1-alpha)m");
  }
  auto lp = leaf_profile(t);
  if (static_cast<double>(lp.total_leaves) < (1 - alpha_root(alpha, 7)) * md - kThresholdTolerance) {
    warn.push_back("hypothesis: fewer than (1-alpha^(1/7))m leaves");
  }
  if (6 * lp.max_leaf_children > m) warn.push_back("hypothesis: a vertex has more than m/6 leaf children");
  detail::warn_dense_present(g, m, alpha, warn);

  if (t.order() <= 2 || g.order() == 0) {
    rep.outcome = greedy_embed(t, g);
    return rep;
  }
  const Vertex root = lp.argmax;
  Rooting rt = root_at(t, root);
  std::vector<Vertex> leaves;
  for (Vertex v : t.leaves())
    if (v != root) leaves.push_back(v);
  HostMask is_leaf(t.order(), 0);
  for (Vertex v : leaves) is_leaf[v] = 1;
  GoodOrdering ordering = good_ordering(t, VertexSet(leaves));
  std::vector<Vertex> partner(t.order(), kUnset);
  for (std::size_t i = 0; i + 1 < ordering.size(); i += 2) {
    partner[ordering[i].parent] = ordering[i + 1].parent;
    partner[ordering[i + 1].parent] = ordering[i].parent;
  }
  const std::size_t need = m + 1;

  EmbedState st(t, g);
  st.place(root, max_degree_vertex(g));
  for (Vertex a : rt.bfs_order) {
    if (st.placed(a) || is_leaf[a]) continue;
    auto cands = st.open_slots(a);
    if (cands.empty()) {
      rep.outcome = detail::stuck_outcome(st, a);
      return rep;
    }
    Vertex p = partner[a];
    if (p == kUnset || !st.placed(p)) {
      st.place(a, detail::pick_max(cands, [&](Vertex x) { return g.degree(x); }));
      continue;
    }
    Vertex fp = st.image(p);
    Vertex x = detail::pick_max(cands, [&](Vertex y) { return detail::union_size(g, y, fp); });
    if (detail::union_size(g, x, fp) >= need) {
      st.place(a, x);
      continue;
    }
    LeafEvidence ev;
    ev.parent = a;
    ev.partner = p;
    std::size_t a_size = cands.size();
    auto want = frozen_ceil((1 - ad - alpha_root(alpha, 7)) * md);
    if (want > 0) a_size = std::min(a_size, static_cast<std::size_t>(want));
    std::vector<Vertex> a_ids(cands.begin(), cands.begin() + static_cast<long>(a_size));
    ev.a = VertexSet(a_ids);
    ev.b = VertexSet(std::vector<Vertex>(g.neighbors(fp).begin(), g.neighbors(fp).end()));
    HostMask in_a = ev.a.mask(g.order());
    auto b_need = frozen_ceil((1 - std::sqrt(2 * ad)) * static_cast<double>(a_size));
    std::vector<Vertex> bp;
    for (Vertex y : ev.b)
      if (static_cast<std::int64_t>(degree_into(g, y, in_a)) >= b_need) bp.push_back(y);
    ev.b_prime = VertexSet(bp);
    rep.witness = detail::witness_from_evidence(g, ev, th);
    if (!rep.witness) warn.push_back("evidence did not yield a dense witness");
    rep.evidence = std::move(ev);
    rep.outcome = detail::stuck_outcome(st, a);
    rep.outcome.notes.push_back("paired neighbourhood union below m+1 for every image of " + std::to_string(a));
    return rep;
  }
  auto hall = hall_complete_ordered(t, g, st.embedding(), ordering, need);
  rep.outcome = std::move(hall.outcome);
  rep.pairs = std::move(hall.pairs);
  warn.insert(warn.end(), hall.warnings.begin(), hall.warnings.end());
  return rep;
}

struct NoDenseReport {
  EmbedOutcome outcome;
  std::string branch;  // many-leaves, random-pairs, case1, case2-greedy, case2-fill, fallback or none
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  bool condition_ii = false;
  DenseSubgraph densest;
  std::size_t forest_size = 0;
  std::optional<Vertex> u, u_prime;
  VertexSet a, b;
  VertexSet h_prime, h_star;
  std::vector<std::string> warnings;
  std::vector<std::string> trace;
  bool success() const { return outcome.success(); }
};

namespace detail {

/// Rational close to x with denominator 10^6.
inline Rational approx_rational(double x) {
  return Rational(static_cast<std::int64_t>(std::llround(x * 1e6)), 1'000'000);
}

/// Vertex of the mask with the most neighbours in it, smallest id on ties.
inline Vertex best_within(const Graph& g, const HostMask& mask) {
  Vertex best = kUnset;
  std::size_t best_d = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    if (!mask[v]) continue;
    std::size_t d = degree_into(g, v, mask);
    if (best == kUnset || d > best_d) {
      best = v;
      best_d = d;
    }
  }
  return best;
}

/// Places the unplaced tree vertices among `order` with the given policy; kUnset when done.
inline Vertex place_rest(EmbedState& st, const std::vector<Vertex>& order, const GrowPolicy& pol) {
  std::vector<Vertex> todo;
  for (Vertex a : order)
    if (!st.placed(a)) todo.push_back(a);
  return grow(st, todo, pol);
}

inline GrowPolicy leaning(const HostMask& mask, Preference pref) {
  GrowPolicy p;
  p.preferred = mask;
  p.preference = pref;
  return p;
}

}  // namespace detail

/// Embedding procedure for hosts without dense cores. Tries, in order: the many-leaves
/// route; seeded random matched-pair embeddings of a small subtree into the densest small
/// subgraph H, accepting one that uses enough non-neighbours of every low-degree vertex of
/// H; the structured sets A, B with their two cases; a pinned greedy fallback.
inline NoDenseReport embed_no_dense(const Tree& t, const Graph& g, std::size_t m, const Rational& alpha,
                                    std::uint64_t seed, std::size_t retries = 64) {
  dense_thresholds(m, alpha);
  if (retries < 1) throw InputError("retries must be at least 1");
  NoDenseReport rep;
  rep.seed = seed;
  auto& warn = rep.warnings;
  auto& trace = rep.trace;
  const double md = static_cast<double>(m), ad = to_double(alpha);
  const double a3 = alpha_root(alpha, 3), a6 = alpha_root(alpha, 6), a13 = alpha_root(alpha, 13);
  if (t.edge_count() > m) warn.push_back("hypothesis: tree has more than m edges");
  if (static_cast<double>(degree_profile(g).min_degree) < (1 - ad) * md - kThresholdTolerance) {
    warn.push_back("hypothesis: minimum degree below (1-alpha)m");
  }
  auto lp = leaf_profile(t);
  if (static_cast<double>(lp.max_leaf_children) > ad * md + kThresholdTolerance) {
    warn.push_back("hypothesis: a vertex has more than alpha m leaf children");
  }
  if (m >= 1 && is_locally_sparse(g, m, SearchMode::Peeling).is_sparse()) warn.push_back("hypothesis: host is locally sparse");
  detail::warn_dense_present(g, m, alpha, warn);
  if (g.order() == 0 || t.order() > g.order()) {
    rep.branch = "none";
    rep.outcome = EmbedState(t, g).outcome();
    trace.push_back("host has fewer vertices than the tree");
    return rep;
  }
  if (t.order() <= 2) {
    rep.branch = "fallback";
    rep.outcome = greedy_embed(t, g);
    return rep;
  }

  if (static_cast<double>(lp.total_leaves) >= (1 - alpha_root(alpha, 7)) * md - kThresholdTolerance &&
      6 * lp.max_leaf_children <= m) {
    auto many = embed_many_leaves(t, g, m, alpha);
    if (many.success()) {
      rep.branch = "many-leaves";
      rep.outcome = std::move(many.outcome);
      return rep;
    }
    trace.push_back("many-leaves route stuck");
  }

  rep.densest = densest_small_subgraph(g, m + 1, SearchMode::Peeling);
  const HostMask in_h = rep.densest.vertices.mask(g.order());
  const std::size_t delta = rep.densest.min_degree;
  Vertex w = kUnset;
  for (Vertex v : rep.densest.vertices)
    if (w == kUnset || degree_into(g, v, in_h) < degree_into(g, w, in_h)) w = v;

  auto sep = separator(t);
  const Vertex z = sep.z;
  Rooting rt = root_at(t, z);
  // F: components of T - z other than the largest, between alpha^(1/3) m and twice that.
  HostMask in_f(t.order(), 0);
  {
    auto lo = static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(a3 * md)));
    auto hi = static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_floor(2 * a3 * md)));
    for (std::size_t i = 1; i < sep.components.size() && rep.forest_size < lo; ++i) {
      const auto& c = sep.components[i];
      if (rep.forest_size + c.size() > hi) continue;
      for (Vertex a : c) in_f[a] = 1;
      rep.forest_size += c.size();
    }
  }
  std::vector<Vertex> main_order, forest_order, f_roots;
  for (Vertex a : rt.bfs_order) {
    if (in_f[a]) {
      forest_order.push_back(a);
      if (rt.parent[a] == z) f_roots.push_back(a);
    } else {
      main_order.push_back(a);
    }
  }
  HostMask outside_h(g.order(), 0);
  for (std::size_t x = 0; x < outside_h.size(); ++x) outside_h[x] = !in_h[x];

  // Puts z's neighbours in F outside the mask, then the rest of T - F leaning on
  // `lean`, then F away from the mask.
  auto finish = [&](EmbedState& st, const HostMask& avoid, const HostMask& lean) -> Vertex {
    GrowPolicy out_only;
    out_only.forbidden = avoid;
    Vertex blocked = detail::place_rest(st, f_roots, out_only);
    if (blocked != kUnset) return blocked;
    blocked = detail::place_rest(st, main_order, detail::leaning(lean, Preference::Prefer));
    if (blocked != kUnset) return blocked;
    return detail::place_rest(st, forest_order, detail::leaning(avoid, Preference::Avoid));
  };

  // Random matched-pair phase.
  std::vector<Vertex> t_minus_f;
  for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a)
    if (!in_f[a]) t_minus_f.push_back(a);
  std::vector<Edge> pairs;
  if (t_minus_f.size() >= 2) {
    SubTree sub = extract_subtree(t, t_minus_f, z);
    std::size_t ell = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(a3 * md))) + 1,
                                            sub.tree.order() / 2);
    auto ms = matched_subtree(sub.tree, sub.from_parent[z], ell);
    if (auto* found = std::get_if<MatchedSubtree>(&ms)) {
      for (auto [x, y] : found->matching) pairs.emplace_back(sub.to_parent[x], sub.to_parent[y]);
    } else {
      trace.push_back("T - F has no matched subtree of the wanted size");
    }
  }
  const auto need_outside = static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(3 * ad * md)));
  const double low_cut = static_cast<double>(delta) + 3 * ad * md;
  std::vector<Vertex> low;  // vertices of H with d_H below delta + 3 alpha m
  for (Vertex x : rep.densest.vertices)
    if (static_cast<double>(degree_into(g, x, in_h)) < low_cut - kThresholdTolerance) low.push_back(x);

  if (!pairs.empty()) {
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
      rep.attempts = attempt + 1;
      std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(attempt)};
      std::mt19937_64 rng(sq);
      EmbedState st(t, g);
      st.place(z, w);
      bool ok = true;
      for (auto [x, y] : pairs) {
        for (Vertex a : {x, y}) {
          if (st.placed(a)) continue;
          std::vector<Vertex> inside;
          for (Vertex c : st.open_slots(a))
            if (in_h[c]) inside.push_back(c);
          if (inside.empty()) {
            ok = false;
            break;
          }
          std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
          st.place(a, inside[pick(rng)]);
        }
        if (!ok) break;
      }
      if (!ok) {
        trace.push_back("attempt " + std::to_string(attempt) + ": ran out of room in H");
        continue;
      }
      bool cond = true;
      for (Vertex x : low) {
        HostMask closed(g.order(), 0);
        closed[x] = 1;
        for (Vertex y : g.neighbors(x)) closed[y] = 1;
        std::size_t used_far = 0;
        for (Vertex y : rep.densest.vertices) used_far += st.used(y) && !closed[y] ? 1 : 0;
        if (used_far < need_outside) {
          cond = false;
          break;
        }
      }
      if (!cond) continue;
      rep.condition_ii = true;
      Vertex blocked = finish(st, in_h, in_h);
      if (blocked == kUnset) {
        rep.branch = "random-pairs";
        rep.outcome = st.outcome();
        return rep;
      }
      trace.push_back("attempt " + std::to_string(attempt) + ": completion stuck at " + std::to_string(blocked));
    }
    if (!rep.condition_ii) trace.push_back("no attempt used enough non-neighbours of every low-degree vertex");
  }

  // Branch (i): u of low H-degree, u' whose H-neighbourhood holds a set A of vertices
  // with few H-neighbours, most of them in N_H(u).
  const auto a_need = static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(static_cast<double>(delta) - 4 * a3 * md)));
  const double a_cap = static_cast<double>(delta) + 7 * a3 * md;
  const double a_overlap = static_cast<double>(delta) - 4 * a3 * md;
  std::vector<std::vector<Vertex>> nh(g.order());
  for (Vertex v : rep.densest.vertices)
    for (Vertex y : g.neighbors(v))
      if (in_h[y]) nh[v].push_back(y);
  for (Vertex u : rep.densest.vertices) {
    if (static_cast<double>(nh[u].size()) > low_cut + kThresholdTolerance) continue;
    HostMask in_nu(g.order(), 0);
    for (Vertex y : nh[u]) in_nu[y] = 1;
    for (Vertex up : rep.densest.vertices) {
      std::vector<Vertex> a_ids;
      for (Vertex y : nh[up]) {
        if (static_cast<double>(nh[y].size()) > a_cap + kThresholdTolerance) continue;
        if (static_cast<double>(degree_into(g, y, in_nu)) < a_overlap - kThresholdTolerance) continue;
        a_ids.push_back(y);
        if (a_ids.size() == a_need) break;
      }
      if (a_ids.size() == a_need) {
        rep.u = u;
        rep.u_prime = up;
        rep.a = VertexSet(a_ids);
        break;
      }
    }
    if (rep.u) break;
  }
  if (rep.u) {
    HostMask in_a = rep.a.mask(g.order());
    auto b_need = static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(static_cast<double>(delta) - 1.5 * a6 * md)));
    const double b_floor = static_cast<double>(delta) - 7 * a6 * md;
    std::vector<Vertex> b_ids;
    for (Vertex y : nh[*rep.u])
      if (static_cast<double>(degree_into(g, y, in_a)) >= b_floor - kThresholdTolerance) b_ids.push_back(y);
    std::stable_sort(b_ids.begin(), b_ids.end(),
                     [&](Vertex x, Vertex y) { return degree_into(g, x, in_a) > degree_into(g, y, in_a); });
    if (b_ids.size() > b_need) b_ids.resize(b_need);
    rep.b = VertexSet(b_ids);
    HostMask in_b = rep.b.mask(g.order());
    std::vector<Vertex> a_only, b_only, both;
    for (Vertex v : rep.a) (in_b[v] ? both : a_only).push_back(v);
    for (Vertex v : rep.b)
      if (!in_a[v]) b_only.push_back(v);
    const double case1_min = 25 * a6 * md;
    if (!a_only.empty() && !b_only.empty() && static_cast<double>(a_only.size()) >= case1_min - kThresholdTolerance &&
        static_cast<double>(b_only.size()) >= case1_min - kThresholdTolerance) {
      // Case 1: a balanced matched subtree into [A - B, B - A], z on the A - B side.
      HostMask side_a(g.order(), 0), side_b(g.order(), 0), ab(g.order(), 0);
      for (Vertex v : a_only) side_a[v] = ab[v] = 1;
      for (Vertex v : b_only) side_b[v] = ab[v] = 1;
      for (Vertex v : both) ab[v] = 1;
      EmbedState st(t, g);
      Vertex zi = detail::pick_max(a_only, [&](Vertex x) { return degree_into(g, x, side_b); });
      st.place(z, zi);
      std::vector<Vertex> star_order;
      if (t_minus_f.size() >= 2) {
        SubTree sub = extract_subtree(t, t_minus_f, z);
        std::size_t ell = std::min<std::size_t>(
            static_cast<std::size_t>(std::max<std::int64_t>(1, frozen_ceil(16 * a6 * md))), sub.tree.order() / 2);
        auto ms = matched_subtree(sub.tree, sub.from_parent[z], ell);
        if (auto* found = std::get_if<MatchedSubtree>(&ms)) {
          for (auto [x, y] : found->matching) {
            star_order.push_back(sub.to_parent[x]);
            star_order.push_back(sub.to_parent[y]);
          }
        }
      }
      GrowPolicy sides;
      sides.admissible = [&](Vertex a, Vertex x) { return rt.depth[a] % 2 == 0 ? side_a[x] : side_b[x]; };
      Vertex blocked = detail::place_rest(st, star_order, sides);
      if (blocked == kUnset) blocked = finish(st, in_h, ab);
      if (blocked == kUnset) {
        rep.branch = "case1";
        rep.outcome = st.outcome();
        return rep;
      }
      trace.push_back("case 1 stuck at " + std::to_string(blocked));
    } else {
      // Case 2: a large almost complete H' grown from A n B, and its core H*.
      const double miss_rate = 7 * a6 * md;
      HostMask in_hp(g.order(), 0);
      std::vector<Vertex> hp = both.empty() ? std::vector<Vertex>{*rep.u} : both;
      for (Vertex v : hp) in_hp[v] = 1;
      auto missing_pairs = [&]() {
        std::size_t k = hp.size();
        return k * (k - 1) / 2 - edges_inside(g, in_hp);
      };
      for (;;) {
        if (hp.size() >= m + 1) break;
        Vertex best = kUnset;
        std::size_t best_d = 0;
        for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
          if (in_hp[v]) continue;
          std::size_t d = degree_into(g, v, in_hp);
          if (d == 0) continue;
          std::size_t miss = missing_pairs() + hp.size() - d;
          if (static_cast<double>(miss) > miss_rate * static_cast<double>(hp.size() + 1) + kThresholdTolerance) continue;
          if (best == kUnset || d > best_d) {
            best = v;
            best_d = d;
          }
        }
        if (best == kUnset) break;
        hp.push_back(best);
        in_hp[best] = 1;
      }
      rep.h_prime = VertexSet(hp);
      HostMask in_hs = in_hp;
      std::vector<Vertex> hs = rep.h_prime.ids();
      const double drop_above = a13 * md / 3;
      for (;;) {
        Vertex worst = kUnset;
        std::size_t worst_miss = 0;
        for (Vertex v : hs) {
          std::size_t miss = hs.size() - 1 - degree_into(g, v, in_hs);
          if (static_cast<double>(miss) > drop_above + kThresholdTolerance && (worst == kUnset || miss > worst_miss)) {
            worst = v;
            worst_miss = miss;
          }
        }
        if (worst == kUnset) break;
        hs.erase(std::find(hs.begin(), hs.end(), worst));
        in_hs[worst] = 0;
      }
      rep.h_star = VertexSet(hs);
      const std::size_t delta_p = detail::min_degree_in(g, rep.h_prime);
      const double hp1 = static_cast<double>(hp.size()) - 1;
      if (static_cast<double>(delta_p) <= hp1 - 2 * a13 * md / 3 + kThresholdTolerance && !hs.empty()) {
        EmbedState st(t, g);
        st.place(z, detail::best_within(g, in_hs));
        Vertex blocked = finish(st, in_hp, in_hs);
        if (blocked == kUnset) {
          rep.branch = "case2-greedy";
          rep.outcome = st.outcome();
          return rep;
        }
        trace.push_back("case 2 greedy stuck at " + std::to_string(blocked));
      } else if (hp.size() >= 3) {
        auto m_sub = static_cast<std::int64_t>(frozen_floor(hp1 - a13 * md / 3));
        m_sub = std::min<std::int64_t>(m_sub, static_cast<std::int64_t>(t_minus_f.size()) - 1);
        if (m_sub >= 1) {
          std::vector<Vertex> sub_ids;
          for (Vertex a : main_order) {
            if (static_cast<std::int64_t>(sub_ids.size()) > m_sub) break;
            sub_ids.push_back(a);
          }
          SubTree sub = extract_subtree(t, sub_ids, z);
          InducedSubgraph hsub = induced_subgraph(g, rep.h_prime);
          FillTask task;
          task.host = hsub.graph;
          task.tree = sub.tree;
          Rational eps = detail::approx_rational(a13 / 3 * md / hp1);
          if (eps <= Rational(0) || eps >= Rational(1, 2)) {
            trace.push_back("fill slack " + to_string(eps) + " clamped into (0, 1/2)");
            eps = std::clamp(eps, Rational(1, 1'000'000), Rational(49, 100));
          }
          task.epsilon = eps;
          Vertex zi_local = 0;
          for (Vertex v = 1; v < static_cast<Vertex>(hsub.graph.order()); ++v)
            if (hsub.graph.degree(v) < hsub.graph.degree(zi_local)) zi_local = v;
          FillReport fill = fill_almost_complete(task, sub.from_parent[z], zi_local);
          if (fill.success()) {
            EmbedState st(t, g);
            for (Vertex a = 0; a < static_cast<Vertex>(sub.tree.order()); ++a) {
              st.place(sub.to_parent[a], hsub.to_parent[fill.outcome.embedding[a]]);
            }
            Vertex blocked = finish(st, in_hp, in_hp);
            if (blocked == kUnset) {
              rep.branch = "case2-fill";
              rep.outcome = st.outcome();
              return rep;
            }
            trace.push_back("case 2 completion after the fill stuck at " + std::to_string(blocked));
          } else {
            trace.push_back("case 2 fill stuck");
          }
        }
      }
    }
  } else {
    trace.push_back("no (u, u', A) configuration in H");
  }

  AnchorConstraint pin;
  pin.pins = {{z, max_degree_vertex(g)}};
  EmbedOutcome fb = greedy_embed(t, g, pin);
  rep.branch = fb.success() ? "fallback" : "none";
  if (!fb.success()) trace.push_back("pinned greedy fallback stuck");
  rep.outcome = std::move(fb);
  return rep;
}

}  // namespace treeembed
