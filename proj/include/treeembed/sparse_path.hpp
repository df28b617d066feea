#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "treeembed/embed_core.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/rational.hpp"
#include "treeembed/subgraph_search.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

namespace treeembed {

enum class SparsityVerdict { Sparse, NotSparse, Unknown };

inline const char* to_string(SparsityVerdict v) {
  switch (v) {
    case SparsityVerdict::Sparse: return "SPARSE";
    case SparsityVerdict::NotSparse: return "NOT_SPARSE";
    default: return "UNKNOWN_SPARSE";
  }
}

/// Average degree a small subgraph must exceed to break local sparsity.
inline Rational sparsity_threshold(std::size_t m) { return Rational(static_cast<std::int64_t>(m), 25); }

struct SparsityReport {
  SparsityVerdict verdict = SparsityVerdict::Unknown;
  std::optional<DenseSubgraph> witness;
  SearchMode mode = SearchMode::Exact;
  std::size_t m = 0;
  Rational threshold{0};
  bool is_sparse() const { return verdict == SparsityVerdict::Sparse; }
};

/// Degeneracy: the largest minimum degree met while peeling minimum-degree vertices.
inline std::size_t degeneracy(const Graph& g) {
  std::size_t best = 0;
  std::vector<Vertex> all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = static_cast<Vertex>(i);
  HostMask in(g.order(), 1);
  std::vector<std::size_t> deg(g.order());
  for (Vertex v : all) deg[v] = g.degree(v);
  for (std::size_t left = g.order(); left > 0; --left) {
    Vertex v = kUnset;
    for (Vertex u : all)
      if (in[u] && (v == kUnset || deg[u] < deg[v])) v = u;
    best = std::max(best, deg[v]);
    in[v] = 0;
    for (Vertex w : g.neighbors(v))
      if (in[w]) --deg[w];
  }
  return best;
}

/// Whether every subgraph on at most m+1 vertices has average degree at most m/25.
/// Peeling mode only certifies sparsity through max(2 * degeneracy, max degree) and may
/// answer Unknown.
inline SparsityReport is_locally_sparse(const Graph& g, std::size_t m, SearchMode mode) {
  if (m < 1) throw InputError("m must be at least 1");
  SparsityReport r;
  r.mode = mode;
  r.m = m;
  r.threshold = sparsity_threshold(m);
  if (g.order() == 0) {
    r.verdict = SparsityVerdict::Sparse;
    return r;
  }
  DenseSubgraph d = densest_small_subgraph(g, m + 1, mode);
  if (d.avg_degree > r.threshold) {
    r.verdict = SparsityVerdict::NotSparse;
    r.witness = d;
    return r;
  }
  if (mode == SearchMode::Exact) {
    r.verdict = SparsityVerdict::Sparse;
    return r;
  }
  auto cap = static_cast<std::int64_t>(std::min(2 * degeneracy(g), degree_profile(g).max_degree));
  r.verdict = Rational(cap) <= r.threshold ? SparsityVerdict::Sparse : SparsityVerdict::Unknown;
  return r;
}

struct BlockerFailure {
  std::vector<Vertex> absorbed;  // in absorption order, the last one overflowed the budget
  VertexSet a;                   // first ceil(m/20) of them
  std::size_t edges_inside = 0;  // e(S u A)
  Rational threshold{0};         // 9m/20 * |A|
  bool exceeds_threshold = false;
  bool min_degree_hypothesis = false;  // delta(G) >= 19m/20
};

struct BlockerResult {
  bool ok = false;
  VertexSet s_prime;
  std::vector<Vertex> absorbed;
  std::optional<BlockerFailure> failure;
};

/// Grows S by absorbing, smallest id first, vertices with fewer than m/2 neighbours outside
/// the current set. Succeeds when none remain within the budget of m/20 absorptions.
inline BlockerResult expand_blocker_set(const Graph& g, const VertexSet& s, std::size_t m) {
  if (m < 1) throw InputError("m must be at least 1");
  if (s.size() + 1 > m) {
    throw InputError("blocker expansion needs |S| <= m-1, got |S|=" + std::to_string(s.size()) +
                     " and m=" + std::to_string(m));
  }
  for (Vertex v : s)
    if (!g.contains(v)) throw InputError("S contains vertex " + std::to_string(v) + " outside the host");
  HostMask in = s.mask(g.order());
  std::vector<std::size_t> outside(g.order(), 0);
  HostMask out_mask(g.order(), 0);
  for (std::size_t v = 0; v < g.order(); ++v) out_mask[v] = !in[v];
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) outside[v] = degree_into(g, v, out_mask);

  BlockerResult r;
  std::vector<Vertex> absorbed;
  for (;;) {
    Vertex low = kUnset;
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
      if (!in[v] && 2 * outside[v] < m) {
        low = v;
        break;
      }
    }
    if (low == kUnset) break;
    absorbed.push_back(low);
    if (20 * absorbed.size() > m) {
      BlockerFailure fail;
      fail.absorbed = absorbed;
      std::size_t take = (m + 19) / 20;
      fail.a = VertexSet(std::vector<Vertex>(absorbed.begin(), absorbed.begin() + static_cast<long>(take)));
      HostMask sa = s.mask(g.order());
      for (Vertex v : fail.a) sa[v] = 1;
      fail.edges_inside = edges_inside(g, sa);
      fail.threshold = Rational(static_cast<std::int64_t>(9 * m * take), 20);
      fail.exceeds_threshold = Rational(static_cast<std::int64_t>(fail.edges_inside)) > fail.threshold;
      fail.min_degree_hypothesis = 20 * degree_profile(g).min_degree >= 19 * m;
      r.absorbed = absorbed;
      r.failure = std::move(fail);
      return r;
    }
    in[low] = 1;
    for (Vertex w : g.neighbors(low)) --outside[w];
  }
  r.ok = true;
  r.absorbed = absorbed;
  std::vector<Vertex> ids;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
    if (in[v]) ids.push_back(v);
  r.s_prime = VertexSet(std::move(ids));
  return r;
}

/// Embeds T with its separator z on w: a forest F of components of T - z with
/// floor(m/4) <= |F| <= m/2 is held back, the rest is embedded preferring hosts outside
/// a blocker set around w, then F is finished greedily. Falls back to a pinned greedy
/// embedding when no forest qualifies or the structured attempt gets stuck.
inline EmbedOutcome embed_sparse(const Tree& t, const Graph& g, Vertex w, std::size_t m) {
  if (!g.contains(w)) throw InputError("host vertex " + std::to_string(w) + " out of range");
  if (t.edge_count() > m) {
    throw InputError("tree has " + std::to_string(t.edge_count()) + " edges, more than m=" + std::to_string(m));
  }
  std::vector<std::string> notes;
  auto prof = degree_profile(g);
  if (20 * prof.min_degree < 19 * m) notes.push_back("hypothesis: minimum degree " + std::to_string(prof.min_degree) + " below 19m/20");
  if (m >= 1) {
    auto sp = is_locally_sparse(g, m, SearchMode::Peeling);
    if (sp.verdict == SparsityVerdict::NotSparse) notes.push_back("hypothesis: host is not locally sparse");
    if (sp.verdict == SparsityVerdict::Unknown) notes.push_back("hypothesis: local sparsity not certified");
  }
  if (20 * leaf_profile(t).max_leaf_children > m) notes.push_back("hypothesis: a vertex has more than m/20 leaf children");

  auto sep = separator(t);
  Vertex z = sep.z;
  auto fallback = [&](std::string why) {
    notes.push_back(std::move(why));
    AnchorConstraint pin;
    pin.pins = {{z, w}};
    EmbedOutcome o = greedy_embed(t, g, pin);
    o.notes.insert(o.notes.begin(), notes.begin(), notes.end());
    return o;
  };

  std::size_t lo = m / 4, hi = m / 2;
  HostMask in_f(t.order(), 0);
  std::size_t f_size = 0;
  for (const auto& c : sep.components) {
    if (f_size >= lo && f_size > 0) break;
    if (f_size + c.size() <= hi) {
      for (Vertex a : c) in_f[a] = 1;
      f_size += c.size();
    }
  }
  if (f_size < lo || f_size == 0) return fallback("no forest of size between m/4 and m/2; greedy fallback");

  std::vector<Vertex> n_w(g.neighbors(w).begin(), g.neighbors(w).end());
  std::size_t n_size = std::min(n_w.size(), static_cast<std::size_t>((19 * (m + 1) + 19) / 20));
  n_w.resize(n_size);
  HostMask blocker(g.order(), 0);
  std::size_t s_size = (2 * m + 2) / 3;
  if (s_size >= 1 && s_size + 1 <= m) {
    std::vector<Vertex> s_ids{w};
    for (std::size_t i = 0; i < n_w.size() && s_ids.size() < s_size; ++i) s_ids.push_back(n_w[i]);
    auto br = expand_blocker_set(g, VertexSet(s_ids), m);
    if (br.ok) {
      blocker = br.s_prime.mask(g.order());
    } else {
      notes.push_back("blocker expansion failed; avoiding S itself");
      for (Vertex x : s_ids) blocker[x] = 1;
    }
  }
  HostMask in_n(g.order(), 0);
  for (Vertex x : n_w) in_n[x] = 1;

  Rooting rt = root_at(t, z);
  EmbedState st(t, g);
  st.place(z, w);
  // Children of z outside F: first into N - S', then anywhere in N(w).
  GrowPolicy first_level;
  first_level.chooser = [&](const EmbedState&, Vertex, const std::vector<Vertex>& cands) {
    for (Vertex x : cands)
      if (in_n[x] && !blocker[x]) return x;
    for (Vertex x : cands)
      if (!blocker[x]) return x;
    return cands.front();
  };
  std::vector<Vertex> rest, forest;
  for (Vertex a : rt.bfs_order) {
    if (a == z) continue;
    (in_f[a] ? forest : rest).push_back(a);
  }
  std::vector<Vertex> top;
  for (const auto& c : sep.components) {
    if (in_f[c.front()]) continue;
    for (Vertex a : c)
      if (rt.parent[a] == z) top.push_back(a);
  }
  Vertex blocked = grow(st, top, first_level);
  if (blocked == kUnset) {
    GrowPolicy avoid;
    avoid.preferred = blocker;
    avoid.preference = Preference::Avoid;
    blocked = grow(st, rest, avoid);
  }
  if (blocked == kUnset) blocked = grow(st, forest, GrowPolicy{});
  if (blocked == kUnset) {
    EmbedOutcome o = st.outcome();
    o.notes = notes;
    return o;
  }
  EmbedOutcome fb = fallback("structured attempt stuck at tree vertex " + std::to_string(blocked) + "; greedy fallback");
  if (fb.success()) return fb;
  EmbedOutcome o = st.outcome();
  mark_stuck(o, st, blocked);
  o.notes = fb.notes;
  return o;
}

}  // namespace treeembed
