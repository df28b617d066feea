#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treeembed/constants.hpp"
#include "treeembed/dense_detect.hpp"
#include "treeembed/dense_fill.hpp"
#include "treeembed/embed_core.hpp"
#include "treeembed/embedding.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/sparse_path.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

namespace treeembed {

namespace detail {

inline std::size_t pipeline_m(const Tree& t, const Constants& c) { return c.m ? c.m : t.edge_count(); }

/// Candidate of largest host degree, smallest id on ties; candidates outside `avoid`
/// win over those inside when both exist.
inline Chooser highest_degree(HostMask avoid = {}) {
  return [avoid = std::move(avoid)](const EmbedState& st, Vertex, const std::vector<Vertex>& cands) {
    Vertex best = kUnset;
    bool best_free = false;
    for (Vertex x : cands) {
      bool free = avoid.empty() || !avoid[x];
      if (best == kUnset || (free && !best_free) ||
          (free == best_free && st.graph().degree(x) > st.graph().degree(best))) {
        best = x;
        best_free = free;
      }
    }
    return best;
  };
}

inline std::size_t placed_count(const EmbedOutcome& o) {
  return static_cast<std::size_t>(std::count_if(o.embedding.begin(), o.embedding.end(), [](Vertex x) { return x != kUnset; }));
}

/// Outcome of a branch is only trusted once the validator agrees.
inline bool accept(const Tree& t, const Graph& g, EmbedOutcome& o) {
  if (!o.success()) return false;
  if (validate_embedding(t, g, o.embedding).complete_and_valid()) return true;
  o.status = EmbedStatus::Stuck;
  o.notes.push_back("branch returned an invalid embedding; discarded");
  return false;
}

/// Copies an embedding into a subgraph's ids back to the host ids.
inline EmbedOutcome to_host(EmbedOutcome o, const std::vector<Vertex>& to_parent) {
  for (Vertex& x : o.embedding)
    if (x != kUnset) x = to_parent[x];
  for (Vertex& x : o.saturated_neighborhood) x = to_parent[x];
  if (o.hall_violator)
    for (Vertex& x : o.hall_violator->neighborhood) x = to_parent[x];
  return o;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hosts with one vertex of very large degree

struct Theorem1Report {
  EmbedOutcome outcome;
  std::string branch;  // leaf-heavy, case1, case2, fallback or none
  std::size_t m = 0;
  std::size_t t = 0;
  std::size_t t_prime = 0;
  Vertex hub = kUnset;
  std::optional<BipartitePair> biclique;  // a: larger side, b: the t' side
  VertexSet b_prime;
  Vertex split = kUnset;
  std::vector<std::vector<std::size_t>> escape_sizes;  // per later component: |A_0|, ..., |A_t'|
  std::vector<std::string> warnings;
  std::vector<std::string> trace;
  bool success() const { return outcome.success(); }
};

namespace detail {

/// Vertices of B, ascending, skipping any adjacent to or sharing a neighbour of degree
/// below t with one already taken.
inline std::vector<Vertex> spread_subset(const Graph& g, const VertexSet& b, std::size_t t, std::size_t want) {
  std::vector<Vertex> out;
  HostMask near(g.order(), 0);
  for (Vertex x : b) {
    if (out.size() == want) break;
    if (near[x]) continue;
    out.push_back(x);
    near[x] = 1;
    for (Vertex y : g.neighbors(x)) {
      near[y] = 1;
      if (g.degree(y) < t)
        for (Vertex z : g.neighbors(y)) near[z] = 1;
    }
  }
  return out;
}

/// Case 1: a small subtree goes into the biclique with its larger colour class on B',
/// the rest is grown greedily away from B'.
inline std::optional<EmbedOutcome> biclique_embed(const Tree& t, const Graph& g, const BipartitePair& bc,
                                                  const std::vector<Vertex>& b_prime, std::size_t t_prime,
                                                  std::vector<std::string>& trace) {
  Vertex r = separator(t).z;
  Rooting rt = root_at(t, r);
  std::size_t size = std::min(2 * t_prime + 1, t.order());
  std::vector<Vertex> sub(rt.bfs_order.begin(), rt.bfs_order.begin() + static_cast<long>(size));
  std::vector<Vertex> even, odd;
  for (Vertex a : sub) (rt.depth[a] % 2 == 0 ? even : odd).push_back(a);
  auto& big = even.size() >= odd.size() ? even : odd;
  auto& small = even.size() >= odd.size() ? odd : even;
  std::vector<Vertex> pool = b_prime;
  if (big.size() > pool.size()) {
    trace.push_back("case1: B' too small for the subtree, using all of B");
    pool = bc.a.ids();
  }
  if (big.size() > pool.size() || small.size() > bc.b.size()) {
    trace.push_back("case1: subtree does not fit the biclique");
    return std::nullopt;
  }
  EmbedState st(t, g);
  for (std::size_t i = 0; i < big.size(); ++i) st.place(big[i], pool[i]);
  for (std::size_t i = 0; i < small.size(); ++i) st.place(small[i], bc.b[i]);
  HostMask avoid(g.order(), 0);
  for (Vertex x : b_prime) avoid[x] = 1;
  GrowPolicy p;
  p.chooser = highest_degree(avoid);
  Vertex blocked = grow(st, rt.bfs_order, p);
  EmbedOutcome o = st.outcome();
  if (blocked != kUnset) mark_stuck(o, st, blocked);
  return o;
}

/// Layers A_1..A_t' peeled off around the used set A_0; layer[x] = i for x in A_i and
/// t'+1 for vertices in no layer.
inline std::vector<std::size_t> escape_layers(const Graph& g, const EmbedState& st, std::size_t t_prime,
                                              std::vector<std::size_t>& sizes) {
  const std::size_t none = t_prime + 1;
  std::vector<std::size_t> layer(g.order(), none);
  HostMask removed(g.order(), 0);
  sizes.assign(1, 0);
  for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x) {
    if (st.used(x)) {
      layer[x] = 0;
      removed[x] = 1;
      ++sizes[0];
    }
  }
  for (std::size_t i = 1; i <= t_prime; ++i) {
    HostMask keep(g.order(), 0);
    for (std::size_t x = 0; x < g.order(); ++x) keep[x] = !removed[x];
    std::vector<Vertex> add;
    for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x)
      if (!removed[x] && degree_into(g, x, keep) < t_prime) add.push_back(x);
    for (Vertex x : add) {
      layer[x] = i;
      removed[x] = 1;
    }
    sizes.push_back(add.size());
  }
  return layer;
}

}  // namespace detail

/// Embeds T, with m edges, into a host that has a vertex of degree at least g(m) (or
/// the override) and minimum degree floor(2m/3).
inline Theorem1Report theorem1_embed(const Tree& t, const Graph& g, const Constants& c) {
  Theorem1Report rep;
  const std::size_t m = detail::pipeline_m(t, c);
  rep.m = m;
  rep.t = m + 1;
  rep.t_prime = m + 1 - 2 * m / 3;
  auto& warn = rep.warnings;
  auto& trace = rep.trace;
  if (t.edge_count() > m) warn.push_back("hypothesis: tree has more than m edges");
  auto prof = degree_profile(g);
  Constants cm = c;
  cm.m = m;
  auto need = required_max_degree(cm);
  if (!need) {
    warn.push_back("hypothesis: g(m) does not fit in 64 bits and no override is set");
  } else if (prof.max_degree < *need) {
    warn.push_back("hypothesis: maximum degree " + std::to_string(prof.max_degree) + " below " + std::to_string(*need));
  }
  if (prof.min_degree < 2 * m / 3) {
    warn.push_back("hypothesis: minimum degree " + std::to_string(prof.min_degree) + " below floor(2m/3)=" +
                   std::to_string(2 * m / 3));
  }
  rep.branch = "none";
  rep.outcome.embedding = empty_embedding(t);
  if (g.order() == 0) return rep;

  auto lp = leaf_profile(t);
  if (t.order() > 2 && 3 * lp.max_leaf_children >= m) {
    EmbedOutcome o = star_heavy_embed(t, g, lp.argmax);
    if (detail::accept(t, g, o)) {
      rep.outcome = std::move(o);
      rep.branch = "leaf-heavy";
      return rep;
    }
    trace.push_back("leaf-heavy: stuck");
  }

  const Vertex v = max_degree_vertex(g);
  rep.hub = v;
  const std::size_t tt = rep.t, tp = rep.t_prime;

  try {
    std::size_t side = std::min(tt * tt * tt, tt);
    auto bc = find_biclique(g, side, tp);
    if (bc) {
      rep.biclique = bc;
      rep.b_prime = VertexSet(detail::spread_subset(g, bc->a, tt, tt));
      trace.push_back("case1: biclique found, |B'|=" + std::to_string(rep.b_prime.size()));
      auto o = detail::biclique_embed(t, g, *bc, rep.b_prime.ids(), tp, trace);
      if (o && detail::accept(t, g, *o)) {
        rep.outcome = std::move(*o);
        rep.branch = "case1";
        return rep;
      }
      if (o) trace.push_back("case1: greedy completion stuck");
    } else {
      trace.push_back("case1: no K_{" + std::to_string(side) + "," + std::to_string(tp) + "}");
    }
  } catch (const SizeError& e) {
    trace.push_back(std::string("case1 skipped: ") + e.what());
  } catch (const InputError& e) {
    trace.push_back(std::string("case1 skipped: ") + e.what());
  }

  Vertex z = separator(t).z;
  Vertex w = z;
  if (2 * tp < t.order()) w = split_at_threshold(t, z, tp).value_or(z);
  rep.split = w;
  Rooting rt = root_at(t, w);
  auto comps = components_without(t, {w});
  EmbedState st(t, g);
  st.place(w, v);
  Vertex blocked = kUnset;
  if (!comps.empty()) {
    std::vector<Vertex> first;
    HostMask in_first(t.order(), 0);
    for (Vertex a : comps.front()) in_first[a] = 1;
    for (Vertex a : rt.bfs_order)
      if (in_first[a]) first.push_back(a);
    GrowPolicy p;
    p.chooser = detail::highest_degree();
    blocked = grow(st, first, p);
  }
  for (std::size_t k = 1; k < comps.size() && blocked == kUnset; ++k) {
    std::vector<std::size_t> sizes;
    auto layer = detail::escape_layers(g, st, tp, sizes);
    rep.escape_sizes.push_back(sizes);
    HostMask in_k(t.order(), 0);
    for (Vertex a : comps[k]) in_k[a] = 1;
    std::vector<Vertex> order;
    for (Vertex a : rt.bfs_order)
      if (in_k[a]) order.push_back(a);
    GrowPolicy p;
    p.admissible = [&](Vertex a, Vertex x) {
      auto level = static_cast<std::size_t>(rt.depth[a] - 1);
      return layer[x] > (level < tp ? tp - level : 0);
    };
    p.chooser = detail::highest_degree();
    blocked = grow(st, order, p);
    if (blocked != kUnset) {
      trace.push_back("case2: component " + std::to_string(k) + " stuck in its escape levels; retrying greedily");
      for (Vertex a : order) st.unplace(a);
      GrowPolicy plain;
      plain.chooser = detail::highest_degree();
      blocked = grow(st, order, plain);
    }
  }
  EmbedOutcome o = st.outcome();
  if (blocked != kUnset) mark_stuck(o, st, blocked);
  if (detail::accept(t, g, o)) {
    rep.outcome = std::move(o);
    rep.branch = "case2";
    return rep;
  }
  trace.push_back("case2: stuck at tree vertex " + std::to_string(o.stuck_at));
  rep.outcome = o;

  AnchorConstraint pin;
  pin.pins = {{w, v}};
  EmbedOutcome fb = greedy_embed(t, g, pin);
  if (detail::accept(t, g, fb)) {
    rep.outcome = std::move(fb);
    rep.branch = "fallback";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hosts of minimum degree close to m

struct BranchAttempt {
  std::string name;
  std::string result;  // SUCCESS, STUCK, SKIPPED or ERROR
  std::string detail;
};

struct Theorem2Report {
  EmbedOutcome outcome;
  std::string branch;  // name of the winning attempt, or none
  std::size_t m = 0;
  std::vector<BranchAttempt> attempts;
  std::size_t pieces = 0;
  bool condition_a = true;
  bool condition_b = true;
  bool condition_c = true;
  std::vector<std::string> warnings;
  bool success() const { return outcome.success(); }
};

namespace detail {

/// Separator on x; components with more than one vertex are steered into the region,
/// largest first while they fit, everything else out of it.
inline EmbedOutcome cross_embed(const Tree& t, const Graph& g, Vertex x, const HostMask& region) {
  Vertex z = separator(t).z;
  Rooting rt = root_at(t, z);
  std::vector<std::uint8_t> inside(t.order(), 0);
  std::size_t room = 0;
  for (std::size_t y = 0; y < g.order(); ++y) room += region[y] && static_cast<Vertex>(y) != x ? 1 : 0;
  for (const auto& comp : components_without(t, {z})) {
    if (comp.size() < 2 || comp.size() > room) continue;
    room -= comp.size();
    for (Vertex a : comp) inside[a] = 1;
  }
  EmbedState st(t, g);
  st.place(z, x);
  GrowPolicy p;
  p.chooser = [&](const EmbedState& s, Vertex a, const std::vector<Vertex>& cands) {
    HostMask wrong(g.order(), 0);
    for (Vertex y : cands) wrong[y] = (region[y] != 0) != (inside[a] != 0);
    return highest_degree(wrong)(s, a, cands);
  };
  Vertex blocked = grow(st, rt.bfs_order, p);
  EmbedOutcome o = st.outcome();
  if (blocked != kUnset) mark_stuck(o, st, blocked);
  return o;
}

/// Fill inside a dense expansion treated as a graph of its own.
inline EmbedOutcome expansion_fill(const Tree& t, const Graph& g, const DenseWitness& w, Rational eps, bool strict,
                                   std::string& detail) {
  InducedSubgraph sub = induced_subgraph(g, w.expansion);
  FillTask task;
  task.host = sub.graph;
  task.tree = t;
  task.epsilon = eps;
  task.strict = strict;
  FillReport r;
  if (w.kind == DenseKind::Bipartite) {
    std::vector<Vertex> a, b;
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
      if (w.expansion_sides.a.contains(sub.to_parent[i])) a.push_back(static_cast<Vertex>(i));
      if (w.expansion_sides.b.contains(sub.to_parent[i])) b.push_back(static_cast<Vertex>(i));
    }
    task.sides = BipartitePair{VertexSet(a), VertexSet(b)};
    r = fill_bipartite(task);
  } else {
    Vertex hub = max_degree_vertex(sub.graph);
    if (sub.graph.degree(hub) + 1 == sub.graph.order()) {
      task.universal = hub;
      r = fill_with_universal(task);
    } else {
      r = fill_almost_complete(task, separator(t).z, hub);
    }
  }
  detail = r.diag.branch;
  return to_host(std::move(r.outcome), sub.to_parent);
}

/// (|H|-1-m)/(|H|-1) kept inside (0, 1/2).
inline Rational slack_epsilon(std::size_t h, std::size_t m, const Rational& fallback) {
  if (h < 2 || h - 1 <= m) return fallback;
  Rational e(static_cast<std::int64_t>(h - 1 - m), static_cast<std::int64_t>(h - 1));
  return std::min(e, Rational(499, 1000));
}

}  // namespace detail

/// Dispatcher over the embedding strategies for hosts with maximum degree at least m and
/// minimum degree at least (1-gamma)m. The first validated success wins; otherwise every
/// attempt is listed.
inline Theorem2Report theorem2_embed(const Tree& t, const Graph& g, const Constants& c, std::uint64_t seed = 0) {
  validate(c);
  Theorem2Report rep;
  const std::size_t m = detail::pipeline_m(t, c);
  rep.m = m;
  const Rational gamma = c.gamma_value();
  auto prof = degree_profile(g);
  if (t.edge_count() > m) rep.warnings.push_back("hypothesis: tree has more than m edges");
  if (prof.max_degree < m) rep.warnings.push_back("hypothesis: maximum degree below m");
  if (Rational(static_cast<std::int64_t>(prof.min_degree)) < (1 - gamma) * static_cast<std::int64_t>(m)) {
    rep.warnings.push_back("hypothesis: minimum degree below (1-gamma)m");
  }
  rep.branch = "none";
  rep.outcome.embedding = empty_embedding(t);
  if (g.order() == 0 || m == 0) {
    if (g.order() > 0) {
      rep.outcome = greedy_embed(t, g);
      if (detail::accept(t, g, rep.outcome)) rep.branch = "greedy";
    }
    return rep;
  }

  std::size_t best_placed = 0;
  auto run = [&](const std::string& name, const std::function<EmbedOutcome(std::string&)>& body) {
    BranchAttempt at{name, "STUCK", ""};
    try {
      EmbedOutcome o = body(at.detail);
      if (detail::accept(t, g, o)) {
        at.result = "SUCCESS";
        rep.outcome = std::move(o);
        rep.branch = name;
      } else if (detail::placed_count(o) > best_placed) {
        best_placed = detail::placed_count(o);
        rep.outcome = std::move(o);
      }
    } catch (const std::exception& e) {
      at.result = "ERROR";
      at.detail = e.what();
    }
    rep.attempts.push_back(std::move(at));
    return rep.outcome.success();
  };
  auto skip = [&](const std::string& name, const std::string& why) { rep.attempts.push_back({name, "SKIPPED", why}); };

  auto lp = leaf_profile(t);
  auto leaf_cap = std::max<std::int64_t>(1, ceil_of(c.epsilon * static_cast<std::int64_t>(m)));
  if (t.order() > 2 && static_cast<std::int64_t>(lp.max_leaf_children) >= leaf_cap) {
    if (run("leaf-heavy", [&](std::string&) { return star_heavy_embed(t, g, lp.argmax); })) return rep;
  } else {
    skip("leaf-heavy", "no vertex with eps m leaf children");
  }

  auto sparsity = is_locally_sparse(g, m, SearchMode::Peeling).verdict;
  if (t.edge_count() > m) {
    skip("sparse", "tree larger than m");
  } else if (sparsity == SparsityVerdict::NotSparse) {
    skip("sparse", "host is not locally sparse");
  } else if (run("sparse", [&](std::string& d) {
               d = to_string(sparsity);
               return embed_sparse(t, g, max_degree_vertex(g), m);
             })) {
    return rep;
  }

  std::optional<DenseWitness> spot;
  try {
    spot = find_dense_seed(g, m, c.alpha).witness;
  } catch (const std::exception&) {
  }
  if (spot) {
    skip("no-dense", std::string("host has a ") + to_string(spot->kind) + " spot");
  } else if (run("no-dense", [&](std::string& d) {
               auto r = embed_no_dense(t, g, m, c.alpha, seed, c.retries);
               d = r.branch;
               return r.outcome;
             })) {
    return rep;
  }

  DecompositionResult dec;
  try {
    dec = dense_decomposition(g, m, c.alpha, gamma);
  } catch (const std::exception& e) {
    rep.attempts.push_back({"decomposition", "ERROR", e.what()});
  }
  rep.pieces = dec.pieces.size();
  rep.condition_a = dec.condition_a;
  rep.condition_b = dec.condition_b;
  rep.condition_c = dec.condition_c;
  const auto gm2 = 2 * gamma * static_cast<std::int64_t>(m);

  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    const auto& w = dec.pieces[i].witness;
    std::string tag = "[" + std::to_string(i) + "]";
    if (w.expansion.size() >= m + 1) {
      if (run("big-fill" + tag, [&](std::string& d) { return detail::expansion_fill(t, g, w, c.epsilon, false, d); }))
        return rep;
    } else {
      skip("big-fill" + tag, "expansion has fewer than m+1 vertices");
    }
  }

  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    const auto& piece = dec.pieces[i];
    std::string tag = "[" + std::to_string(i) + "]";
    HostMask in = piece.witness.expansion.mask(g.order());
    Vertex into = kUnset, out = kUnset;
    std::size_t best_into = 0, best_out = 0;
    for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x) {
      std::size_t d = degree_into(g, x, in);
      if (!in[x] && (into == kUnset || d > best_into)) {
        into = x;
        best_into = d;
      }
      if (in[x] && (out == kUnset || g.degree(x) - d > best_out)) {
        out = x;
        best_out = g.degree(x) - d;
      }
    }
    if (into != kUnset && Rational(static_cast<std::int64_t>(best_into)) > gm2) {
      if (run("cross-into" + tag, [&](std::string& d) {
            d = "vertex " + std::to_string(into) + " sees " + std::to_string(best_into);
            return detail::cross_embed(t, g, into, in);
          }))
        return rep;
    } else {
      skip("cross-into" + tag, "condition (A) holds");
    }
    if (out != kUnset && Rational(static_cast<std::int64_t>(best_out)) > gm2) {
      HostMask outside(g.order(), 0);
      for (std::size_t x = 0; x < g.order(); ++x) outside[x] = !in[x];
      if (run("cross-out" + tag, [&](std::string& d) {
            d = "vertex " + std::to_string(out) + " sees " + std::to_string(best_out) + " outside";
            return detail::cross_embed(t, g, out, outside);
          }))
        return rep;
    } else {
      skip("cross-out" + tag, "condition (B) holds");
    }
  }
  if (!dec.pieces.empty() && !dec.condition_c) {
    HostMask uni(g.order(), 0);
    for (const auto& p : dec.pieces)
      for (Vertex x : p.witness.expansion) uni[x] = 1;
    Vertex best = kUnset;
    std::size_t most = 0;
    for (Vertex x : dec.residual) {
      std::size_t d = degree_into(g, x, uni);
      if (best == kUnset || d > most) {
        best = x;
        most = d;
      }
    }
    if (best != kUnset && run("cross-union", [&](std::string& d) {
          d = "vertex " + std::to_string(best) + " sees " + std::to_string(most);
          return detail::cross_embed(t, g, best, uni);
        }))
      return rep;
  }

  for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
    const auto& w = dec.pieces[i].witness;
    std::string tag = "[" + std::to_string(i) + "]";
    if (w.kind == DenseKind::Clique) {
      Vertex v = max_degree_vertex(g, [&](Vertex x) { return w.expansion.contains(x); });
      if (run("spill" + tag, [&](std::string& d) {
            auto r = fill_and_spill(t, g, w.expansion, v, gamma);
            d = r.diag.branch;
            return r.outcome;
          }))
        return rep;
    } else {
      BipartitePair sides = w.expansion_sides;
      auto pick = [&](const VertexSet& s) { return max_degree_vertex(g, [&](Vertex x) { return s.contains(x); }); };
      Vertex v = pick(sides.a);
      if (v == kUnset || g.degree(v) < t.edge_count()) {
        std::swap(sides.a, sides.b);
        v = pick(sides.a);
      }
      if (run("spill" + tag, [&](std::string& d) {
            auto r = fill_bipartite_spill(t, g, sides, v);
            d = r.diag.branch;
            return r.outcome;
          }))
        return rep;
    }
    Rational eps = detail::slack_epsilon(w.expansion.size(), t.edge_count(), c.epsilon);
    if (w.expansion.size() >= t.order()) {
      if (run("final-fill" + tag, [&](std::string& d) { return detail::expansion_fill(t, g, w, eps, false, d); }))
        return rep;
    } else {
      skip("final-fill" + tag, "expansion smaller than the tree");
    }
  }

  if (run("greedy", [&](std::string&) { return greedy_embed(t, g); })) return rep;
  run("greedy-dfs", [&](std::string&) { return greedy_embed(t, g, {}, Traversal::Dfs); });
  return rep;
}

}  // namespace treeembed
