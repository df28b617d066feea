#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treeembed/embed_core.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/matching.hpp"
#include "treeembed/rational.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

namespace treeembed {

/// Target subgraph H' (as a graph of its own), the tree to place and the slack epsilon.
/// `sides` is required by the bipartite lemmas, `universal` by the ones using a vertex
/// that sees everything.
struct FillTask {
  Graph host;
  Tree tree;
  Rational epsilon{1, 250};
  std::optional<Vertex> universal;
  std::optional<BipartitePair> sides;
  bool strict = false;
};

struct FillDiagnostics {
  std::string branch;
  std::size_t stable_size = 0;
  std::size_t s_prime_size = 0;
  bool s_prime_bound_ok = true;
  std::size_t bad_size = 0;
  Rational bad_bound{0};
  bool bad_bound_ok = true;
  std::size_t unused_bad_at_hall = 0;
  std::size_t happy_parents = 0;
  std::size_t unhappy_parents = 0;
  std::size_t overloads = 0;  // parents moved onto the universal vertex
  std::size_t padding = 0;    // subdivisions added before embedding
  std::size_t spill = 0;      // tree vertices routed outside H'
  std::size_t pairs_holding = 0;
  std::size_t pairs_total = 0;
  std::vector<std::string> warnings;
};

struct FillReport {
  EmbedOutcome outcome;
  FillDiagnostics diag;
  bool success() const { return outcome.success(); }
};

namespace detail {

inline Vertex pick_max(const std::vector<Vertex>& cands, const std::function<std::size_t(Vertex)>& score) {
  Vertex best = kUnset;
  std::size_t best_score = 0;
  for (Vertex x : cands) {
    std::size_t s = score(x);
    if (best == kUnset || s > best_score) {
      best = x;
      best_score = s;
    }
  }
  return best;
}

inline EmbedOutcome stuck_outcome(const EmbedState& st, Vertex a) {
  EmbedOutcome o = st.outcome();
  mark_stuck(o, st, a);
  return o;
}

inline HostMask single_mask(std::size_t n, Vertex v) {
  HostMask m(n, 0);
  if (v != kUnset) m[v] = 1;
  return m;
}

/// Stable-set filling: greedy phase up to the parents of the far half of the stable set,
/// Bad-set draining while embedding the rest, Hall completion of the near half.
/// `region` restricts the host (empty: all of g); `overload` is a vertex seeing all of
/// the region that is kept back for a parent with too many pending children.
inline EmbedOutcome stable_fill(const Tree& t, const Graph& g, Vertex z, Vertex z_image, const HostMask& region,
                                Vertex overload, const Rational& eps, FillDiagnostics& d) {
  EmbedState st(t, g);
  if (!g.contains(z_image)) throw InputError("image of z out of range");
  if (!region.empty() && !region[z_image]) throw InputError("image of z lies outside the target subgraph");
  st.place(z, z_image);
  if (t.order() == 1) return st.outcome();
  const std::size_t m_edges = t.edge_count();
  Rooting rt = root_at(t, z);

  auto stable = stable_set_s(t, z);
  const auto& s_all = stable.vertices;
  d.stable_size = s_all.size();

  // Near half S': whole sibling groups, closest to z first.
  std::map<std::pair<int, Vertex>, std::vector<Vertex>> groups;
  for (Vertex s : s_all) groups[{rt.depth[s], rt.parent[s]}].push_back(s);
  HostMask near(t.order(), 0), far(t.order(), 0);
  std::size_t near_count = 0;
  for (const auto& [key, members] : groups) {
    bool take = 2 * near_count < s_all.size();
    for (Vertex s : members) (take ? near : far)[s] = 1;
    if (take) near_count += members.size();
  }
  d.s_prime_size = near_count;
  // |S'| is an integer, so the half is rounded up.
  const auto half_up = static_cast<std::int64_t>(s_all.size() + s_all.size() % 2);
  d.s_prime_bound_ok = Rational(static_cast<std::int64_t>(2 * near_count)) <=
                       Rational(half_up) + eps * static_cast<std::int64_t>(m_edges);
  if (!d.s_prime_bound_ok) d.warnings.push_back("near half of the stable set exceeds ceil(|S|/2) + eps m'/2");

  GrowPolicy pol;
  pol.allowed = region;
  if (overload != kUnset) {
    pol.preferred = single_mask(g.order(), overload);
    pol.preference = Preference::Avoid;
  }

  // Greedy phase: the component of T - N(S - S') containing z.
  HostMask cut(t.order(), 0);
  for (Vertex s = 0; s < static_cast<Vertex>(t.order()); ++s) {
    if (!far[s]) continue;
    cut[s] = 1;
    if (rt.parent[s] != kUnset) cut[rt.parent[s]] = 1;
    for (Vertex c : rt.children[s]) cut[c] = 1;
  }
  cut[z] = 0;
  HostMask reach(t.order(), 0);
  std::vector<Vertex> first;
  for (Vertex a : rt.bfs_order) {
    reach[a] = a == z || (!cut[a] && reach[rt.parent[a]]);
    if (reach[a] && a != z) first.push_back(a);
  }
  if (Vertex b = grow(st, first, pol); b != kUnset) return stuck_outcome(st, b);
  for (Vertex s = 0; s < static_cast<Vertex>(t.order()); ++s)
    if (near[s]) st.unplace(s);

  // Bad: hosts not good for more than half of S'.
  auto good_for = [&](Vertex u, Vertex s) {
    for (Vertex b : t.neighbors(s)) {
      if (st.placed(b) && !g.adjacent(u, st.image(b))) return false;
    }
    return true;
  };
  HostMask bad(g.order(), 0);
  std::size_t region_size = 0;
  for (Vertex u = 0; u < static_cast<Vertex>(g.order()); ++u) {
    if (!region.empty() && !region[u]) continue;
    ++region_size;
    std::size_t missing = 0;
    for (Vertex s = 0; s < static_cast<Vertex>(t.order()); ++s)
      if (near[s] && !good_for(u, s)) ++missing;
    if (2 * missing > near_count) {
      bad[u] = 1;
      ++d.bad_size;
    }
  }
  d.bad_bound = eps * 8 * static_cast<std::int64_t>(region_size > 0 ? region_size - 1 : 0);
  d.bad_bound_ok = Rational(static_cast<std::int64_t>(d.bad_size)) <= d.bad_bound;

  auto unused_bad_nbrs = [&](Vertex x) {
    std::size_t c = 0;
    for (Vertex y : g.neighbors(x)) c += bad[y] && !st.used(y) ? 1 : 0;
    return c;
  };
  auto unused_bad_total = [&] {
    std::size_t c = 0;
    for (Vertex y = 0; y < static_cast<Vertex>(g.order()); ++y) c += bad[y] && !st.used(y) ? 1 : 0;
    return c;
  };
  auto bad_first = [&](const std::vector<Vertex>& cands) {
    for (Vertex x : cands)
      if (bad[x]) return x;
    return cands.front();
  };

  // Draining phase.
  for (Vertex a : rt.bfs_order) {
    if (st.placed(a) || near[a]) continue;
    auto cands = ranked_candidates(st, a, pol);
    if (cands.empty()) return stuck_outcome(st, a);
    std::vector<Vertex> kids;
    for (Vertex c : rt.children[a])
      if (far[c]) kids.push_back(c);
    Vertex x;
    if (kids.empty()) {
      x = far[a] ? bad_first(cands) : cands.front();
    } else {
      x = pick_max(cands, unused_bad_nbrs);
      bool happy = 2 * std::min(kids.size(), unused_bad_nbrs(x)) >= kids.size();
      bool can_overload = overload != kUnset && !st.used(overload) &&
                          std::find(cands.begin(), cands.end(), overload) != cands.end();
      if (!happy && can_overload) {
        x = overload;
        ++d.overloads;
      } else {
        ++(happy ? d.happy_parents : d.unhappy_parents);
      }
    }
    st.place(a, x);
    for (Vertex c : kids) {
      auto kc = ranked_candidates(st, c, pol);
      if (kc.empty()) return stuck_outcome(st, c);
      st.place(c, bad_first(kc));
    }
  }

  // Hall completion of S'.
  d.unused_bad_at_hall = unused_bad_total();
  std::vector<Vertex> left;
  std::vector<std::vector<Vertex>> cand;
  for (Vertex s = 0; s < static_cast<Vertex>(t.order()); ++s) {
    if (!near[s]) continue;
    left.push_back(s);
    std::vector<Vertex> c;
    for (Vertex u : st.open_slots(s))
      if (region.empty() || region[u]) c.push_back(u);
    cand.push_back(std::move(c));
  }
  BipartiteMatcher matcher(cand, g.order());
  matcher.solve();
  if (!matcher.saturates_left()) {
    EmbedOutcome o = st.outcome();
    auto [w, nbrs] = matcher.hall_violator();
    HallViolator hv;
    for (Vertex i : w) hv.tree_vertices.push_back(left[i]);
    std::sort(hv.tree_vertices.begin(), hv.tree_vertices.end());
    hv.neighborhood = nbrs;
    o.stuck_at = hv.tree_vertices.front();
    o.stuck_parent = rt.parent[o.stuck_at];
    o.hall_violator = std::move(hv);
    return o;
  }
  for (std::size_t i = 0; i < left.size(); ++i) st.place(left[i], matcher.match_of_left(i));
  return st.outcome();
}

inline void check_epsilon(const FillTask& task) {
  if (task.epsilon <= Rational(0) || task.epsilon >= Rational(1, 2)) {
    throw InputError("epsilon must lie in (0, 1/2), got " + to_string(task.epsilon));
  }
}

inline void warn_leaf_cap(const Tree& t, const Rational& cap, const char* what, FillDiagnostics& d) {
  auto lp = leaf_profile(t);
  if (t.order() > 2 && Rational(static_cast<std::int64_t>(lp.max_leaf_children)) > cap) {
    d.warnings.push_back(std::string("hypothesis: a vertex has more than ") + what + " leaf children");
  }
}

inline void warn_min_degree(const Graph& g, const Rational& bound, const char* what, FillDiagnostics& d) {
  if (Rational(static_cast<std::int64_t>(degree_profile(g).min_degree)) < bound) {
    d.warnings.push_back(std::string("hypothesis: minimum degree below ") + what);
  }
}

/// Largest-degree host vertex inside the mask (all when empty), skipping `skip`.
inline Vertex best_host(const Graph& g, const HostMask& mask, Vertex skip = kUnset) {
  return max_degree_vertex(g, [&](Vertex x) { return x != skip && (mask.empty() || mask[x]); });
}

/// Copies an embedding of a subtree into an embedding state of the full tree.
inline void merge_sub(EmbedState& st, const SubTree& sub, const Embedding& f) {
  for (Vertex a = 0; a < static_cast<Vertex>(f.size()); ++a) {
    Vertex orig = sub.to_parent[a];
    if (f[a] != kUnset && !st.placed(orig)) st.place(orig, f[a]);
  }
}

}  // namespace detail

/// Embeds the tree into an almost complete host with z mapped to z_image.
inline FillReport fill_almost_complete(const FillTask& task, Vertex z, Vertex z_image) {
  const Tree& t = task.tree;
  const Graph& h = task.host;
  detail::check_epsilon(task);
  if (!t.contains(z)) throw InputError("z is not a tree vertex");
  if (!h.contains(z_image)) throw InputError("image of z out of range");
  FillReport rep;
  auto& d = rep.diag;
  d.branch = "almost-complete";
  const auto n1 = static_cast<std::int64_t>(h.order()) - 1;
  const auto m_edges = static_cast<std::int64_t>(t.edge_count());
  bool in_range = 2 * m_edges >= n1 && Rational(m_edges) <= (1 - task.epsilon) * n1;
  if (!in_range) {
    std::string msg = "tree size " + std::to_string(m_edges) + " outside [(|H'|-1)/2, (1-eps)(|H'|-1)] for |H'|=" +
                      std::to_string(h.order());
    if (task.strict) throw InputError(msg);
    d.warnings.push_back("hypothesis: " + msg);
  }
  if (task.epsilon >= Rational(1, 200)) d.warnings.push_back("hypothesis: epsilon not below 1/200");
  detail::warn_min_degree(h, (1 - 2 * task.epsilon) * n1, "(1-2eps)(|H'|-1)", d);
  detail::warn_leaf_cap(t, task.epsilon * m_edges / 2, "eps m'/2", d);
  rep.outcome = detail::stable_fill(t, h, z, z_image, {}, kUnset, task.epsilon, d);
  if (!d.bad_bound_ok) d.warnings.push_back("Bad exceeds 8 eps (|H'|-1)");
  return rep;
}

/// Embeds a tree with at most |H'|-1 edges into H', which has a vertex seeing all others.
/// The tree is padded by subdividing leaf edges to exactly |H'|-1 edges and contracted
/// back afterwards.
inline FillReport fill_with_universal(const FillTask& task) {
  const Tree& t = task.tree;
  const Graph& h = task.host;
  detail::check_epsilon(task);
  if (!task.universal) throw InputError("fill_with_universal needs a universal vertex");
  const Vertex v = *task.universal;
  if (!h.contains(v)) throw InputError("universal vertex out of range");
  if (h.degree(v) + 1 != h.order()) {
    throw InputError("vertex " + std::to_string(v) + " is not universal: degree " + std::to_string(h.degree(v)) +
                     " in a host of order " + std::to_string(h.order()));
  }
  const std::size_t target = h.order() - 1;
  if (t.edge_count() > target) {
    throw InputError("tree has " + std::to_string(t.edge_count()) + " edges but the host only " + std::to_string(h.order()) +
                     " vertices");
  }
  FillReport rep;
  auto& d = rep.diag;
  d.branch = "universal";
  const auto m1 = static_cast<std::int64_t>(target);
  if (task.epsilon >= Rational(1, 200)) d.warnings.push_back("hypothesis: epsilon not below 1/200");
  detail::warn_min_degree(h, (1 - 2 * task.epsilon) * m1, "(1-2eps)m'", d);
  detail::warn_leaf_cap(t, task.epsilon * m1 / 2, "eps m'/2", d);

  if (t.order() == 1) {
    EmbedState st(t, h);
    Vertex x = detail::best_host(h, {}, v);
    st.place(0, x == kUnset ? v : x);
    rep.outcome = st.outcome();
    return rep;
  }

  // Padding: subdivide the edge above a leaf whose parent has the most leaf children.
  std::vector<Edge> edges = t.edges();
  std::size_t n = t.order();
  std::vector<Vertex> first_sub(t.order(), kUnset);
  {
    std::vector<std::vector<Vertex>> adj(n);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    while (n - 1 < target) {
      std::vector<std::size_t> lc(n, 0);
      for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
        if (adj[a].size() == 1) ++lc[adj[a].front()];
      Vertex leaf = kUnset;
      for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a) {
        if (adj[a].size() != 1) continue;
        if (leaf == kUnset || lc[adj[a].front()] > lc[adj[leaf].front()]) leaf = a;
      }
      Vertex p = adj[leaf].front();
      auto x = static_cast<Vertex>(n++);
      adj.emplace_back();
      std::replace(adj[p].begin(), adj[p].end(), leaf, x);
      adj[leaf] = {x};
      adj[x] = {p, leaf};
      if (first_sub[leaf] == kUnset) first_sub[leaf] = x;
      ++d.padding;
    }
    edges.clear();
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
      for (Vertex b : adj[a])
        if (a < b) edges.emplace_back(a, b);
  }
  Tree padded = Tree::from_edges(n, edges);
  Vertex z = separator(padded).z;
  Vertex z_image = detail::best_host(h, {}, v);
  EmbedOutcome po = detail::stable_fill(padded, h, z, z_image, {}, v, task.epsilon, d);

  // Contract each padded leaf path onto its first subdivision vertex.
  Embedding f(t.order(), kUnset);
  for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a) {
    f[a] = first_sub[a] == kUnset ? po.embedding[a] : po.embedding[first_sub[a]];
  }
  EmbedOutcome o;
  o.embedding = f;
  o.status = po.status;
  o.notes = po.notes;
  if (!po.success()) {
    o.stuck_at = po.stuck_at < static_cast<Vertex>(t.order()) ? po.stuck_at : kUnset;
    o.hall_violator = po.hall_violator;
    if (o.stuck_at == kUnset) o.notes.push_back("stuck at a subdivision vertex of the padded tree");
  }
  for (Vertex a : po.placement_order)
    if (a < static_cast<Vertex>(t.order())) o.placement_order.push_back(a);
  if (o.success() && !validate_embedding(t, h, f).complete_and_valid()) {
    throw std::logic_error("contracted embedding failed validation");
  }
  if (!d.bad_bound_ok) d.warnings.push_back("Bad exceeds 8 eps |H'|");
  rep.outcome = std::move(o);
  return rep;
}

/// Embeds T (m edges) into G using the subgraph H' and a vertex v of H' with degree m:
/// either v sees m vertices of H', or the separator goes to v and some components are
/// routed outside H'.
inline FillReport fill_and_spill(const Tree& t, const Graph& g, const VertexSet& h_prime, Vertex v, const Rational& gamma) {
  if (!g.contains(v)) throw InputError("v out of range");
  if (!h_prime.contains(v)) throw InputError("v is not a vertex of H'");
  for (Vertex x : h_prime)
    if (!g.contains(x)) throw InputError("H' vertex out of range");
  if (gamma <= Rational(0)) throw InputError("gamma must be positive");
  FillReport rep;
  auto& d = rep.diag;
  const std::size_t m = t.edge_count();
  const auto mi = static_cast<std::int64_t>(m);
  HostMask in_h = h_prime.mask(g.order());
  HostMask out_h(g.order(), 0);
  for (std::size_t x = 0; x < g.order(); ++x) out_h[x] = !in_h[x];

  const Rational slack = gamma * 3 * mi;
  if (Rational(static_cast<std::int64_t>(h_prime.size())) > Rational(mi + 1) + slack) {
    d.warnings.push_back("hypothesis: H' has more than m+1+3 gamma m vertices");
  }
  auto hsub = induced_subgraph(g, h_prime);
  detail::warn_min_degree(hsub.graph, Rational(mi) - slack, "m - 3 gamma m inside H'", d);
  std::vector<Vertex> outside_ids;
  for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x)
    if (out_h[x]) outside_ids.push_back(x);
  if (!outside_ids.empty()) {
    detail::warn_min_degree(induced_subgraph(g, VertexSet(outside_ids)).graph, Rational(mi) - slack,
                            "m - 3 gamma m outside H'", d);
  }
  if (g.degree(v) < m) d.warnings.push_back("hypothesis: v has degree below m");
  detail::warn_leaf_cap(t, gamma * mi, "gamma m", d);

  std::vector<Vertex> inside_nbrs, outside_nbrs;
  for (Vertex x : g.neighbors(v)) (in_h[x] ? inside_nbrs : outside_nbrs).push_back(x);

  if (inside_nbrs.size() >= m) {
    d.branch = "universal";
    std::vector<Vertex> ids(inside_nbrs.begin(), inside_nbrs.begin() + static_cast<long>(m));
    ids.push_back(v);
    VertexSet block(ids);
    auto sub = induced_subgraph(g, block);
    FillTask task;
    task.host = sub.graph;
    task.tree = t;
    task.epsilon = gamma < Rational(1, 2) ? gamma : Rational(1, 4);
    task.universal = static_cast<Vertex>(std::lower_bound(block.begin(), block.end(), v) - block.begin());
    FillReport inner = fill_with_universal(task);
    inner.diag.branch = "universal";
    inner.diag.warnings.insert(inner.diag.warnings.begin(), d.warnings.begin(), d.warnings.end());
    for (Vertex& x : inner.outcome.embedding)
      if (x != kUnset) x = sub.to_parent[x];
    return inner;
  }

  const std::size_t a = m - inside_nbrs.size();
  auto sep = separator(t);
  const Vertex z = sep.z;
  Rooting rt = root_at(t, z);
  EmbedState st(t, g);
  st.place(z, v);
  const auto& comps = sep.components;
  std::size_t s = 0;
  for (std::size_t i = 0; i < std::min(a, comps.size()); ++i) s += comps[i].size();

  // Roots of the listed components first (so they all get neighbours of v), then the rest.
  auto route = [&](const std::vector<std::size_t>& which, const HostMask& where) -> Vertex {
    HostMask in_c(t.order(), 0);
    std::vector<Vertex> roots, order;
    for (std::size_t i : which) {
      for (Vertex x : comps[i]) {
        in_c[x] = 1;
        if (rt.parent[x] == z) roots.push_back(x);
      }
    }
    for (Vertex x : rt.bfs_order)
      if (in_c[x]) order.push_back(x);
    GrowPolicy pol;
    pol.allowed = where;
    if (Vertex b = grow(st, roots, pol); b != kUnset) return b;
    return grow(st, order, pol);
  };

  if (Rational(static_cast<std::int64_t>(s)) >= slack || comps.size() < a) {
    d.branch = "spill-components";
    // Components with total size between 3 gamma m and m/2 go outside, at most one per
    // outside neighbour of v.
    std::vector<std::size_t> chosen, others;
    std::size_t total = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      bool take = chosen.size() < outside_nbrs.size() && Rational(static_cast<std::int64_t>(total)) < slack &&
                  2 * (total + comps[i].size()) <= m;
      if (take) {
        chosen.push_back(i);
        total += comps[i].size();
      } else {
        others.push_back(i);
      }
    }
    Vertex b = route(chosen, out_h);
    if (b == kUnset) b = route(others, in_h);
    d.spill = total;
    rep.outcome = st.outcome();
    if (b != kUnset) mark_stuck(rep.outcome, st, b);
    return rep;
  }

  d.branch = "drain";
  // F: the a largest components, embedded outside H'.
  HostMask in_f(t.order(), 0);
  std::vector<std::size_t> f_comps;
  for (std::size_t i = 0; i < a; ++i) {
    for (Vertex x : comps[i]) in_f[x] = 1;
    f_comps.push_back(i);
    d.spill += comps[i].size();
  }
  if (Vertex b = route(f_comps, out_h); b != kUnset) {
    rep.outcome = detail::stuck_outcome(st, b);
    return rep;
  }
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < static_cast<Vertex>(t.order()); ++x)
    if (!in_f[x]) rest.push_back(x);
  SubTree sub = extract_subtree(t, rest, z);
  HostMask region(g.order(), 0);
  region[v] = 1;
  for (Vertex x : inside_nbrs) region[x] = 1;
  EmbedOutcome inner = detail::stable_fill(sub.tree, g, sub.from_parent[z], v, region, kUnset, gamma, d);
  st.unplace(z);
  detail::merge_sub(st, sub, inner.embedding);
  rep.outcome = st.outcome();
  if (!inner.success()) {
    rep.outcome.status = EmbedStatus::Stuck;
    if (inner.stuck_at != kUnset) rep.outcome.stuck_at = sub.to_parent[inner.stuck_at];
    if (inner.hall_violator) {
      HallViolator hv = *inner.hall_violator;
      for (Vertex& x : hv.tree_vertices) x = sub.to_parent[x];
      rep.outcome.hall_violator = hv;
    }
  }
  if (Rational(static_cast<std::int64_t>(d.bad_size)) > gamma * 24 * mi) d.warnings.push_back("Bad exceeds 24 gamma m");
  return rep;
}

namespace detail {

struct BipartiteSetup {
  Bipartition colors;
  HostMask side_a, side_b;
  std::size_t m_edges = 0;
};

inline BipartiteSetup bipartite_setup(const FillTask& task) {
  if (!task.sides) throw InputError("bipartite filling needs the sides of H'");
  BipartiteSetup b;
  b.colors = bipartition(task.tree);
  b.side_a = task.sides->a.mask(task.host.order());
  b.side_b = task.sides->b.mask(task.host.order());
  for (Vertex x : task.sides->a)
    if (!task.host.contains(x)) throw InputError("side vertex out of range");
  for (Vertex x : task.sides->b)
    if (!task.host.contains(x)) throw InputError("side vertex out of range");
  b.m_edges = task.tree.edge_count();
  return b;
}

/// Places colour class C on side A and D on side B.
inline std::function<bool(Vertex, Vertex)> side_rule(const BipartiteSetup& b) {
  return [&b](Vertex a, Vertex x) { return b.colors.color[a] ? b.side_a[x] != 0 : b.side_b[x] != 0; };
}

/// Chooser for vertices that still have children to place: the candidate with the most
/// unused neighbours, smallest id on ties. Leaves take the first candidate; `avoid` is
/// only taken when nothing else is left.
inline Chooser roomiest(Vertex avoid = kUnset) {
  return [avoid](const EmbedState& st, Vertex a, const std::vector<Vertex>& cands) {
    if (st.tree().degree(a) <= 1) return cands.front();
    std::vector<Vertex> pool;
    for (Vertex x : cands)
      if (x != avoid) pool.push_back(x);
    if (pool.empty()) return cands.front();
    return pick_max(pool, [&](Vertex x) {
      std::size_t c = 0;
      for (Vertex y : st.graph().neighbors(x)) c += st.used(y) ? 0 : 1;
      return c;
    });
  };
}

/// Max-degree vertex of C at a max-degree vertex of A, then grow.
inline EmbedOutcome bipartite_greedy(const FillTask& task, const BipartiteSetup& b, Vertex root, Vertex root_image) {
  const Tree& t = task.tree;
  EmbedState st(t, task.host);
  st.place(root, root_image);
  GrowPolicy pol;
  pol.admissible = side_rule(b);
  pol.chooser = roomiest();
  Vertex blocked = grow(st, root_at(t, root).bfs_order, pol);
  EmbedOutcome o = st.outcome();
  if (blocked != kUnset) mark_stuck(o, st, blocked);
  return o;
}

inline Vertex widest_c_vertex(const Tree& t, const BipartiteSetup& b) {
  Vertex best = kUnset;
  for (Vertex c : b.colors.c)
    if (best == kUnset || t.degree(c) > t.degree(best)) best = c;
  return best;
}

}  // namespace detail

/// Bipartite filling when a vertex v of side A sees all of side B: C goes to A, D to B.
inline FillReport fill_bipartite_universal(const FillTask& task) {
  const Tree& t = task.tree;
  const Graph& h = task.host;
  detail::check_epsilon(task);
  auto b = detail::bipartite_setup(task);
  if (!task.universal) throw InputError("fill_bipartite_universal needs a vertex of A seeing all of B");
  const Vertex v = *task.universal;
  if (!h.contains(v) || !b.side_a[v]) throw InputError("universal vertex must lie in side A");
  for (Vertex y : task.sides->b)
    if (!h.adjacent(v, y)) throw InputError("vertex " + std::to_string(v) + " does not see B vertex " + std::to_string(y));
  if (task.sides->b.size() < b.colors.d.size()) {
    throw InputError("side B has " + std::to_string(task.sides->b.size()) + " vertices, fewer than the larger colour class (" +
                     std::to_string(b.colors.d.size()) + ")");
  }
  FillReport rep;
  auto& d = rep.diag;
  const auto mi = static_cast<std::int64_t>(b.m_edges);
  const auto cap = floor_of((1 + task.epsilon) * mi);
  if (static_cast<std::int64_t>(task.sides->a.size()) > cap || static_cast<std::int64_t>(task.sides->b.size()) > cap) {
    d.warnings.push_back("hypothesis: a side has more than floor((1+eps)m') vertices");
  }
  detail::warn_min_degree(induced_subgraph(h, VertexSet([&] {
                                              auto ids = task.sides->a.ids();
                                              ids.insert(ids.end(), task.sides->b.begin(), task.sides->b.end());
                                              std::sort(ids.begin(), ids.end());
                                              return ids;
                                            }()))
                              .graph,
                          (1 - 3 * task.epsilon) * mi, "(1-3eps)m'", d);
  detail::warn_leaf_cap(t, task.epsilon * mi / 2, "eps m'/2", d);

  if (t.order() == 1) {
    d.branch = "single";
    EmbedState st(t, h);
    st.place(0, b.colors.color[0] ? v : task.sides->b[0]);
    rep.outcome = st.outcome();
    return rep;
  }
  const Vertex root = detail::widest_c_vertex(t, b);
  if (Rational(static_cast<std::int64_t>(b.colors.c.size())) >= task.epsilon * 3 * mi + 1) {
    rep.outcome = detail::bipartite_greedy(task, b, root, v);
    d.branch = "greedy";
    if (rep.outcome.success()) return rep;
    d.warnings.push_back("greedy attempt stuck; switching to the leaf procedure");
  }
  d.branch = "leaf-drain";

  Rooting rt = root_at(t, root);
  HostMask dleaf(t.order(), 0);
  std::size_t dleaf_count = 0;
  for (Vertex x : b.colors.d)
    if (t.is_leaf(x) && x != root) {
      dleaf[x] = 1;
      ++dleaf_count;
    }
  std::vector<std::size_t> dleaf_kids(t.order(), 0);
  for (Vertex x = 0; x < static_cast<Vertex>(t.order()); ++x)
    if (dleaf[x]) ++dleaf_kids[rt.parent[x]];

  EmbedState st(t, h);
  GrowPolicy pol;
  pol.admissible = detail::side_rule(b);
  pol.preferred = detail::single_mask(h.order(), v);
  pol.preference = Preference::Avoid;
  pol.chooser = detail::roomiest(v);
  Vertex root_image = detail::best_host(h, b.side_a, v);
  if (root_image == kUnset) root_image = v;
  st.place(root, root_image);

  // Embed T'' until the embedded part of C touches more than half of the D leaves.
  std::size_t touched = dleaf_kids[root];
  HostMask in_l(t.order(), 0);
  for (Vertex a : rt.bfs_order) {
    if (2 * touched > dleaf_count) break;
    if (st.placed(a) || dleaf[a]) continue;
    auto cands = ranked_candidates(st, a, pol);
    if (cands.empty()) {
      rep.outcome = detail::stuck_outcome(st, a);
      return rep;
    }
    st.place(a, pol.chooser(st, a, cands));
    if (b.colors.color[a]) touched += dleaf_kids[a];
  }
  std::vector<LeafSlot> slots;
  std::vector<std::pair<Vertex, std::size_t>> weights;  // image, weight
  std::size_t total_weight = 0;
  for (Vertex x : b.colors.c) {
    if (!st.placed(x) || dleaf_kids[x] == 0) continue;
    LeafSlot slot{x, {}};
    for (Vertex c : rt.children[x])
      if (dleaf[c]) {
        slot.leaves.push_back(c);
        in_l[c] = 1;
      }
    weights.emplace_back(st.image(x), slot.leaves.size());
    total_weight += slot.leaves.size();
    slots.push_back(std::move(slot));
  }
  HostMask bad(h.order(), 0);
  for (Vertex y : task.sides->b) {
    std::size_t miss = 0;
    for (auto [img, w] : weights)
      if (!h.adjacent(y, img)) miss += w;
    if (total_weight > 0 && 2 * miss >= total_weight) {
      bad[y] = 1;
      ++d.bad_size;
    }
  }
  d.bad_bound = task.epsilon * 8 * mi;
  d.bad_bound_ok = Rational(static_cast<std::int64_t>(d.bad_size)) <= d.bad_bound;

  auto unused_bad_nbrs = [&](Vertex x) {
    std::size_t c = 0;
    for (Vertex y : h.neighbors(x)) c += bad[y] && !st.used(y) ? 1 : 0;
    return c;
  };
  auto unused_bad_total = [&] {
    std::size_t c = 0;
    for (Vertex y : task.sides->b) c += bad[y] && !st.used(y) ? 1 : 0;
    return c;
  };
  auto leaf_image = [&](Vertex l) -> Vertex {
    auto cands = ranked_candidates(st, l, pol);
    if (cands.empty()) return kUnset;
    for (Vertex y : cands)
      if (bad[y]) return y;
    return cands.front();
  };

  // Rest of T' - L, each vertex with its D-leaf children; C images see the most unused Bad.
  for (Vertex a : rt.bfs_order) {
    if (st.placed(a) || in_l[a] || dleaf[a]) continue;
    auto cands = ranked_candidates(st, a, pol);
    if (cands.empty()) {
      rep.outcome = detail::stuck_outcome(st, a);
      return rep;
    }
    Vertex x = pol.chooser(st, a, cands);
    if (b.colors.color[a]) {
      x = detail::pick_max(cands, unused_bad_nbrs);
      bool can_overload = !st.used(v) && std::find(cands.begin(), cands.end(), v) != cands.end();
      if (dleaf_kids[a] > unused_bad_total() && unused_bad_total() > 0 && can_overload) {
        x = v;
        ++d.overloads;
      } else if (dleaf_kids[a] > 0) {
        ++(2 * std::min(dleaf_kids[a], unused_bad_nbrs(x)) >= dleaf_kids[a] ? d.happy_parents : d.unhappy_parents);
      }
    }
    st.place(a, x);
    for (Vertex c : rt.children[a]) {
      if (!dleaf[c]) continue;
      Vertex y = leaf_image(c);
      if (y == kUnset) {
        rep.outcome = detail::stuck_outcome(st, c);
        return rep;
      }
      st.place(c, y);
    }
  }
  d.unused_bad_at_hall = unused_bad_total();
  rep.outcome = hall_complete(t, h, st.embedding(), slots, b.side_b);
  return rep;
}

/// Bipartite filling without a universal vertex: pairs of leaf parents in a good ordering
/// get images whose B-neighbourhoods jointly cover m' vertices, then the leaves are
/// matched.
inline FillReport fill_bipartite(const FillTask& task) {
  const Tree& t = task.tree;
  const Graph& h = task.host;
  detail::check_epsilon(task);
  auto b = detail::bipartite_setup(task);
  FillReport rep;
  auto& d = rep.diag;
  const auto mi = static_cast<std::int64_t>(b.m_edges);
  const auto cap = floor_of((1 + task.epsilon) * mi);
  if (static_cast<std::int64_t>(task.sides->a.size()) > cap) d.warnings.push_back("hypothesis: A has more than floor((1+eps)m') vertices");
  if (static_cast<std::int64_t>(task.sides->b.size()) != cap) d.warnings.push_back("hypothesis: B does not have exactly floor((1+eps)m') vertices");
  detail::warn_min_degree(h, (1 - task.epsilon) * mi, "(1-eps)m'", d);
  if (static_cast<std::int64_t>(2 * task.sides->a.size()) < mi) d.warnings.push_back("hypothesis: m' exceeds 2|A|");
  detail::warn_leaf_cap(t, Rational(mi, 6), "m'/6", d);
  if (task.sides->a.empty() || task.sides->b.empty()) throw InputError("both sides of H' must be non-empty");

  if (t.order() == 1) {
    d.branch = "single";
    EmbedState st(t, h);
    st.place(0, b.colors.color[0] ? task.sides->a[0] : task.sides->b[0]);
    rep.outcome = st.outcome();
    return rep;
  }
  const Vertex root = detail::widest_c_vertex(t, b);
  const Vertex root_image = detail::best_host(h, b.side_a);
  if (Rational(static_cast<std::int64_t>(b.colors.c.size())) >= task.epsilon * mi + 1) {
    rep.outcome = detail::bipartite_greedy(task, b, root, root_image);
    d.branch = "greedy";
    if (rep.outcome.success()) return rep;
    d.warnings.push_back("greedy attempt stuck; switching to paired parents");
  }
  d.branch = "paired-parents";
  std::vector<Vertex> leaves;
  for (Vertex x : b.colors.d)
    if (t.is_leaf(x) && x != root) leaves.push_back(x);
  HostMask is_leaf(t.order(), 0);
  for (Vertex x : leaves) is_leaf[x] = 1;
  GoodOrdering ordering = good_ordering(t, VertexSet(leaves));
  std::vector<Vertex> partner(t.order(), kUnset);
  for (std::size_t i = 0; i + 1 < ordering.size(); i += 2) {
    partner[ordering[i].parent] = ordering[i + 1].parent;
    partner[ordering[i + 1].parent] = ordering[i].parent;
  }
  EmbedState st(t, h);
  st.place(root, root_image);
  GrowPolicy pol;
  pol.admissible = detail::side_rule(b);
  for (Vertex a : root_at(t, root).bfs_order) {
    if (st.placed(a) || is_leaf[a]) continue;
    auto cands = ranked_candidates(st, a, pol);
    if (cands.empty()) {
      rep.outcome = detail::stuck_outcome(st, a);
      return rep;
    }
    Vertex p = partner[a];
    Vertex x;
    if (p != kUnset && st.placed(p)) {
      Vertex fp = st.image(p);
      x = detail::pick_max(cands, [&](Vertex y) {
        std::size_t c = 0;
        for (Vertex w : h.neighbors(y)) c += b.side_b[w] && !h.adjacent(w, fp) ? 1 : 0;
        return c;
      });
    } else {
      x = detail::pick_max(cands, [&](Vertex y) { return h.degree(y); });
    }
    st.place(a, x);
  }
  auto ordered = hall_complete_ordered(t, h, st.embedding(), ordering, b.m_edges, b.side_b);
  for (const auto& pc : ordered.pairs) {
    ++d.pairs_total;
    d.pairs_holding += pc.holds ? 1 : 0;
  }
  for (auto& w : ordered.warnings) d.warnings.push_back(std::move(w));
  rep.outcome = std::move(ordered.outcome);
  return rep;
}

/// Bipartite filling with spill-over: the separator goes to v in A, component roots are
/// spread over A and B to keep the colour loads balanced, and roots that cannot find an
/// A-neighbour of v are sent outside H' until the spilled part exceeds m'/4.
inline FillReport fill_bipartite_spill(const Tree& t, const Graph& g, const BipartitePair& h_prime, Vertex v) {
  if (!g.contains(v)) throw InputError("v out of range");
  if (!h_prime.a.contains(v)) throw InputError("v must lie in side A of H'");
  const std::size_t m = t.edge_count();
  if (g.degree(v) < m) {
    throw InputError("v has degree " + std::to_string(g.degree(v)) + " in G, below m'=" + std::to_string(m));
  }
  FillReport rep;
  auto& d = rep.diag;
  d.branch = "balanced-roots";
  HostMask in_a = h_prime.a.mask(g.order()), in_b = h_prime.b.mask(g.order());
  HostMask in_h(g.order(), 0), out_h(g.order(), 0);
  for (std::size_t x = 0; x < g.order(); ++x) {
    in_h[x] = in_a[x] || in_b[x];
    out_h[x] = !in_h[x];
  }
  auto sep = separator(t);
  const Vertex z = sep.z;
  Rooting rt = root_at(t, z);
  EmbedState st(t, g);
  st.place(z, v);

  // Pick a free neighbour of v in the given mask, smallest id.
  auto free_nbr = [&](const HostMask& mask) -> Vertex {
    for (Vertex x : g.neighbors(v))
      if (mask[x] && !st.used(x)) return x;
    return kUnset;
  };
  auto grow_comp = [&](const std::vector<Vertex>& comp, const HostMask& where) -> Vertex {
    HostMask in_c(t.order(), 0);
    for (Vertex x : comp) in_c[x] = 1;
    std::vector<Vertex> order;
    for (Vertex x : rt.bfs_order)
      if (in_c[x]) order.push_back(x);
    GrowPolicy pol;
    pol.allowed = where;
    return grow(st, order, pol);
  };

  long long load_a = 0, load_b = 0, discrepancy = 0;
  std::size_t spilled = 0;
  bool spill_closed = false;
  std::vector<Vertex> leaf_kids;
  for (const auto& comp : sep.components) {
    Vertex root = kUnset;
    for (Vertex x : comp)
      if (rt.parent[x] == z) root = x;
    if (comp.size() == 1) {
      leaf_kids.push_back(root);
      continue;
    }
    // Classes of the component by parity from its root.
    long long same = 0, other = 0;
    for (Vertex x : comp) ((rt.depth[x] - rt.depth[root]) % 2 == 0 ? same : other) += 1;
    bool bigger_is_root = same >= other;
    bool a_lighter = load_a <= load_b;
    bool root_to_a = bigger_is_root ? a_lighter : !a_lighter;
    Vertex img = kUnset;
    const HostMask* where = &in_h;
    if (root_to_a) img = free_nbr(in_a);
    if (img == kUnset && root_to_a && !spill_closed) {
      img = free_nbr(out_h);
      if (img != kUnset) where = &out_h;
    }
    if (img == kUnset) {
      img = free_nbr(in_b);
      root_to_a = false;
    }
    if (img == kUnset) img = free_nbr(in_a);
    if (img == kUnset) {
      rep.outcome = detail::stuck_outcome(st, root);
      return rep;
    }
    st.place(root, img);
    if (Vertex blocked = grow_comp(comp, *where); blocked != kUnset) {
      rep.outcome = detail::stuck_outcome(st, blocked);
      return rep;
    }
    if (where == &out_h) {
      spilled += comp.size();
      if (4 * spilled > m) spill_closed = true;
    } else {
      for (Vertex x : comp) (in_a[st.image(x)] ? load_a : load_b) += 1;
      discrepancy = std::max(discrepancy, std::abs(load_a - load_b));
    }
  }
  for (Vertex l : leaf_kids) {
    Vertex img = kUnset;
    for (Vertex x : g.neighbors(v))
      if (!st.used(x)) {
        img = x;
        break;
      }
    if (img == kUnset) {
      rep.outcome = detail::stuck_outcome(st, l);
      return rep;
    }
    st.place(l, img);
  }
  d.spill = spilled;
  if (m >= 2 && 2 * discrepancy > static_cast<long long>(m) - 2) {
    d.warnings.push_back("colour loads drifted by more than (m'-2)/2");
  }
  rep.outcome = st.outcome();
  return rep;
}

}  // namespace treeembed
