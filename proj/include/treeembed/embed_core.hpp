#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treeembed/embedding.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/matching.hpp"
#include "treeembed/tree.hpp"
#include "treeembed/tree_tools.hpp"

namespace treeembed {

enum class EmbedStatus { Success, Stuck };

inline const char* to_string(EmbedStatus s) { return s == EmbedStatus::Success ? "SUCCESS" : "STUCK"; }

struct HallViolator {
  std::vector<Vertex> tree_vertices;  // W
  std::vector<Vertex> neighborhood;   // N(W), strictly smaller than W
};

struct EmbedOutcome {
  EmbedStatus status = EmbedStatus::Stuck;
  Embedding embedding;
  Vertex stuck_at = kUnset;
  Vertex stuck_parent = kUnset;
  std::vector<Vertex> saturated_neighborhood;  // N(f(stuck_parent)), all used or excluded
  std::optional<HallViolator> hall_violator;
  std::vector<Vertex> placement_order;
  std::vector<std::string> notes;

  bool success() const { return status == EmbedStatus::Success; }
};

/// Mutable placement state: partial embedding plus host occupancy.
class EmbedState {
 public:
  EmbedState(const Tree& t, const Graph& g) : t_(&t), g_(&g), f_(t.order(), kUnset), owner_(g.order(), kUnset) {}

  EmbedState(const Tree& t, const Graph& g, const Embedding& f) : EmbedState(t, g) {
    if (f.size() != t.order()) throw InputError("embedding length differs from tree order");
    for (Vertex a = 0; a < static_cast<Vertex>(f.size()); ++a) {
      if (f[a] != kUnset) place(a, f[a]);
    }
    if (!validate_embedding(t, g, f_).consistent()) throw InputError("partial embedding is not injective and edge-preserving");
  }

  const Tree& tree() const { return *t_; }
  const Graph& graph() const { return *g_; }
  const Embedding& embedding() const { return f_; }
  Vertex image(Vertex a) const { return f_[a]; }
  Vertex owner(Vertex x) const { return owner_[x]; }
  bool placed(Vertex a) const { return f_[a] != kUnset; }
  bool used(Vertex x) const { return owner_[x] != kUnset; }
  std::size_t placed_count() const { return placed_; }
  const std::vector<Vertex>& order() const { return order_; }

  void place(Vertex a, Vertex x) {
    if (!g_->contains(x)) throw InputError("host vertex " + std::to_string(x) + " out of range");
    if (f_[a] != kUnset) throw InputError("tree vertex " + std::to_string(a) + " already placed");
    if (owner_[x] != kUnset) throw InputError("host vertex " + std::to_string(x) + " already used");
    f_[a] = x;
    owner_[x] = a;
    ++placed_;
    order_.push_back(a);
  }

  void unplace(Vertex a) {
    if (f_[a] == kUnset) return;
    owner_[f_[a]] = kUnset;
    f_[a] = kUnset;
    --placed_;
    order_.erase(std::find(order_.begin(), order_.end(), a));
  }

  /// Unused host vertices adjacent to the images of all placed tree neighbours of a.
  std::vector<Vertex> open_slots(Vertex a) const {
    Vertex anchor = kUnset;
    for (Vertex b : t_->neighbors(a)) {
      if (placed(b)) {
        anchor = b;
        break;
      }
    }
    std::vector<Vertex> out;
    if (anchor == kUnset) return out;
    for (Vertex x : g_->neighbors(f_[anchor])) {
      if (used(x)) continue;
      bool ok = true;
      for (Vertex b : t_->neighbors(a)) {
        if (b != anchor && placed(b) && !g_->adjacent(x, f_[b])) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(x);
    }
    return out;
  }

  /// Some placed tree neighbour of a, or kUnset.
  Vertex placed_neighbor(Vertex a) const {
    for (Vertex b : t_->neighbors(a)) {
      if (placed(b)) return b;
    }
    return kUnset;
  }

  EmbedOutcome outcome() const {
    EmbedOutcome o;
    o.embedding = f_;
    o.placement_order = order_;
    o.status = placed_ == t_->order() ? EmbedStatus::Success : EmbedStatus::Stuck;
    return o;
  }

 private:
  const Tree* t_;
  const Graph* g_;
  Embedding f_;
  std::vector<Vertex> owner_;
  std::size_t placed_ = 0;
  std::vector<Vertex> order_;
};

enum class Preference { None, Prefer, Avoid };
enum class Traversal { Bfs, Dfs };

using Chooser = std::function<Vertex(const EmbedState&, Vertex a, const std::vector<Vertex>& candidates)>;

/// How grow() picks images. Candidates are unused, allowed, not forbidden, admissible;
/// preferred ones come first (last under Avoid), then ascending id. The chooser, when
/// set, picks from that ordered list; otherwise the first entry is taken.
struct GrowPolicy {
  HostMask allowed;    // empty: everything allowed
  HostMask forbidden;  // empty: nothing forbidden
  HostMask preferred;
  Preference preference = Preference::None;
  std::function<bool(Vertex a, Vertex x)> admissible;
  Chooser chooser;
};

inline std::vector<Vertex> ranked_candidates(const EmbedState& st, Vertex a, const GrowPolicy& p) {
  std::vector<Vertex> raw = st.open_slots(a);
  std::vector<Vertex> first, second;
  for (Vertex x : raw) {
    if (!p.allowed.empty() && !p.allowed[x]) continue;
    if (!p.forbidden.empty() && p.forbidden[x]) continue;
    if (p.admissible && !p.admissible(a, x)) continue;
    bool in_pref = !p.preferred.empty() && p.preferred[x];
    bool front = p.preference == Preference::Prefer ? in_pref : p.preference == Preference::Avoid ? !in_pref : true;
    (front ? first : second).push_back(x);
  }
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

/// Reports the blocked vertex a into the outcome.
inline void mark_stuck(EmbedOutcome& o, const EmbedState& st, Vertex a) {
  o.status = EmbedStatus::Stuck;
  o.stuck_at = a;
  o.stuck_parent = st.placed_neighbor(a);
  if (o.stuck_parent != kUnset) {
    auto nb = st.graph().neighbors(st.image(o.stuck_parent));
    o.saturated_neighborhood.assign(nb.begin(), nb.end());
  }
}

/// Places the given tree vertices in order; each must have a placed neighbour when its
/// turn comes. Returns the blocked vertex, or kUnset when everything was placed.
inline Vertex grow(EmbedState& st, const std::vector<Vertex>& targets, const GrowPolicy& p) {
  for (Vertex a : targets) {
    if (st.placed(a)) continue;
    if (st.placed_neighbor(a) == kUnset) throw InputError("grow target " + std::to_string(a) + " has no placed neighbour");
    auto cands = ranked_candidates(st, a, p);
    if (cands.empty()) return a;
    Vertex x = p.chooser ? p.chooser(st, a, cands) : cands.front();
    st.place(a, x);
  }
  return kUnset;
}

/// Order in which a rooted traversal visits tree vertices, children by ascending id.
inline std::vector<Vertex> traversal_order(const Rooting& rt, Traversal order) {
  if (order == Traversal::Bfs) return rt.bfs_order;
  std::vector<Vertex> out, stack{rt.root};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (auto it = rt.children[u].rbegin(); it != rt.children[u].rend(); ++it) stack.push_back(*it);
  }
  return out;
}

/// Pins, optional forbidden set and optional preferred set with a direction.
struct AnchorConstraint {
  std::vector<std::pair<Vertex, Vertex>> pins;  // tree vertex -> host vertex
  HostMask forbidden;
  HostMask preferred;
  Preference preference = Preference::None;
};

/// Host vertex of maximum degree among those passing the filter; smallest id on ties.
template <typename Filter>
Vertex max_degree_vertex(const Graph& g, Filter keep) {
  Vertex best = kUnset;
  for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x) {
    if (!keep(x)) continue;
    if (best == kUnset || g.degree(x) > g.degree(best)) best = x;
  }
  return best;
}

inline Vertex max_degree_vertex(const Graph& g) {
  return max_degree_vertex(g, [](Vertex) { return true; });
}

/// Connected-frontier greedy embedding: every vertex goes to an unused neighbour of its
/// parent's image.
inline EmbedOutcome greedy_embed(const Tree& t, const Graph& g, const AnchorConstraint& anchors = {},
                                 Traversal order = Traversal::Bfs) {
  std::vector<Vertex> pin(t.order(), kUnset);
  HostMask reserved(g.order(), 0);
  for (auto [a, x] : anchors.pins) {
    if (!t.contains(a) || !g.contains(x)) throw InputError("pin out of range");
    if (pin[a] != kUnset) throw InputError("tree vertex " + std::to_string(a) + " pinned twice");
    if (reserved[x]) throw InputError("host vertex " + std::to_string(x) + " pinned twice");
    if (!anchors.forbidden.empty() && anchors.forbidden[x]) throw InputError("pinned host vertex is forbidden");
    pin[a] = x;
    reserved[x] = 1;
  }
  for (auto [a, b] : t.edges()) {
    if (pin[a] != kUnset && pin[b] != kUnset && !g.adjacent(pin[a], pin[b])) {
      throw InputError("pins of adjacent tree vertices are not adjacent in the host");
    }
  }
  Vertex root = !anchors.pins.empty() ? anchors.pins.front().first : t.root().value_or(0);
  Rooting rt = root_at(t, root);

  EmbedState st(t, g);
  GrowPolicy policy;
  policy.forbidden = anchors.forbidden;
  policy.preferred = anchors.preferred;
  policy.preference = anchors.preference;
  policy.admissible = [&](Vertex a, Vertex x) { return pin[a] == kUnset ? !reserved[x] : x == pin[a]; };

  Vertex root_image = pin[root];
  if (root_image == kUnset) {
    auto ok = [&](Vertex x) {
      return !reserved[x] && (anchors.forbidden.empty() || !anchors.forbidden[x]);
    };
    bool want_pref = anchors.preference == Preference::Prefer && !anchors.preferred.empty();
    if (want_pref) root_image = max_degree_vertex(g, [&](Vertex x) { return ok(x) && anchors.preferred[x]; });
    if (root_image == kUnset && anchors.preference == Preference::Avoid && !anchors.preferred.empty()) {
      root_image = max_degree_vertex(g, [&](Vertex x) { return ok(x) && !anchors.preferred[x]; });
    }
    if (root_image == kUnset) root_image = max_degree_vertex(g, ok);
  }
  EmbedOutcome o;
  if (root_image == kUnset) {
    o = st.outcome();
    o.stuck_at = root;
    return o;
  }
  st.place(root, root_image);
  Vertex blocked = grow(st, traversal_order(rt, order), policy);
  o = st.outcome();
  if (blocked != kUnset) mark_stuck(o, st, blocked);
  return o;
}

/// A parent together with leaves still to be attached to it.
struct LeafSlot {
  Vertex parent = 0;
  std::vector<Vertex> leaves;
};

/// Completes f on the given leaves by a maximum matching of leaves to unused
/// neighbours of their parents' images.
inline EmbedOutcome hall_complete(const Tree& t, const Graph& g, const Embedding& f, const std::vector<LeafSlot>& slots,
                                  const HostMask& allowed = {}) {
  EmbedState st(t, g, f);
  std::vector<Vertex> left;
  std::vector<std::vector<Vertex>> cand;
  for (const auto& slot : slots) {
    if (!st.placed(slot.parent)) throw InputError("leaf parent " + std::to_string(slot.parent) + " is not embedded");
    for (Vertex l : slot.leaves) {
      if (st.placed(l)) throw InputError("leaf " + std::to_string(l) + " already embedded");
      left.push_back(l);
      std::vector<Vertex> c;
      for (Vertex x : g.neighbors(st.image(slot.parent))) {
        if (!st.used(x) && (allowed.empty() || allowed[x])) c.push_back(x);
      }
      cand.push_back(std::move(c));
    }
  }
  BipartiteMatcher matcher(cand, g.order());
  matcher.solve();
  if (matcher.saturates_left()) {
    for (std::size_t i = 0; i < left.size(); ++i) st.place(left[i], matcher.match_of_left(i));
    EmbedOutcome o = st.outcome();
    if (!o.success()) o.notes.push_back("tree vertices outside the leaf slots remain unembedded");
    return o;
  }
  EmbedOutcome o = st.outcome();
  auto [w, nbrs] = matcher.hall_violator();
  HallViolator hv;
  for (Vertex i : w) hv.tree_vertices.push_back(left[i]);
  std::sort(hv.tree_vertices.begin(), hv.tree_vertices.end());
  hv.neighborhood = nbrs;
  o.status = EmbedStatus::Stuck;
  o.stuck_at = hv.tree_vertices.front();
  o.stuck_parent = t.neighbors(o.stuck_at).front();
  o.hall_violator = std::move(hv);
  return o;
}

struct PairCheck {
  Vertex first = kUnset;
  Vertex second = kUnset;  // kUnset for an odd last parent
  std::size_t union_size = 0;
  bool holds = false;
};

struct OrderedHallReport {
  EmbedOutcome outcome;
  std::vector<PairCheck> pairs;
  std::vector<std::string> warnings;
};

/// hall_complete over a good ordering, additionally checking for each consecutive pair
/// of parents that their images' neighbourhoods jointly cover at least m vertices.
inline OrderedHallReport hall_complete_ordered(const Tree& t, const Graph& g, const Embedding& f,
                                               const GoodOrdering& ordering, std::size_t m,
                                               const HostMask& allowed = {}) {
  if (f.size() != t.order()) throw InputError("embedding length differs from tree order");
  std::size_t leaf_total = 0;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    const auto& e = ordering[i];
    if (!t.contains(e.parent) || f[e.parent] == kUnset) throw InputError("ordering parent is not embedded");
    if (i > 0 && ordering[i - 1].leaves.size() < e.leaves.size()) throw InputError("ordering is not by non-increasing leaf count");
    for (Vertex l : e.leaves) {
      if (!t.contains(l) || !t.is_leaf(l) || !t.adjacent(l, e.parent)) throw InputError("ordering leaf does not hang from its parent");
      if (f[l] != kUnset) throw InputError("ordering leaf already embedded");
    }
    leaf_total += e.leaves.size();
  }
  OrderedHallReport rep;
  for (std::size_t i = 0; i < ordering.size(); i += 2) {
    PairCheck pc;
    pc.first = ordering[i].parent;
    std::vector<Vertex> uni(g.neighbors(f[pc.first]).begin(), g.neighbors(f[pc.first]).end());
    if (i + 1 < ordering.size()) {
      pc.second = ordering[i + 1].parent;
      auto nb = g.neighbors(f[pc.second]);
      std::vector<Vertex> merged;
      std::set_union(uni.begin(), uni.end(), nb.begin(), nb.end(), std::back_inserter(merged));
      uni = std::move(merged);
    }
    pc.union_size = uni.size();
    pc.holds = pc.union_size >= m;
    rep.pairs.push_back(pc);
  }
  auto profile = degree_profile(g);
  if (10 * profile.min_degree < 9 * m) rep.warnings.push_back("host minimum degree below 9m/10");
  if (10 * leaf_total < 9 * m) rep.warnings.push_back("fewer than 9m/10 leaves to attach");
  for (const auto& e : ordering) {
    if (6 * e.leaves.size() > m) {
      rep.warnings.push_back("a parent has more than m/6 leaf children");
      break;
    }
  }
  std::vector<LeafSlot> slots;
  for (const auto& e : ordering) slots.push_back({e.parent, e.leaves});
  rep.outcome = hall_complete(t, g, f, slots, allowed);
  return rep;
}

/// Length of a shortest cycle, or 0 for a forest.
inline std::size_t girth(const Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = 0;
  std::vector<int> dist(n);
  std::vector<Vertex> par(n), queue;
  for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[s] = 0;
    par[s] = kUnset;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Vertex u = queue[h];
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          par[w] = u;
          queue.push_back(w);
        } else if (w != par[u]) {
          auto len = static_cast<std::size_t>(dist[u] + dist[w] + 1);
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

struct BlockwiseReport {
  EmbedOutcome outcome;
  std::size_t host_girth = 0;
  std::size_t needed_degree = 0;  // max tree degree
  std::size_t host_min_degree = 0;
};

/// Breadth-first embedding from a leaf root, placing all children of a vertex as one
/// block into unused neighbours of its image.
inline BlockwiseReport bfs_blockwise_embed(const Tree& t, const Graph& g) {
  BlockwiseReport rep;
  rep.host_girth = girth(g);
  rep.host_min_degree = degree_profile(g).min_degree;
  for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a) rep.needed_degree = std::max(rep.needed_degree, t.degree(a));

  Vertex root = 0;
  if (t.order() > 1) {
    root = (t.root() && t.is_leaf(*t.root())) ? *t.root() : t.leaves().front();
  }
  Rooting rt = root_at(t, root);
  EmbedState st(t, g);
  Vertex image = max_degree_vertex(g);
  if (image == kUnset) {
    rep.outcome = st.outcome();
    rep.outcome.stuck_at = root;
    return rep;
  }
  st.place(root, image);
  for (Vertex u : rt.bfs_order) {
    const auto& kids = rt.children[u];
    if (kids.empty()) continue;
    std::vector<Vertex> free;
    for (Vertex x : g.neighbors(st.image(u))) {
      if (!st.used(x)) free.push_back(x);
    }
    if (free.size() < kids.size()) {
      rep.outcome = st.outcome();
      mark_stuck(rep.outcome, st, kids[free.size()]);
      rep.outcome.stuck_parent = u;
      return rep;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) st.place(kids[i], free[i]);
  }
  rep.outcome = st.outcome();
  return rep;
}

/// Puts s on a maximum-degree host vertex, embeds the rest of T without s's leaf
/// children greedily, then attaches those leaves by matching.
inline EmbedOutcome star_heavy_embed(const Tree& t, const Graph& g, Vertex s) {
  if (!t.contains(s)) throw InputError("star vertex not in tree");
  Rooting rt = root_at(t, s);
  std::vector<Vertex> held;
  for (Vertex c : rt.children[s]) {
    if (rt.children[c].empty()) held.push_back(c);
  }
  EmbedState st(t, g);
  Vertex image = max_degree_vertex(g);
  if (image == kUnset) {
    EmbedOutcome o = st.outcome();
    o.stuck_at = s;
    return o;
  }
  st.place(s, image);
  std::vector<Vertex> targets;
  for (Vertex v : rt.bfs_order) {
    if (v != s && !std::binary_search(held.begin(), held.end(), v)) targets.push_back(v);
  }
  GrowPolicy policy;
  Vertex blocked = grow(st, targets, policy);
  if (blocked != kUnset) {
    EmbedOutcome o = st.outcome();
    mark_stuck(o, st, blocked);
    return o;
  }
  return hall_complete(t, g, st.embedding(), {{s, held}});
}

}  // namespace treeembed
