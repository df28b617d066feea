#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "treeembed/errors.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/rational.hpp"

namespace treeembed {

enum class SearchMode { Exact, Peeling };

inline const char* to_string(SearchMode m) { return m == SearchMode::Exact ? "exact" : "peeling"; }

/// Largest graph accepted by the exact subset searches.
inline constexpr std::size_t kExactSearchLimit = 24;

struct DenseSubgraph {
  VertexSet vertices;
  std::size_t edges = 0;
  Rational avg_degree{0};
  std::size_t min_degree = 0;
};

namespace detail {

/// Strictly better candidate: larger average, then fewer vertices, then lexicographically
/// smaller id list.
inline bool denser(std::size_t e1, const std::vector<Vertex>& s1, std::size_t e2, const std::vector<Vertex>& s2) {
  if (s2.empty()) return !s1.empty();
  auto lhs = static_cast<std::uint64_t>(e1) * s2.size();
  auto rhs = static_cast<std::uint64_t>(e2) * s1.size();
  if (lhs != rhs) return lhs > rhs;
  if (s1.size() != s2.size()) return s1.size() < s2.size();
  return s1 < s2;
}

inline DenseSubgraph describe_subset(const Graph& g, std::vector<Vertex> ids) {
  DenseSubgraph d;
  d.vertices = VertexSet(std::move(ids));
  HostMask mask = d.vertices.mask(g.order());
  d.edges = edges_inside(g, mask);
  d.min_degree = d.vertices.empty() ? 0 : g.order();
  for (Vertex v : d.vertices) d.min_degree = std::min(d.min_degree, degree_into(g, v, mask));
  if (!d.vertices.empty()) {
    d.avg_degree = Rational(static_cast<std::int64_t>(2 * d.edges), static_cast<std::int64_t>(d.vertices.size()));
  }
  return d;
}

/// Enumerates connected vertex subsets of size <= bound (each exactly once, ESU style)
/// and keeps the densest. A disconnected optimum always has a component at least as
/// dense with fewer vertices, so connected subsets suffice.
class ConnectedSubsetSearch {
 public:
  ConnectedSubsetSearch(const Graph& g, std::size_t bound) : g_(g), bound_(bound), adj_(g.order(), 0) {
    for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
      for (Vertex w : g.neighbors(v)) adj_[v] |= std::uint32_t{1} << w;
  }

  void run() {
    for (Vertex v = 0; v < static_cast<Vertex>(g_.order()); ++v) {
      std::uint32_t ext = adj_[v] & ~((std::uint32_t{2} << v) - 1);
      extend(std::uint32_t{1} << v, ext, v, 0);
    }
  }

  std::uint32_t best_mask() const { return best_mask_; }
  std::size_t best_edges() const { return best_edges_; }

 private:
  void consider(std::uint32_t mask, std::size_t e) {
    if (best_mask_ == 0) {
      best_mask_ = mask;
      best_edges_ = e;
      return;
    }
    auto k = static_cast<std::uint64_t>(std::popcount(mask));
    auto bk = static_cast<std::uint64_t>(std::popcount(best_mask_));
    auto lhs = e * bk, rhs = best_edges_ * k;
    if (lhs > rhs || (lhs == rhs && (k < bk || (k == bk && lex_less(mask, best_mask_))))) {
      best_mask_ = mask;
      best_edges_ = e;
    }
  }

  // Sorted-id lexicographic comparison of two equal-size masks: the lowest differing
  // bit decides, the mask holding it is smaller.
  static bool lex_less(std::uint32_t a, std::uint32_t b) {
    std::uint32_t diff = a ^ b;
    if (!diff) return false;
    return (a & (diff & (~diff + 1))) != 0;
  }

  void extend(std::uint32_t sub, std::uint32_t ext, Vertex root, std::size_t e) {
    consider(sub, e);
    if (static_cast<std::size_t>(std::popcount(sub)) >= bound_) return;
    // Neighbourhood of sub, for the exclusive-extension rule.
    std::uint32_t nsub = 0;
    for (std::uint32_t s = sub; s; s &= s - 1) nsub |= adj_[std::countr_zero(s)];
    while (ext) {
      Vertex w = std::countr_zero(ext);
      ext &= ext - 1;
      std::uint32_t fresh = adj_[w] & ~(sub | nsub) & ~((std::uint32_t{2} << root) - 1);
      std::size_t add = static_cast<std::size_t>(std::popcount(adj_[w] & sub));
      extend(sub | (std::uint32_t{1} << w), ext | fresh, root, e + add);
    }
  }

  const Graph& g_;
  std::size_t bound_;
  std::vector<std::uint32_t> adj_;
  std::uint32_t best_mask_ = 0;
  std::size_t best_edges_ = 0;
};

/// Min-degree peeling of the vertex set `start`, offering every intermediate set of
/// size <= bound to `offer`.
template <typename Offer>
void peel(const Graph& g, const std::vector<Vertex>& start, std::size_t bound, Offer offer) {
  HostMask in(g.order(), 0);
  for (Vertex v : start) in[v] = 1;
  std::vector<std::size_t> deg(g.order(), 0);
  std::size_t e = 0;
  for (Vertex v : start) {
    deg[v] = degree_into(g, v, in);
    e += deg[v];
  }
  e /= 2;
  std::vector<Vertex> alive = start;
  while (!alive.empty()) {
    if (alive.size() <= bound) offer(alive, e);
    auto it = std::min_element(alive.begin(), alive.end(), [&](Vertex a, Vertex b) {
      return deg[a] != deg[b] ? deg[a] < deg[b] : a < b;
    });
    Vertex v = *it;
    alive.erase(it);
    in[v] = 0;
    e -= deg[v];
    for (Vertex w : g.neighbors(v))
      if (in[w]) --deg[w];
  }
}

}  // namespace detail

/// Densest subgraph on at most `bound` vertices. Exact mode searches all connected subsets
/// (n <= 24); peeling mode runs min-degree peeling from the whole graph and from every
/// closed neighbourhood and returns the best set seen.
inline DenseSubgraph densest_small_subgraph(const Graph& g, std::size_t bound, SearchMode mode) {
  if (bound < 1) throw InputError("densest subgraph bound must be positive");
  if (g.order() == 0) return {};
  if (mode == SearchMode::Exact) {
    if (g.order() > kExactSearchLimit) {
      throw SizeError("exact dense-subgraph search supports at most " + std::to_string(kExactSearchLimit) +
                      " vertices, got " + std::to_string(g.order()));
    }
    detail::ConnectedSubsetSearch search(g, bound);
    search.run();
    std::vector<Vertex> ids;
    for (std::uint32_t s = search.best_mask(); s; s &= s - 1) ids.push_back(std::countr_zero(s));
    return detail::describe_subset(g, ids);
  }
  std::vector<Vertex> best;
  std::size_t best_e = 0;
  auto offer = [&](const std::vector<Vertex>& alive, std::size_t e) {
    std::vector<Vertex> sorted = alive;
    std::sort(sorted.begin(), sorted.end());
    if (detail::denser(e, sorted, best_e, best)) {
      best = std::move(sorted);
      best_e = e;
    }
  };
  std::vector<Vertex> all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = static_cast<Vertex>(i);
  detail::peel(g, all, bound, offer);
  for (Vertex u = 0; u < static_cast<Vertex>(g.order()); ++u) {
    std::vector<Vertex> ball(g.neighbors(u).begin(), g.neighbors(u).end());
    ball.insert(std::upper_bound(ball.begin(), ball.end(), u), u);
    detail::peel(g, ball, bound, offer);
  }
  return detail::describe_subset(g, best);
}

}  // namespace treeembed
