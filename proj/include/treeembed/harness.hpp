#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "treeembed/embedding.hpp"
#include "treeembed/errors.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

enum class SearchVerdict { Found, None, BudgetExceeded };

inline const char* to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::Found: return "FOUND";
    case SearchVerdict::None: return "NONE";
    default: return "BUDGET_EXCEEDED";
  }
}

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::None;
  Embedding embedding;  // set when Found
  std::uint64_t nodes = 0;
};

namespace detail {

/// Twin class per host vertex: vertices with equal open neighbourhoods, or equal closed
/// neighbourhoods, share a class id. Swapping two unused twins is an automorphism that
/// fixes the current partial map, so only one member per class needs to be tried.
inline std::vector<Vertex> twin_classes(const Graph& g) {
  const auto n = static_cast<Vertex>(g.order());
  std::map<std::vector<Vertex>, Vertex> open_key, closed_key;
  std::vector<Vertex> open_id(n), closed_id(n);
  std::vector<std::size_t> open_count, closed_count;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> open(g.neighbors(v).begin(), g.neighbors(v).end());
    std::vector<Vertex> closed = open;
    closed.insert(std::upper_bound(closed.begin(), closed.end(), v), v);
    auto [io, newo] = open_key.emplace(open, static_cast<Vertex>(open_count.size()));
    if (newo) open_count.push_back(0);
    ++open_count[io->second];
    open_id[v] = io->second;
    auto [ic, newc] = closed_key.emplace(closed, static_cast<Vertex>(closed_count.size()));
    if (newc) closed_count.push_back(0);
    ++closed_count[ic->second];
    closed_id[v] = ic->second;
  }
  std::vector<Vertex> cls(n);
  for (Vertex v = 0; v < n; ++v) {
    if (open_count[open_id[v]] > 1) {
      cls[v] = open_id[v];
    } else if (closed_count[closed_id[v]] > 1) {
      cls[v] = n + closed_id[v];
    } else {
      cls[v] = 2 * n + v;
    }
  }
  return cls;
}

struct SearchPlan {
  std::vector<Vertex> order;   // tree vertices, BFS from a max-degree vertex
  std::vector<Vertex> parent;  // BFS parent of order[i]'s vertex, kUnset for the first
};

inline SearchPlan plan_search(const Tree& t) {
  Vertex start = 0;
  for (Vertex a = 0; a < static_cast<Vertex>(t.order()); ++a) {
    if (t.degree(a) > t.degree(start)) start = a;
  }
  Rooting rt = root_at(t, start);
  return {rt.bfs_order, rt.parent};
}

}  // namespace detail

/// Exhaustive backtracking over injective edge-preserving maps, pruned by degrees and
/// by host twin classes. NONE proves that no embedding exists.
inline SearchResult brute_force_embed(const Tree& t, const Graph& g, std::uint64_t budget = 10'000'000) {
  SearchResult res;
  if (t.order() > g.order()) return res;
  auto plan = detail::plan_search(t);
  auto cls = detail::twin_classes(g);
  Embedding f(t.order(), kUnset);
  std::vector<std::uint8_t> used(g.order(), 0);
  bool out_of_budget = false;

  std::function<bool(std::size_t)> step = [&](std::size_t depth) -> bool {
    if (depth == plan.order.size()) return true;
    Vertex a = plan.order[depth];
    std::vector<Vertex> tried;  // twin classes already explored at this node
    auto try_host = [&](Vertex x) -> bool {
      if (used[x] || g.degree(x) < t.degree(a)) return false;
      if (std::find(tried.begin(), tried.end(), cls[x]) != tried.end()) return false;
      tried.push_back(cls[x]);
      if (++res.nodes > budget) {
        out_of_budget = true;
        return false;
      }
      f[a] = x;
      used[x] = 1;
      if (step(depth + 1)) return true;
      used[x] = 0;
      f[a] = kUnset;
      return false;
    };
    Vertex p = plan.parent[a];
    if (p == kUnset) {
      for (Vertex x = 0; x < static_cast<Vertex>(g.order()) && !out_of_budget; ++x) {
        if (try_host(x)) return true;
      }
    } else {
      for (Vertex x : g.neighbors(f[p])) {
        if (out_of_budget) break;
        if (try_host(x)) return true;
      }
    }
    return false;
  };

  if (step(0)) {
    res.verdict = SearchVerdict::Found;
    res.embedding = f;
  } else {
    res.verdict = out_of_budget ? SearchVerdict::BudgetExceeded : SearchVerdict::None;
  }
  return res;
}

/// Every embedding of T in G (no symmetry pruning), in lexicographic search order.
/// Stops after `limit` maps.
inline std::vector<Embedding> enumerate_embeddings(const Tree& t, const Graph& g, std::size_t limit = 1'000'000) {
  std::vector<Embedding> out;
  if (t.order() > g.order()) return out;
  // Vertex order 0..n-1 rooted at 0 keeps the output ordered by map value.
  Rooting rt = root_at(t, 0);
  Embedding f(t.order(), kUnset);
  std::vector<std::uint8_t> used(g.order(), 0);
  std::function<void(std::size_t)> step = [&](std::size_t depth) {
    if (out.size() >= limit) return;
    if (depth == rt.bfs_order.size()) {
      out.push_back(f);
      return;
    }
    Vertex a = rt.bfs_order[depth];
    Vertex p = rt.parent[a];
    for (Vertex x = 0; x < static_cast<Vertex>(g.order()); ++x) {
      if (used[x] || (p != kUnset && !g.adjacent(x, f[p]))) continue;
      f[a] = x;
      used[x] = 1;
      step(depth + 1);
      used[x] = 0;
      f[a] = kUnset;
    }
  };
  step(0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Non-isomorphic free trees

namespace detail {

inline std::string rooted_code(const Tree& t, Vertex v, Vertex from) {
  std::vector<std::string> kids;
  for (Vertex w : t.neighbors(v)) {
    if (w != from) kids.push_back(rooted_code(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

inline std::vector<Vertex> tree_centers(const Tree& t) {
  const std::size_t n = t.order();
  if (n <= 2) {
    std::vector<Vertex> all;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) all.push_back(v);
    return all;
  }
  std::vector<std::size_t> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    deg[v] = t.degree(v);
    if (deg[v] == 1) layer.push_back(v);
  }
  std::size_t left = n;
  while (left > 2) {
    left -= layer.size();
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex w : t.neighbors(v)) {
        if (--deg[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

/// Isomorphism-invariant code of a free tree (AHU code from its centre, minimised over
/// the two centres of a bicentral tree).
inline std::string canonical_code(const Tree& t) {
  std::string best;
  for (Vertex c : detail::tree_centers(t)) {
    auto code = detail::rooted_code(t, c, kUnset);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

/// All non-isomorphic trees on n vertices. Rooted trees come from successive level
/// sequences; each is reduced to its free canonical code and kept once.
inline std::vector<Tree> nonisomorphic_trees(std::size_t n) {
  if (n == 0) throw InputError("tree order must be positive");
  if (n > 16) throw SizeError("tree enumeration is limited to 16 vertices");
  std::vector<Tree> out;
  if (n == 1) {
    out.push_back(Tree::single_vertex());
    return out;
  }
  std::vector<int> level(n);
  for (std::size_t i = 0; i < n; ++i) level[i] = static_cast<int>(i);
  std::set<std::string> seen;
  while (true) {
    std::vector<Edge> e;
    std::vector<Vertex> last_at(n + 1, kUnset);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) e.emplace_back(last_at[level[i] - 1], static_cast<Vertex>(i));
      last_at[level[i]] = static_cast<Vertex>(i);
    }
    Tree t = Tree::from_edges(n, e);
    if (seen.insert(canonical_code(t)).second) out.push_back(std::move(t));
    // Successor in the Beyer-Hedetniemi order.
    std::size_t p = n;
    for (std::size_t i = n; i-- > 1;) {
      if (level[i] > 1) {
        p = i;
        break;
      }
    }
    if (p == n) break;
    std::size_t q = p;
    while (level[q] != level[p] - 1) --q;
    for (std::size_t i = p; i < n; ++i) level[i] = level[i - (p - q)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjecture scanner

struct ScanCounterexample {
  std::size_t tree_index = 0;
  std::size_t host_index = 0;
};

struct ScanReport {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<Tree> trees;
  std::vector<Graph> hosts;
  std::vector<SearchVerdict> verdicts;  // tree-major: index = tree * hosts + host
  std::vector<ScanCounterexample> counterexamples;
  std::size_t found = 0;
  std::size_t none = 0;
  std::size_t budget_exceeded = 0;
  std::uint64_t total_nodes = 0;
  double seconds = 0;  // wall time, kept out of deterministic output
};

struct ScanOptions {
  std::size_t host_count = 1000;
  std::size_t max_host_order = 9;
  std::uint64_t budget = 1'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
  std::vector<Graph> explicit_hosts;  // used instead of sampling when non-empty
};

/// Host i of a scan: order uniform in [m+1, max_order], degrees delta >= floor(2m/3),
/// Delta >= m.
inline Graph scan_host(std::size_t m, std::size_t max_order, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  Rng rng(seq);
  std::uniform_int_distribution<std::size_t> order(m + 1, max_order);
  std::size_t n = order(rng);
  return gen_random_host(n, 2 * m / 3, m, rng());
}

inline ScanReport scan_conjecture(std::size_t m, std::uint64_t seed, const ScanOptions& opt = {}) {
  if (m < 1 || m > 6) throw SizeError("exhaustive tree side supports 1 <= m <= 6");
  if (opt.max_host_order < m + 1 || opt.max_host_order > 12) throw SizeError("host order range must lie within [m+1, 12]");
  auto start = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.m = m;
  rep.seed = seed;
  rep.trees = nonisomorphic_trees(m + 1);
  if (!opt.explicit_hosts.empty()) {
    rep.hosts = opt.explicit_hosts;
  } else {
    for (std::size_t i = 0; i < opt.host_count; ++i) rep.hosts.push_back(scan_host(m, opt.max_host_order, seed, i));
  }
  const std::size_t total = rep.trees.size() * rep.hosts.size();
  rep.verdicts.assign(total, SearchVerdict::None);
  std::vector<std::uint64_t> nodes(total, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      auto r = brute_force_embed(rep.trees[i / rep.hosts.size()], rep.hosts[i % rep.hosts.size()], opt.budget);
      if (r.verdict == SearchVerdict::None) {
        auto again = brute_force_embed(rep.trees[i / rep.hosts.size()], rep.hosts[i % rep.hosts.size()], 2 * opt.budget);
        r.verdict = again.verdict;
      }
      rep.verdicts[i] = r.verdict;
      nodes[i] = r.nodes;
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < total; ++i) {
    rep.total_nodes += nodes[i];
    switch (rep.verdicts[i]) {
      case SearchVerdict::Found: ++rep.found; break;
      case SearchVerdict::None:
        ++rep.none;
        rep.counterexamples.push_back({i / rep.hosts.size(), i % rep.hosts.size()});
        break;
      default: ++rep.budget_exceeded; break;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace treeembed
