#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "treeembed/embedding.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/harness.hpp"

using namespace treeembed;

namespace {

// Tries every injective map of tree vertices to host vertices.
bool embeds_by_permutation(const Tree& t, const Graph& g) {
  const std::size_t n = t.order(), h = g.order();
  if (n > h) return false;
  std::vector<Vertex> f(n);
  std::vector<bool> used(h, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return oracle::is_embedding(t, g, f);
    for (Vertex x = 0; x < static_cast<Vertex>(h); ++x) {
      if (used[x]) continue;
      used[x] = true;
      f[i] = x;
      if (rec(i + 1)) return true;
      used[x] = false;
    }
    return false;
  };
  return rec(0);
}

Tree relabel(const Tree& t, const std::vector<Vertex>& perm) {
  std::vector<Edge> e;
  for (auto [a, b] : t.edges()) e.emplace_back(perm[a], perm[b]);
  return Tree::from_edges(t.order(), e);
}

}  // namespace

TEST(BruteForce, PathIntoK4) {
  auto r = brute_force_embed(path_tree(4), complete_graph(4));
  ASSERT_EQ(r.verdict, SearchVerdict::Found);
  EXPECT_TRUE(oracle::is_embedding(path_tree(4), complete_graph(4), r.embedding));
}

TEST(BruteForce, SpiderAgainstTwinTriangles) {
  Graph g = add_universal(disjoint_union(complete_graph(3), complete_graph(3)));
  auto r = brute_force_embed(spider_tree(2), g);
  EXPECT_EQ(r.verdict, SearchVerdict::None);
  // Centre on the universal vertex leaves three 2-vertex paths for two triangles and a
  // centre elsewhere sees at most 3 vertices; both need more room than the host has.
  EXPECT_FALSE(embeds_by_permutation(spider_tree(2), g));
}

TEST(BruteForce, StarIntoC5) {
  EXPECT_EQ(brute_force_embed(star_tree(4), cycle_graph(5)).verdict, SearchVerdict::None);
}

TEST(BruteForce, TreeLargerThanHost) {
  EXPECT_EQ(brute_force_embed(path_tree(6), complete_graph(5)).verdict, SearchVerdict::None);
}

TEST(BruteForce, BudgetIsExplicit) {
  // P_8 in the Petersen graph needs more than one search node.
  auto r = brute_force_embed(path_tree(8), petersen_graph(), 1);
  EXPECT_EQ(r.verdict, SearchVerdict::BudgetExceeded);
  EXPECT_TRUE(r.embedding.empty());
  auto full = brute_force_embed(path_tree(8), petersen_graph());
  EXPECT_EQ(full.verdict, SearchVerdict::Found);
}

TEST(BruteForce, Deterministic) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Tree t = random_tree(7, rng);
    Graph g = random_graph(9, 0.5, rng);
    auto a = brute_force_embed(t, g), b = brute_force_embed(t, g);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.embedding, b.embedding);
    EXPECT_EQ(a.nodes, b.nodes);
  }
}

TEST(BruteForce, AgreesWithPermutationSearch) {
  Rng rng(11);
  std::size_t found = 0, none = 0;
  for (int i = 0; i < 400; ++i) {
    std::size_t n = 2 + rng() % 5, h = n + rng() % 3;
    Tree t = random_tree(n, rng);
    Graph g = random_graph(h, 0.25 + 0.1 * static_cast<double>(rng() % 6), rng);
    auto r = brute_force_embed(t, g);
    ASSERT_NE(r.verdict, SearchVerdict::BudgetExceeded);
    bool expect = embeds_by_permutation(t, g);
    EXPECT_EQ(r.verdict == SearchVerdict::Found, expect) << format_tree(t) << format_edge_list(g);
    if (r.verdict == SearchVerdict::Found) {
      ++found;
      EXPECT_TRUE(oracle::is_embedding(t, g, r.embedding));
    } else {
      ++none;
    }
  }
  EXPECT_GT(found, 50u);
  EXPECT_GT(none, 50u);
}

TEST(Enumerate, Counts) {
  // Ordered pairs of adjacent vertices in K_3, and paths of length 2 in C_4.
  EXPECT_EQ(enumerate_embeddings(path_tree(2), complete_graph(3)).size(), 6u);
  EXPECT_EQ(enumerate_embeddings(path_tree(3), cycle_graph(4)).size(), 8u);
  EXPECT_TRUE(enumerate_embeddings(star_tree(3), cycle_graph(6)).empty());
}

TEST(Enumerate, EveryMapValidAndDistinct) {
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    Tree t = random_tree(2 + rng() % 4, rng);
    Graph g = random_graph(6, 0.5, rng);
    auto all = enumerate_embeddings(t, g);
    std::set<Embedding> uniq(all.begin(), all.end());
    EXPECT_EQ(uniq.size(), all.size());
    for (const auto& f : all) EXPECT_TRUE(oracle::is_embedding(t, g, f));
    auto r = brute_force_embed(t, g);
    EXPECT_EQ(r.verdict == SearchVerdict::Found, !all.empty());
    if (r.verdict == SearchVerdict::Found) {
      EXPECT_TRUE(uniq.count(r.embedding));
    }
  }
}

TEST(TreeEnumeration, KnownCounts) {
  const std::vector<std::size_t> expected{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (std::size_t n = 1; n <= expected.size(); ++n) EXPECT_EQ(nonisomorphic_trees(n).size(), expected[n - 1]) << n;
}

TEST(TreeEnumeration, PairwiseDistinctCodes) {
  auto trees = nonisomorphic_trees(8);
  std::set<std::string> codes;
  for (const auto& t : trees) codes.insert(canonical_code(t));
  EXPECT_EQ(codes.size(), trees.size());
}

TEST(TreeEnumeration, CodeIgnoresLabels) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Tree t = random_tree(2 + rng() % 12, rng);
    std::vector<Vertex> perm(t.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(canonical_code(t), canonical_code(relabel(t, perm)));
  }
  EXPECT_NE(canonical_code(path_tree(5)), canonical_code(star_tree(4)));
}

TEST(TreeEnumeration, Limits) {
  EXPECT_THROW(nonisomorphic_trees(0), InputError);
  EXPECT_THROW(nonisomorphic_trees(17), SizeError);
}

TEST(RandomHost, DegreeBounds) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph g = gen_random_host(7, 2, 4, s);
    auto p = degree_profile(g);
    EXPECT_GE(p.min_degree, 2u);
    EXPECT_GE(p.max_degree, 4u);
  }
}

TEST(RandomHost, ForcedComplete) { EXPECT_EQ(gen_random_host(5, 4, 4, 1), complete_graph(5)); }

TEST(RandomHost, Impossible) {
  EXPECT_THROW(gen_random_host(4, 3, 5, 1), InputError);
  EXPECT_THROW(gen_random_host(4, 4, 1, 1), InputError);
}

TEST(RandomHost, SeedDeterminism) {
  EXPECT_EQ(gen_random_host(20, 6, 10, 42), gen_random_host(20, 6, 10, 42));
  EXPECT_NE(gen_random_host(20, 6, 10, 42), gen_random_host(20, 6, 10, 43));
}

TEST(Extremal, TwinCliquesK2) {
  auto e = gen_extremal(2, ExtremalKind::TwinCliques);
  auto p = degree_profile(e.host);
  EXPECT_EQ(e.host.order(), 7u);
  EXPECT_EQ(p.min_degree, 3u);
  EXPECT_EQ(p.max_degree, 6u);
  EXPECT_EQ(e.tree.order(), 7u);
  EXPECT_EQ(e.tree.edge_count(), 6u);
  EXPECT_FALSE(e.expected_embeddable);
}

TEST(Extremal, TwinCliquesK3) {
  auto e = gen_extremal(3, ExtremalKind::TwinCliques);
  auto p = degree_profile(e.host);
  EXPECT_EQ(e.host.order(), 11u);
  EXPECT_EQ(p.min_degree, 5u);
  EXPECT_EQ(p.max_degree, 10u);
  EXPECT_EQ(e.tree.edge_count(), 9u);
  EXPECT_EQ(brute_force_embed(e.tree, e.host).verdict, SearchVerdict::None);
}

TEST(Extremal, BipartiteK4) {
  auto e = gen_extremal(4, ExtremalKind::Bipartite);
  auto p = degree_profile(e.host);
  EXPECT_EQ(e.host.order(), 13u);
  EXPECT_EQ(p.min_degree, 7u);
  EXPECT_EQ(p.max_degree, 12u);
  EXPECT_EQ(e.tree.edge_count(), 12u);
  EXPECT_EQ(brute_force_embed(e.tree, e.host, 100'000'000).verdict, SearchVerdict::None);
}

TEST(Extremal, DegreeArithmetic) {
  for (std::size_t k = 2; k <= 6; ++k) {
    auto e = gen_extremal(k, ExtremalKind::TwinCliques);
    std::size_t m = 3 * k;
    auto p = degree_profile(e.host);
    EXPECT_EQ(p.min_degree, 2 * m / 3 - 1);
    EXPECT_EQ(p.max_degree, 4 * k - 2);
    EXPECT_GE(p.max_degree, m);
  }
  for (std::size_t k = 4; k <= 6; ++k) {
    auto e = gen_extremal(k, ExtremalKind::Bipartite);
    auto p = degree_profile(e.host);
    EXPECT_EQ(p.min_degree, 2 * k - 1);
    EXPECT_GE(p.max_degree, 3 * k);
  }
}

TEST(Extremal, BelowThreshold) {
  EXPECT_THROW(gen_extremal(1, ExtremalKind::TwinCliques), InputError);
  EXPECT_THROW(gen_extremal(3, ExtremalKind::Bipartite), InputError);
}

TEST(Scan, SmallMHasNoCounterexample) {
  ScanOptions opt;
  opt.host_count = 200;
  auto r3 = scan_conjecture(3, 1, opt);
  EXPECT_EQ(r3.trees.size(), 2u);
  EXPECT_EQ(r3.verdicts.size(), 2u * 200u);
  EXPECT_EQ(r3.found + r3.none + r3.budget_exceeded, r3.verdicts.size());
  EXPECT_TRUE(r3.counterexamples.empty());
  auto r4 = scan_conjecture(4, 1, opt);
  EXPECT_EQ(r4.trees.size(), 3u);
  EXPECT_TRUE(r4.counterexamples.empty());
}

TEST(Scan, SampledHostsMeetDegreeBounds) {
  for (std::size_t i = 0; i < 50; ++i) {
    Graph g = scan_host(5, 9, 7, i);
    auto p = degree_profile(g);
    EXPECT_GE(p.min_degree, 3u);
    EXPECT_GE(p.max_degree, 5u);
    EXPECT_LE(g.order(), 9u);
  }
}

TEST(Scan, Deterministic) {
  ScanOptions opt;
  opt.host_count = 50;
  auto a = scan_conjecture(4, 9, opt), b = scan_conjecture(4, 9, opt);
  EXPECT_EQ(a.verdicts, b.verdicts);
  EXPECT_EQ(a.total_nodes, b.total_nodes);
  ASSERT_EQ(a.hosts.size(), b.hosts.size());
  for (std::size_t i = 0; i < a.hosts.size(); ++i) EXPECT_EQ(a.hosts[i], b.hosts[i]);
}

TEST(Scan, ExtremalHostShowsTightness) {
  auto e = gen_extremal(2, ExtremalKind::TwinCliques);
  ScanOptions opt;
  opt.explicit_hosts = {e.host};
  auto r = scan_conjecture(6, 0, opt);
  EXPECT_EQ(r.trees.size(), 11u);
  ASSERT_FALSE(r.counterexamples.empty());
  bool spider = false;
  for (const auto& c : r.counterexamples) {
    EXPECT_FALSE(embeds_by_permutation(r.trees[c.tree_index], e.host));
    spider = spider || canonical_code(r.trees[c.tree_index]) == canonical_code(e.tree);
  }
  EXPECT_TRUE(spider);
}

TEST(Scan, Limits) {
  EXPECT_THROW(scan_conjecture(7, 0), SizeError);
  ScanOptions opt;
  opt.max_host_order = 4;
  EXPECT_THROW(scan_conjecture(4, 0, opt), SizeError);
}
