#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "treeembed/constants.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/harness.hpp"
#include "treeembed/json_io.hpp"
#include "treeembed/pipelines.hpp"

using namespace treeembed;

namespace {

Constants make(std::size_t m, std::optional<std::size_t> g = std::nullopt) {
  Constants c;
  c.m = m;
  c.g_override = g;
  return c;
}

// Hub 10 sees four vertices of each of two K_5 blocks.
Graph hub_with_blocks() {
  Graph blocks = disjoint_union(complete_graph(5), complete_graph(5));
  std::vector<Edge> e = blocks.edges();
  for (Vertex x : {0, 1, 2, 3, 5, 6, 7, 8}) e.emplace_back(10, x);
  return Graph::from_edges(11, e);
}

bool has_attempt(const Theorem2Report& r, const std::string& prefix, const std::string& result) {
  for (const auto& a : r.attempts)
    if (a.name.rfind(prefix, 0) == 0 && a.result == result) return true;
  return false;
}

}  // namespace

TEST(ConstantsFile, ParsesKeys) {
  auto c = parse_constants("# run\nm = 12\nalpha=1/1000\ngamma=0.0001\nepsilon=1/300\ng_override=40\nretries=5\nmode=strict\n");
  EXPECT_EQ(c.m, 12u);
  EXPECT_EQ(c.alpha, Rational(1, 1000));
  EXPECT_EQ(c.gamma_value(), Rational(1, 10000));
  EXPECT_EQ(c.epsilon, Rational(1, 300));
  EXPECT_EQ(c.g_override, std::optional<std::size_t>(40));
  EXPECT_EQ(c.retries, 5u);
  EXPECT_TRUE(c.strict);
}

TEST(ConstantsFile, Defaults) {
  Constants c = parse_constants("m=9");
  EXPECT_EQ(c.alpha, Rational(1, 5));
  EXPECT_EQ(c.gamma_value(), Rational(1, 25));
  EXPECT_EQ(c.sparsity_ratio, Rational(1, 25));
  EXPECT_EQ(c.retries, 64u);
  EXPECT_FALSE(c.strict);
  EXPECT_EQ(c.t(), 10u);
  EXPECT_EQ(c.t_prime(), 4u);
}

TEST(ConstantsFile, Rejects) {
  EXPECT_THROW(parse_constants("m=4\nbeta=1"), InputError);
  EXPECT_THROW(parse_constants("m 4"), InputError);
  EXPECT_THROW(parse_constants("alpha=1"), InputError);
  EXPECT_THROW(parse_constants("alpha=0"), InputError);
  EXPECT_THROW(parse_constants("mode=loose"), InputError);
  EXPECT_THROW(parse_constants("m=5\ng_override=4"), InputError);
  EXPECT_THROW(parse_constants("retries=0"), InputError);
  EXPECT_THROW(parse_constants("m=-3"), InputError);
}

TEST(ConstantsFile, DegreeBound) {
  EXPECT_EQ(max_degree_bound(1), std::optional<std::uint64_t>(257));
  EXPECT_EQ(max_degree_bound(2), std::optional<std::uint64_t>(59050));
  EXPECT_EQ(max_degree_bound(3), std::optional<std::uint64_t>(16777217));
  EXPECT_FALSE(max_degree_bound(20).has_value());
  EXPECT_EQ(required_max_degree(make(3, 6)), std::optional<std::uint64_t>(6));
}

TEST(Theorem1, PathIntoK7) {
  auto r = theorem1_embed(path_tree(4), complete_graph(7), make(3, 6));
  ASSERT_TRUE(r.success());
  EXPECT_TRUE(oracle::is_embedding(path_tree(4), complete_graph(7), r.outcome.embedding));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Theorem1, HubWithBlocksUsesEscapeSets) {
  Tree t = Tree::from_edges(5, {{0, 1}, {1, 2}, {0, 3}, {3, 4}});
  Graph g = hub_with_blocks();
  auto r = theorem1_embed(t, g, make(4, 8));
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.branch, "case2");
  EXPECT_EQ(r.hub, 10);
  EXPECT_EQ(r.outcome.embedding[r.split], 10);
  ASSERT_EQ(r.escape_sizes.size(), 1u);
  EXPECT_EQ(r.escape_sizes[0].size(), r.t_prime + 1);
  EXPECT_EQ(r.escape_sizes[0][0], 3u);
  EXPECT_TRUE(oracle::is_embedding(t, g, r.outcome.embedding));
}

TEST(Theorem1, BicliqueCase) {
  Graph g = complete_bipartite(3, 8);
  auto r = theorem1_embed(path_tree(5), g, make(4, 8));
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.branch, "case1");
  ASSERT_TRUE(r.biclique.has_value());
  EXPECT_EQ(r.biclique->b.size(), 3u);
  EXPECT_EQ(r.biclique->a.size(), 5u);
  for (Vertex x : r.biclique->a)
    for (Vertex y : r.biclique->b) EXPECT_TRUE(g.adjacent(x, y));
  for (Vertex x : r.b_prime)
    for (Vertex y : r.b_prime) EXPECT_FALSE(g.adjacent(x, y));
  // The larger colour class of the subtree sits on B'.
  std::size_t on_b = 0;
  for (Vertex x : r.outcome.embedding) on_b += r.b_prime.contains(x) ? 1 : 0;
  EXPECT_GE(on_b, 3u);
  EXPECT_TRUE(oracle::is_embedding(path_tree(5), g, r.outcome.embedding));
}

TEST(Theorem1, LargeSmallSideSkipsBiclique) {
  auto r = theorem1_embed(path_tree(11), complete_graph(12), make(10, 11));
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.t_prime, 5u);
  bool skipped = false;
  for (const auto& s : r.trace) skipped = skipped || s.rfind("case1 skipped", 0) == 0;
  EXPECT_TRUE(skipped);
  EXPECT_EQ(r.branch, "case2");
}

TEST(Theorem1, LeafHeavyShortcut) {
  auto r = theorem1_embed(star_tree(5), complete_graph(6), make(5, 5));
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.branch, "leaf-heavy");
}

TEST(Theorem1, ReportsUnmetHypotheses) {
  auto r = theorem1_embed(path_tree(4), path_graph(8), make(3, 6));
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_TRUE(r.success());
  EXPECT_TRUE(oracle::is_embedding(path_tree(4), path_graph(8), r.outcome.embedding));
  auto no_override = theorem1_embed(path_tree(4), complete_graph(7), make(3));
  EXPECT_EQ(no_override.warnings.size(), 1u);
}

TEST(Theorem1, NeverBeatsTheOracle) {
  for (std::size_t k : {2, 3}) {
    auto e = gen_extremal(k, ExtremalKind::TwinCliques);
    auto r = theorem1_embed(e.tree, e.host, make(3 * k, degree_profile(e.host).max_degree));
    EXPECT_FALSE(r.success()) << k;
    EXPECT_EQ(r.branch, "none");
  }
}

TEST(Theorem1, FuzzedSoundness) {
  Rng rng(21);
  std::size_t ok = 0, none = 0;
  std::map<std::string, std::size_t> branches;
  for (int i = 0; i < 300; ++i) {
    std::size_t m = 3 + rng() % 6;
    std::size_t n = m + 2 + rng() % 6;
    Graph g = gen_random_host(n, 2 * m / 3, m, rng());
    Tree t = random_tree(m + 1, rng);
    auto r = theorem1_embed(t, g, make(m, degree_profile(g).max_degree));
    auto truth = brute_force_embed(t, g);
    ASSERT_NE(truth.verdict, SearchVerdict::BudgetExceeded);
    if (r.success()) {
      ++ok;
      ++branches[r.branch];
      EXPECT_TRUE(oracle::is_embedding(t, g, r.outcome.embedding)) << format_tree(t) << format_edge_list(g);
    }
    if (truth.verdict == SearchVerdict::None) {
      ++none;
      EXPECT_FALSE(r.success());
    }
  }
  EXPECT_GT(ok, 250u);
  EXPECT_GT(branches["leaf-heavy"], 0u);
  EXPECT_GT(branches["case2"], 0u);
}

TEST(Theorem2, CompleteHost) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    Tree t = random_tree(13, rng);
    auto r = theorem2_embed(t, complete_graph(13), make(12), i);
    ASSERT_TRUE(r.success());
    EXPECT_TRUE(oracle::is_embedding(t, complete_graph(13), r.outcome.embedding));
  }
}

TEST(Theorem2, TwinBlocksAgreeWithOracle) {
  Graph g = add_universal(disjoint_union(complete_graph(13), complete_graph(13)));
  auto truth = brute_force_embed(spider_tree(4), g);
  auto r = theorem2_embed(spider_tree(4), g, make(12));
  ASSERT_NE(truth.verdict, SearchVerdict::BudgetExceeded);
  if (truth.verdict == SearchVerdict::None) {
    EXPECT_FALSE(r.success());
  }
  if (r.success()) {
    EXPECT_TRUE(oracle::is_embedding(spider_tree(4), g, r.outcome.embedding));
  }
}

TEST(Theorem2, QuasiRandomHosts) {
  Rng rng(40);
  std::size_t gaps = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = gen_random_host(40, 12, 12, 1000 + i);
    Tree t = random_tree(13, rng);
    auto r = theorem2_embed(t, g, make(12), i);
    if (r.success()) {
      EXPECT_TRUE(oracle::is_embedding(t, g, r.outcome.embedding));
    } else if (brute_force_embed(t, g).verdict == SearchVerdict::Found) {
      ++gaps;
    }
  }
  RecordProperty("completeness_gaps", static_cast<int>(gaps));
  EXPECT_LE(gaps, 100u);
}

TEST(Theorem2, ExtremalHostsStayStuck) {
  std::vector<ExtremalInstance> cases{gen_extremal(2, ExtremalKind::TwinCliques), gen_extremal(3, ExtremalKind::TwinCliques),
                                      gen_extremal(4, ExtremalKind::TwinCliques), gen_extremal(4, ExtremalKind::Bipartite)};
  for (const auto& e : cases) {
    ASSERT_EQ(brute_force_embed(e.tree, e.host, 100'000'000).verdict, SearchVerdict::None);
    auto r = theorem2_embed(e.tree, e.host, make(3 * e.k));
    EXPECT_FALSE(r.success());
    EXPECT_EQ(r.branch, "none");
    ASSERT_FALSE(r.attempts.empty());
    for (const auto& a : r.attempts) EXPECT_NE(a.result, "SUCCESS");
    EXPECT_EQ(r.attempts.back().name, "greedy-dfs");
  }
}

TEST(Theorem2, BranchesFollowProofOrder) {
  Graph g = gen_extremal(4, ExtremalKind::TwinCliques).host;
  auto r = theorem2_embed(spider_tree(4), g, make(12));
  std::vector<std::string> names;
  for (const auto& a : r.attempts) names.push_back(a.name);
  auto pos = [&](const std::string& prefix) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i].rfind(prefix, 0) == 0) return static_cast<long>(i);
    return -1L;
  };
  EXPECT_EQ(pos("leaf-heavy"), 0);
  EXPECT_EQ(pos("sparse"), 1);
  EXPECT_EQ(pos("no-dense"), 2);
  EXPECT_LT(pos("no-dense"), pos("big-fill"));
  EXPECT_LT(pos("big-fill"), pos("cross-"));
  EXPECT_LT(pos("cross-"), pos("spill"));
  EXPECT_LT(pos("spill"), pos("greedy"));
}

TEST(Theorem2, SparseBranchOnLongCycle) {
  Constants c = make(50);
  c.epsilon = Rational(1, 10);
  auto r = theorem2_embed(path_tree(51), cycle_graph(200), c);
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.branch, "sparse");
  EXPECT_TRUE(oracle::is_embedding(path_tree(51), cycle_graph(200), r.outcome.embedding));
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Theorem2, BranchCoverageAndSoundness) {
  Rng rng(77);
  std::map<std::string, std::size_t> seen;
  struct Setup {
    Rational alpha, epsilon;
  };
  std::vector<Setup> setups{{Rational(1, 5), Rational(1, 250)},
                            {Rational(1, 5), Rational(1, 4)},
                            {Rational(1, 1'000'000), Rational(1, 4)}};
  for (const auto& s : setups) {
    for (int i = 0; i < 40; ++i) {
      Graph g = gen_random_host(30 + rng() % 11, 12, 12, rng());
      Tree t = sparse_leaf_tree(13, rng);
      Constants c = make(12);
      c.alpha = s.alpha;
      c.gamma = Rational(1, 1000);
      c.epsilon = s.epsilon;
      c.retries = 8;
      auto r = theorem2_embed(t, g, c, static_cast<std::uint64_t>(i));
      if (r.success()) {
        ++seen[r.branch.substr(0, r.branch.find('['))];
        EXPECT_TRUE(oracle::is_embedding(t, g, r.outcome.embedding));
      }
    }
  }
  EXPECT_GT(seen["leaf-heavy"], 0u);
  EXPECT_GT(seen["big-fill"], 0u);
  EXPECT_GT(seen["no-dense"], 0u);
}

TEST(Theorem2, SmallExpansionsReachCrossRouting) {
  // Two K_7 blocks and a hub, m = 9: both expansions have fewer than m+1 vertices.
  Graph g = gen_extremal(4, ExtremalKind::TwinCliques).host;
  Tree t = path_tree(10);
  Constants c = make(9);
  c.alpha = Rational(1, 1000);
  c.epsilon = Rational(1, 4);
  auto r = theorem2_embed(t, g, c);
  EXPECT_EQ(r.pieces, 2u);
  EXPECT_TRUE(has_attempt(r, "big-fill", "SKIPPED"));
  ASSERT_TRUE(r.success());
  EXPECT_EQ(r.branch.rfind("cross", 0), 0u);
  EXPECT_TRUE(oracle::is_embedding(t, g, r.outcome.embedding));
}

TEST(Theorem2, OneBigExpansionIsACompletenessGap) {
  // At alpha = 1/5 the whole host is one expansion and every branch gets stuck, though
  // the path does embed.
  Graph g = gen_extremal(4, ExtremalKind::TwinCliques).host;
  Tree t = path_tree(10);
  Constants c = make(9);
  c.epsilon = Rational(1, 4);
  auto r = theorem2_embed(t, g, c);
  EXPECT_EQ(r.pieces, 1u);
  EXPECT_FALSE(r.success());
  EXPECT_EQ(brute_force_embed(t, g).verdict, SearchVerdict::Found);
  EXPECT_LT(detail::placed_count(r.outcome), t.order());
}

TEST(Theorem2, DeterministicJson) {
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    Graph g = gen_random_host(36, 12, 12, 300 + i);
    Tree t = sparse_leaf_tree(13, rng);
    Constants c = make(12);
    c.alpha = Rational(1, 1000);
    c.epsilon = Rational(1, 4);
    EXPECT_EQ(dump(to_json(theorem2_embed(t, g, c, 9))), dump(to_json(theorem2_embed(t, g, c, 9))));
    EXPECT_EQ(dump(to_json(theorem1_embed(t, g, make(12, 12)))), dump(to_json(theorem1_embed(t, g, make(12, 12)))));
  }
}

TEST(Theorem2, RejectsBadConstants) {
  Constants c = make(12);
  c.alpha = Rational(2);
  EXPECT_THROW(theorem2_embed(path_tree(3), complete_graph(4), c), InputError);
  c.alpha = Rational(1, 1'000'000'000'000);
  EXPECT_THROW(theorem2_embed(path_tree(3), complete_graph(4), c), InputError);
  c.gamma = Rational(1, 1000);
  EXPECT_NO_THROW(theorem2_embed(path_tree(3), complete_graph(4), c));
}
