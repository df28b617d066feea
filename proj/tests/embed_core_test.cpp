#include <gtest/gtest.h>

#include "oracles.hpp"
#include "treeembed/embed_core.hpp"
#include "treeembed/generators.hpp"
#include "treeembed/harness.hpp"

using namespace treeembed;

namespace {

bool valid(const Tree& t, const Graph& g, const EmbedOutcome& o) {
  return validate_embedding(t, g, o.embedding).complete_and_valid();
}

// Broom: path 0-1-2 with four leaves on 2.
Tree broom() { return Tree::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}}); }

}  // namespace

TEST(Greedy, PathIntoK5) {
  auto o = greedy_embed(path_tree(4), complete_graph(5));
  EXPECT_TRUE(o.success());
  EXPECT_TRUE(valid(path_tree(4), complete_graph(5), o));
}

TEST(Greedy, StarIntoC5Stuck) {
  auto o = greedy_embed(star_tree(4), cycle_graph(5));
  EXPECT_FALSE(o.success());
  EXPECT_EQ(o.stuck_at, 3);  // third leaf: two were placed on the two neighbours
  EXPECT_EQ(o.stuck_parent, 0);
  EXPECT_EQ(o.saturated_neighborhood.size(), 2u);
  EXPECT_TRUE(validate_embedding(star_tree(4), cycle_graph(5), o.embedding).consistent());
}

TEST(Greedy, PinnedSpider) {
  Tree t = spider_tree(2);
  Graph g = complete_graph(7);
  AnchorConstraint a;
  a.pins = {{0, 0}};
  auto o = greedy_embed(t, g, a);
  ASSERT_TRUE(o.success());
  EXPECT_EQ(o.embedding[0], 0);
  EXPECT_TRUE(valid(t, g, o));
}

TEST(Greedy, InconsistentAnchors) {
  Tree t = path_tree(3);
  Graph g = path_graph(4);
  AnchorConstraint dup;
  dup.pins = {{0, 1}, {1, 1}};
  EXPECT_THROW(greedy_embed(t, g, dup), InputError);
  AnchorConstraint far;
  far.pins = {{0, 0}, {1, 3}};
  EXPECT_THROW(greedy_embed(t, g, far), InputError);
  AnchorConstraint forb;
  forb.pins = {{0, 0}};
  forb.forbidden = HostMask{1, 0, 0, 0};
  EXPECT_THROW(greedy_embed(t, g, forb), InputError);
}

TEST(Greedy, HonoursPreferenceAndForbidden) {
  Tree t = path_tree(3);
  Graph g = complete_graph(6);
  AnchorConstraint a;
  a.pins = {{0, 0}};
  a.forbidden = HostMask{0, 1, 0, 0, 0, 0};
  a.preferred = HostMask{0, 0, 0, 0, 1, 1};
  a.preference = Preference::Prefer;
  auto o = greedy_embed(t, g, a);
  ASSERT_TRUE(o.success());
  EXPECT_EQ(o.embedding, (Embedding{0, 4, 5}));
  a.preference = Preference::Avoid;
  o = greedy_embed(t, g, a);
  EXPECT_EQ(o.embedding, (Embedding{0, 2, 3}));
}

TEST(Greedy, FrontierStaysConnected) {
  Rng rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    Tree t = random_tree(2 + rep % 15, rng);
    Graph g = random_graph(20, 0.5, rng);
    auto o = greedy_embed(t, g, {}, rep % 2 ? Traversal::Dfs : Traversal::Bfs);
    std::set<Vertex> placed;
    for (std::size_t i = 0; i < o.placement_order.size(); ++i) {
      Vertex a = o.placement_order[i];
      if (i > 0) {
        bool linked = false;
        for (Vertex b : t.neighbors(a)) linked = linked || placed.count(b);
        EXPECT_TRUE(linked);
      }
      placed.insert(a);
    }
    EXPECT_TRUE(validate_embedding(t, g, o.embedding).consistent());
    if (o.success()) {
      EXPECT_TRUE(valid(t, g, o));
    }
  }
}

TEST(Hall, EnoughNeighbours) {
  Tree t = star_tree(3);
  Graph g = complete_graph(4);
  Embedding f{0, kUnset, kUnset, kUnset};
  auto o = hall_complete(t, g, f, {{0, {1, 2, 3}}});
  EXPECT_TRUE(o.success());
  EXPECT_TRUE(valid(t, g, o));
}

TEST(Hall, PigeonholeViolator) {
  // Tree: 0-1, 0-2, 1-3, 2-4; leaves 3 (parent 1) and 4 (parent 2).
  Tree t = Tree::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
  // Host: hub 0 adjacent to 1, 2; both 1 and 2 see only 3 besides the hub.
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 4}});
  Embedding f{0, 1, 2, kUnset, kUnset};
  auto o = hall_complete(t, g, f, {{1, {3}}, {2, {4}}});
  EXPECT_FALSE(o.success());
  ASSERT_TRUE(o.hall_violator.has_value());
  EXPECT_EQ(o.hall_violator->tree_vertices, (std::vector<Vertex>{3, 4}));
  EXPECT_EQ(o.hall_violator->neighborhood, (std::vector<Vertex>{3}));
}

TEST(Hall, AgreesWithMatchingOracle) {
  Rng rng(43);
  for (int rep = 0; rep < 500; ++rep) {
    std::size_t hn = 4 + rep % 9;
    Graph g = random_graph(hn, 0.35, rng);
    // Star-of-stars tree: root 0, k parents, random leaf counts.
    std::size_t k = 1 + rng() % 3;
    std::vector<Edge> e;
    std::vector<LeafSlot> slots;
    Vertex next = static_cast<Vertex>(k + 1);
    for (Vertex p = 1; p <= static_cast<Vertex>(k); ++p) {
      e.emplace_back(0, p);
      LeafSlot s{p, {}};
      std::size_t c = rng() % 3;
      for (std::size_t j = 0; j < c; ++j) {
        e.emplace_back(p, next);
        s.leaves.push_back(next++);
      }
      slots.push_back(s);
    }
    Tree t = Tree::from_edges(static_cast<std::size_t>(next), e);
    // Random injective placement of the parents (edges need not hold for parents).
    std::vector<Vertex> perm(hn);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    if (hn < k + 1) continue;
    // Validate the partial map only when it is edge-preserving.
    Embedding f(t.order(), kUnset);
    for (Vertex p = 0; p <= static_cast<Vertex>(k); ++p) f[p] = perm[p];
    if (!validate_embedding(t, g, f).consistent()) continue;
    std::vector<std::vector<Vertex>> cand;
    for (auto& s : slots) {
      for (std::size_t j = 0; j < s.leaves.size(); ++j) {
        std::vector<Vertex> c;
        for (Vertex x = 0; x < static_cast<Vertex>(hn); ++x) {
          bool used = std::find(f.begin(), f.end(), x) != f.end();
          if (!used && g.adjacent(x, f[s.parent])) c.push_back(x);
        }
        cand.push_back(c);
      }
    }
    bool expect = oracle::max_matching_dp(cand, hn) == cand.size();
    auto o = hall_complete(t, g, f, slots);
    EXPECT_EQ(o.success(), expect);
    if (o.success()) {
      EXPECT_TRUE(valid(t, g, o));
    } else {
      ASSERT_TRUE(o.hall_violator.has_value());
      EXPECT_LT(o.hall_violator->neighborhood.size(), o.hall_violator->tree_vertices.size());
    }
  }
}

TEST(HallOrdered, CompleteHostPairs) {
  std::size_t m = 8;
  Tree t = caterpillar({3, 2, 1});  // 9 vertices
  Graph g = complete_graph(m + 1);
  auto lv = t.leaves();
  VertexSet leaves(std::vector<Vertex>(lv.begin(), lv.end()));
  auto ord = good_ordering(t, leaves);
  Embedding f(t.order(), kUnset);
  for (Vertex v = 0; v < 3; ++v) f[v] = v;
  auto rep = hall_complete_ordered(t, g, f, ord, m);
  EXPECT_TRUE(rep.outcome.success());
  for (auto& pc : rep.pairs) EXPECT_TRUE(pc.holds);
  EXPECT_TRUE(valid(t, g, rep.outcome));
}

TEST(HallOrdered, OverfullParent) {
  Tree t = star_tree(5);
  Graph g = complete_graph(4);
  Embedding f(6, kUnset);
  f[0] = 0;
  auto ord = good_ordering(t, VertexSet{1, 2, 3, 4, 5});
  auto rep = hall_complete_ordered(t, g, f, ord, 5);
  EXPECT_FALSE(rep.outcome.success());
  EXPECT_FALSE(rep.pairs[0].holds);
}

TEST(HallOrdered, RejectsInconsistentOrdering) {
  Tree t = star_tree(3);
  Graph g = complete_graph(4);
  auto ord = good_ordering(t, VertexSet{1, 2, 3});
  EXPECT_THROW(hall_complete_ordered(t, g, Embedding(4, kUnset), ord, 3), InputError);
}

TEST(HallOrdered, AgreesWithMatchingOracleOnCaterpillars) {
  Rng rng(47);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t spine = 2 + rng() % 3;
    std::vector<std::size_t> counts(spine);
    for (auto& c : counts) c = rng() % 4;
    Tree t = caterpillar(counts);
    std::size_t hn = std::max<std::size_t>(spine + 1, 6 + rng() % 9);
    Graph g = random_graph(hn, 0.7, rng);
    auto emb = greedy_embed(extract_subtree(t, [&] {
                              std::vector<Vertex> s(spine);
                              std::iota(s.begin(), s.end(), 0);
                              return s;
                            }()).tree,
                            g);
    if (!emb.success()) continue;
    Embedding f(t.order(), kUnset);
    for (Vertex i = 0; i < static_cast<Vertex>(spine); ++i) f[i] = emb.embedding[i];
    std::vector<Vertex> lv;
    for (Vertex v = static_cast<Vertex>(spine); v < static_cast<Vertex>(t.order()); ++v) lv.push_back(v);
    if (lv.empty()) continue;
    auto ord = good_ordering(t, VertexSet(lv));
    std::vector<std::vector<Vertex>> cand;
    for (auto& e : ord) {
      for (std::size_t j = 0; j < e.leaves.size(); ++j) {
        std::vector<Vertex> c;
        for (Vertex x : g.neighbors(f[e.parent]))
          if (std::find(f.begin(), f.end(), x) == f.end()) c.push_back(x);
        cand.push_back(c);
      }
    }
    bool expect = oracle::max_matching_dp(cand, hn) == cand.size();
    auto r = hall_complete_ordered(t, g, f, ord, 6);
    EXPECT_EQ(r.outcome.success(), expect);
    if (r.outcome.success()) {
      EXPECT_TRUE(valid(t, g, r.outcome));
    }
  }
}

TEST(Blockwise, PathIntoC9) {
  auto r = bfs_blockwise_embed(path_tree(4), cycle_graph(9));
  EXPECT_TRUE(r.outcome.success());
  EXPECT_EQ(r.host_girth, 9u);
  EXPECT_TRUE(valid(path_tree(4), cycle_graph(9), r.outcome));
}

TEST(Blockwise, SubcubicTreesIntoTutteCoxeter) {
  Graph g = tutte_coxeter_graph();
  EXPECT_EQ(girth(g), 8u);
  EXPECT_EQ(degree_profile(g).min_degree, 3u);
  EXPECT_EQ(degree_profile(g).max_degree, 3u);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const Tree& t : nonisomorphic_trees(n)) {
      std::size_t maxdeg = 0;
      for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) maxdeg = std::max(maxdeg, t.degree(v));
      if (maxdeg > 3) continue;
      auto r = bfs_blockwise_embed(t, g);
      EXPECT_TRUE(r.outcome.success()) << format_tree(t);
      EXPECT_TRUE(valid(t, g, r.outcome));
    }
  }
}

TEST(Blockwise, StarIntoC9Stuck) {
  auto r = bfs_blockwise_embed(star_tree(4), cycle_graph(9));
  EXPECT_FALSE(r.outcome.success());
  EXPECT_EQ(r.needed_degree, 4u);
}

TEST(StarHeavy, StarIntoK6) {
  auto o = star_heavy_embed(star_tree(5), complete_graph(6), 0);
  EXPECT_TRUE(o.success());
  EXPECT_TRUE(valid(star_tree(5), complete_graph(6), o));
}

TEST(StarHeavy, SpiderIntoTwinTrianglesStuck) {
  auto inst = gen_extremal(2, ExtremalKind::TwinCliques);
  auto o = star_heavy_embed(inst.tree, inst.host, 0);
  EXPECT_FALSE(o.success());
  EXPECT_EQ(brute_force_embed(inst.tree, inst.host).verdict, SearchVerdict::None);
}

TEST(StarHeavy, BroomIntoK8) {
  Tree t = broom();
  auto o = star_heavy_embed(t, complete_graph(8), 2);
  ASSERT_TRUE(o.success());
  EXPECT_TRUE(valid(t, complete_graph(8), o));
}

TEST(Soundness, EverySuccessValidates) {
  Rng rng(53);
  for (int rep = 0; rep < 2000; ++rep) {
    Tree t = random_tree(1 + rep % 12, rng);
    Graph g = random_graph(6 + rep % 14, 0.3 + 0.05 * (rep % 12), rng);
    auto o1 = greedy_embed(t, g);
    if (o1.success()) {
      EXPECT_TRUE(valid(t, g, o1));
    }
    auto o2 = bfs_blockwise_embed(t, g).outcome;
    if (o2.success()) {
      EXPECT_TRUE(valid(t, g, o2));
    }
    auto o3 = star_heavy_embed(t, g, leaf_profile(t).argmax);
    if (o3.success()) {
      EXPECT_TRUE(valid(t, g, o3));
    }
    // Determinism.
    EXPECT_EQ(greedy_embed(t, g).embedding, o1.embedding);
  }
}
