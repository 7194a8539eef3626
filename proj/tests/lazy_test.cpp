#include <gtest/gtest.h>

#include "incsssp/lazy.hpp"
#include "incsssp/oracle.hpp"
#include "test_support.hpp"

namespace incsssp {
namespace {

constexpr Dist kBigCap = 1'000'000;

TEST(Bucket, ExactCeiling) {
  EXPECT_EQ(bucket(0, {7, 3}), 0);
  const Granularity g{3, 2};  // 1.5
  EXPECT_EQ(bucket(7, g), 5);
  EXPECT_EQ(bucket(6, g), 4);
  EXPECT_LT(bucket(6, g), bucket(7, g));
  EXPECT_EQ(bucket(kUnreachable, g), kCapBucket);
}

TEST(Bucket, Monotone) {
  const Granularity grans[] = {{1, 1}, {3, 2}, {2, 7}, {13, 5}};
  for (const auto& g : grans) {
    for (Dist d = 0; d < 200; ++d) EXPECT_LE(bucket(d, g), bucket(d + 1, g));
  }
}

TEST(BatchIndex, LargestPowerOfTwo) {
  EXPECT_EQ(batch_index(4), (BatchIndex{2, 1}));
  EXPECT_EQ(batch_index(6), (BatchIndex{1, 3}));
  EXPECT_EQ(batch_index(7), (BatchIndex{0, 7}));
  EXPECT_THROW(batch_index(0), Error);
}

TEST(TryRelax, CrossesBucketBoundary) {
  Graph g(2, 10);
  g.insert_edge(0, 1, 3);
  EstimateTable t(2, 0, kBigCap, {2, 1});
  t.lower(1, 10, std::nullopt);
  EXPECT_TRUE(t.try_relax(0, 1, 3));
  EXPECT_EQ(t.estimate(1), 3);
  EXPECT_EQ(t.parent(1), Vertex{0});
}

TEST(TryRelax, EqualBucketIsNoRelaxation) {
  EstimateTable t(2, 0, kBigCap, {2, 1});
  t.lower(1, 4, std::nullopt);
  EXPECT_FALSE(t.try_relax(0, 1, 3));
  EXPECT_EQ(t.estimate(1), 4);
}

TEST(TryRelax, CapBucketIsMaximal) {
  EstimateTable t(2, 0, kBigCap, {5, 1});
  ASSERT_TRUE(t.at_cap(1));
  EXPECT_TRUE(t.try_relax(0, 1, 1));
  EXPECT_EQ(t.estimate(1), 1);
}

TEST(TryRelax, CandidateAtCapStaysUnreachable) {
  EstimateTable t(2, 0, 5, {1, 1});
  EXPECT_FALSE(t.try_relax(0, 1, 5));
  EXPECT_TRUE(t.at_cap(1));
}

TEST(TryRelax, AdditiveRuleNeedsFullQuantum) {
  EstimateTable t(2, 0, kBigCap, {2, 1}, RelaxRule::kAdditive);
  t.lower(1, 4, std::nullopt);
  EXPECT_FALSE(t.try_relax(0, 1, 3));  // saves 1 < 2
  EXPECT_TRUE(t.try_relax(0, 1, 2));   // saves 2
  EXPECT_EQ(t.estimate(1), 2);
}

TEST(TryRelax, ListenerSeesEveryDecrease) {
  EstimateTable t(3, 0, kBigCap, {1, 1});
  std::vector<std::tuple<Vertex, Dist, Dist>> seen;
  t.set_listener([&](Vertex v, Dist a, Dist b) { seen.emplace_back(v, a, b); });
  t.lower(1, 9, std::nullopt);
  t.try_relax(0, 1, 2);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[1], std::make_tuple(Vertex{1}, Dist{9}, Dist{2}));
}

TEST(PartialDijkstra, EmptyInputIsNoOp) {
  Graph g(2, 5);
  g.insert_edge(0, 1, 1);
  EstimateTable t(2, 0, kBigCap, {1, 1});
  t.lower(1, 4, 0);
  EXPECT_TRUE(partial_dijkstra(t, g, {}).empty());
  EXPECT_EQ(t.estimate(1), 4);
}

TEST(PartialDijkstra, ChainExample) {
  // s -> a -> b, unit weights; estimates (0, 5, 9) with a preset to 1.
  Graph g(3, 5);
  g.insert_edge(0, 1, 1);
  g.insert_edge(1, 2, 1);
  EstimateTable t(3, 0, kBigCap, {1, 1});
  t.lower(1, 5, 0);
  t.lower(2, 9, 1);
  t.lower(1, 1, 0);
  const std::vector<Vertex> input{1};
  const TouchedSet touched = partial_dijkstra(t, g, input);
  EXPECT_EQ(touched, (TouchedSet{2}));
  EXPECT_EQ(t.estimate(2), 2);
  // Same as a Dijkstra restricted to {a, b} seeded with d(a) = 1.
  EXPECT_EQ(t.estimate(2), t.estimate(1) + 1);
}

TEST(PartialDijkstra, QueuedVertexTakesPlainImprovementWithoutTouch) {
  // a and c are both in V_input; c's estimate improves by less than a
  // quantum via a, so c is updated but not reported touched.
  Graph g(3, 10);
  g.insert_edge(1, 2, 1);
  EstimateTable t(3, 0, kBigCap, {10, 1});
  t.lower(1, 3, std::nullopt);
  t.lower(2, 5, std::nullopt);
  const std::vector<Vertex> input{1, 2};
  const TouchedSet touched = partial_dijkstra(t, g, input);
  EXPECT_TRUE(touched.empty());
  EXPECT_EQ(t.estimate(2), 4);
  EXPECT_EQ(t.parent(2), Vertex{1});
}

TEST(PartialDijkstra, FixedSetHasNoEdgeError) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Prng rng(seed);
    const std::size_t n = 2 + rng.uniform_upto(20);
    const std::size_t m = std::min<std::size_t>(n * (n - 1), 1 + rng.uniform_upto(3 * n));
    const Graph g = testing::random_graph(n, m, 9, seed);
    const ExactDistances exact = dijkstra(g, 0);
    const Granularity gran{static_cast<std::int64_t>(1 + rng.uniform_upto(6)), static_cast<std::int64_t>(1 + rng.uniform_upto(3))};
    EstimateTable t(n, 0, kBigCap, gran);
    for (Vertex v = 1; v < n; ++v) {
      if (exact.d[v] != kUnreachable) t.lower(v, exact.d[v] + static_cast<Dist>(rng.uniform_upto(12)), std::nullopt);
    }
    std::vector<Vertex> input;
    for (Vertex v = 0; v < n; ++v) {
      if (rng.uniform_upto(1) == 0) input.push_back(v);
    }
    const TouchedSet touched = partial_dijkstra(t, g, input);
    std::vector<char> fixed(n, 0);
    for (Vertex v : input) fixed[v] = 1;
    for (Vertex v : touched) fixed[v] = 1;
    for (Vertex u = 0; u < n; ++u) {
      if (!fixed[u] || t.at_cap(u)) continue;
      for (const OutEdge& e : g.out_edges(u)) {
        if (!fixed[e.head] || t.estimate(u) + e.weight >= kBigCap) continue;
        EXPECT_LE(t.estimate(e.head), t.estimate(u) + e.weight) << "seed " << seed;
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!t.at_cap(v)) {
        EXPECT_GE(t.estimate(v), exact.d[v]);
      }
    }
  }
}

TEST(Slack, SegmentWitness) {
  // Unit path v0..v4 with estimates (2, 5, 7, 6, 9): v0 witnesses
  // 9 - 2 - 4 = 3, and against the fixed height 8 gives 2.
  Graph g(6, 1);
  for (Vertex v = 1; v < 5; ++v) g.insert_edge(v, v + 1, 1);
  EstimateTable t(6, 0, kBigCap, {1, 1});
  const Dist est[] = {2, 5, 7, 6, 9};
  for (Vertex i = 0; i < 5; ++i) t.lower(i + 1, est[i], std::nullopt);
  const std::vector<Vertex> path{1, 2, 3, 4, 5};
  EXPECT_EQ(slack(t, g, path), 3);
  EXPECT_EQ(slack(t, g, path, Dist{8}), 2);
}

TEST(Slack, NonPathIsRejected) {
  Graph g(3, 1);
  g.insert_edge(0, 1, 1);
  EstimateTable t(3, 0, kBigCap, {1, 1});
  const std::vector<Vertex> path{0, 2};
  try {
    slack(t, g, path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAPath);
  }
}

TEST(Slack, ExactEstimatesHaveNoPositiveSlack) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_graph(10, 30, 5, seed);
    EstimateTable t(10, 0, kBigCap, {1, 1});
    restore_exact(t, g);
    for (Vertex v = 0; v < 10; ++v) {
      if (t.at_cap(v)) continue;
      std::vector<Vertex> path{v};
      while (path.back() != 0) path.push_back(*t.parent(path.back()));
      std::reverse(path.begin(), path.end());
      EXPECT_LE(slack(t, g, path), 0);
    }
  }
}

TEST(LazyInsert, InputWindowFollowsLastTouched) {
  // Vertex touched at step 3 is in V_input at steps 3 and 4, not at 5.
  EstimateTable t(4, 0, kBigCap, {1, 1});
  t.touch(2, 3);
  EXPECT_EQ(t.touched_between(2, 3), (std::vector<Vertex>{2}));
  EXPECT_EQ(t.touched_between(0, 4), (std::vector<Vertex>{2}));
  EXPECT_TRUE(t.touched_between(4, 5).empty());
  t.touch(2, 5);
  EXPECT_TRUE(t.touched_between(0, 4).empty());
  t.reset_touches();
  EXPECT_EQ(t.last_touched(2), 0);
}

}  // namespace
}  // namespace incsssp
