#include <gtest/gtest.h>

#include "incsssp/incsssp.hpp"
#include "test_support.hpp"

namespace incsssp {
namespace {

TEST(Dijkstra, MatchesBruteForceOnSmallGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Prng rng(seed);
    const std::size_t n = 2 + rng.uniform_upto(6);
    const std::size_t m = rng.uniform_upto(n * (n - 1));
    const Graph g = testing::random_graph(n, m, 9, seed);
    const ExactDistances exact = dijkstra(g, 0);
    EXPECT_EQ(exact.d, testing::brute_force_distances(g, 0)) << "seed " << seed;
    EXPECT_TRUE(is_bellman_optimal(g, 0, exact));
  }
}

TEST(Dijkstra, TreeParentsAreTight) {
  const Graph g = testing::random_graph(50, 400, 20, 9);
  const ExactDistances exact = dijkstra(g, 0);
  for (Vertex v = 1; v < 50; ++v) {
    if (exact.d[v] == kUnreachable) continue;
    const Vertex p = *exact.tree_parent[v];
    EXPECT_EQ(exact.d[v], exact.d[p] + g.edge_weight(p, v));
  }
}

TEST(Dijkstra, QuadraticConstructionSinkDistances) {
  const Figure1Instance inst = figure1_stream({8, Rational(1)});
  Graph g(inst.stream.n, inst.stream.max_weight);
  for (const Edge& e : inst.stream.initial_edges) g.add_initial_edge(e.tail, e.head, e.weight);
  EXPECT_EQ(dijkstra(g, 0).d[inst.sink], inst.initial_sink_distance);
  for (const Event& e : inst.stream.events) {
    if (e.kind == Event::Kind::kInsert) g.insert_edge(e.u, e.v, e.w);
  }
  EXPECT_EQ(dijkstra(g, 0).d[inst.sink], inst.final_sink_distance);
  EXPECT_EQ(testing::brute_force_distances(g, 0)[inst.sink], inst.final_sink_distance);
}

Config cfg_for(std::size_t n, std::size_t m) {
  Config c;
  c.n = n;
  c.m_budget = m;
  c.max_weight = 5;
  c.phase_divisor = 1;
  return c;
}

TEST(Verify, CleanRunReportsNothing) {
  IncrSSSP algo(cfg_for(20, 100));
  for (const Event& e : random_stream(20, 100, 5, 1).events) algo.insert(e.u, e.v, e.w);
  const VerifyReport r = verify(algo, dijkstra(algo.graph(), 0), algo.guarantee_eps());
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(r.insertion_index, 100u);
}

TEST(Verify, DetectsAnswerBelowTruth) {
  IncrSSSP algo(cfg_for(6, 10));
  algo.insert(0, 1, 4);
  algo.debug_corrupt_answer(1, 3);
  const VerifyReport r = verify(algo, dijkstra(algo.graph(), 0), algo.guarantee_eps());
  ASSERT_EQ(r.lower_violations.size(), 1u);
  EXPECT_EQ(r.lower_violations[0].vertex, Vertex{1});
  EXPECT_FALSE(r.min_table_mismatches.empty());
}

TEST(Verify, DetectsAnswerAboveGuarantee) {
  IncrSSSP algo(cfg_for(6, 10));
  algo.insert(0, 1, 4);
  algo.debug_corrupt_answer(1, 6);  // 6/4 > 5/4
  const VerifyReport r = verify(algo, dijkstra(algo.graph(), 0), algo.guarantee_eps());
  ASSERT_EQ(r.upper_violations.size(), 1u);
  EXPECT_EQ(r.upper_violations[0].ratio, Rational(3, 2));
}

TEST(Verify, UpperBoundIsInclusive) {
  IncrSSSP algo(cfg_for(6, 10));
  algo.insert(0, 1, 4);
  algo.debug_corrupt_answer(1, 5);  // exactly 5/4
  const VerifyReport r = verify(algo, dijkstra(algo.graph(), 0), algo.guarantee_eps());
  EXPECT_TRUE(r.sandwich_holds());
}

TEST(Verify, DetectsMissingReachability) {
  IncrSSSP algo(cfg_for(6, 10));
  algo.insert(0, 1, 4);
  algo.debug_corrupt_answer(1, kUnreachable);
  const VerifyReport r = verify(algo, dijkstra(algo.graph(), 0), algo.guarantee_eps());
  EXPECT_EQ(r.upper_violations.size(), 1u);
}

TEST(CheckPath, RejectsBrokenPaths) {
  Graph g(4, 5);
  g.insert_edge(0, 1, 2);
  g.insert_edge(1, 2, 3);
  const std::vector<Vertex> good{0, 1, 2};
  const std::vector<Vertex> gap{0, 2};
  const std::vector<Vertex> wrong_end{0, 1};
  EXPECT_EQ(check_path(g, 0, 2, good).weight, 5);
  EXPECT_TRUE(check_path(g, 0, 2, good).valid);
  EXPECT_FALSE(check_path(g, 0, 2, gap).valid);
  EXPECT_FALSE(check_path(g, 0, 2, wrong_end).valid);
}

}  // namespace
}  // namespace incsssp
