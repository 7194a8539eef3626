#include <gtest/gtest.h>

#include <set>

#include "incsssp/incsssp.hpp"
#include "test_support.hpp"

namespace incsssp {
namespace {

TEST(RandomStream, DistinctEdgesWithinBounds) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{10, 90}, {10, 20}, {200, 1000}}) {
    const InsertionStream s = random_stream(n, m, 7, 3);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Event& e : s.events) {
      ASSERT_EQ(e.kind, Event::Kind::kInsert);
      ASSERT_NE(e.u, e.v);
      ASSERT_LT(e.u, n);
      ASSERT_LT(e.v, n);
      ASSERT_GE(e.w, 1);
      ASSERT_LE(e.w, 7);
      ASSERT_TRUE(seen.emplace(e.u, e.v).second);
    }
    EXPECT_EQ(seen.size(), m);
  }
}

TEST(RandomStream, SeedDeterminesStream) {
  EXPECT_EQ(random_stream(30, 100, 5, 1, 0.3), random_stream(30, 100, 5, 1, 0.3));
  EXPECT_NE(random_stream(30, 100, 5, 1), random_stream(30, 100, 5, 2));
}

TEST(RandomStream, TooDense) {
  try {
    random_stream(4, 13, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooDense);
  }
}

TEST(RandomStream, QueriesFollowInsertions) {
  const InsertionStream s = random_stream(30, 200, 5, 8, 0.5);
  EXPECT_EQ(s.insertion_count(), 200u);
  EXPECT_GT(s.events.size(), 250u);
  EXPECT_EQ(s.events.front().kind, Event::Kind::kInsert);
}

TEST(QuadraticConstruction, ShapeAndBudget) {
  const Figure1Instance inst = figure1_stream({8, Rational(1, 3)});
  const std::int64_t h = 4;
  EXPECT_EQ(inst.stream.n, static_cast<std::size_t>(1 + h + h * (h + 1)));
  EXPECT_EQ(inst.stream.insertion_count(), 7u);  // B - 1
  EXPECT_EQ(inst.scale, 6);                       // c = 7/6
  EXPECT_EQ(inst.scaled_gran, Rational(2));
  EXPECT_EQ(inst.stream.budget, inst.stream.initial_edges.size() + 7);
  for (const Edge& e : inst.stream.initial_edges) {
    EXPECT_GE(e.weight, 1);
    EXPECT_LE(e.weight, inst.stream.max_weight);
  }
  EXPECT_THROW(figure1_stream({5, Rational(1)}), Error);
}

TEST(QuadraticConstruction, ShortcutsNeverBeatTheFinalPath) {
  // Every f_i must exceed the path through the red edges so that the
  // final distance is carried by the segments.
  for (std::int64_t b : {4, 8, 16, 32}) {
    const Figure1Instance inst = figure1_stream({b, Rational(1)});
    Graph g(inst.stream.n, inst.stream.max_weight);
    for (const Edge& e : inst.stream.initial_edges) g.add_initial_edge(e.tail, e.head, e.weight);
    for (const Event& e : inst.stream.events) {
      if (e.kind == Event::Kind::kInsert) g.insert_edge(e.u, e.v, e.w);
    }
    EXPECT_EQ(dijkstra(g, 0).d[inst.sink], inst.final_sink_distance) << "B=" << b;
  }
}

TEST(AdaptiveRun, ScriptedMatchesDirectReplay) {
  const InsertionStream s = random_stream(20, 60, 4, 5, 0.5);
  Config cfg;
  cfg.n = 20;
  cfg.m_budget = 60;
  cfg.max_weight = 4;
  IncrSSSP a(cfg);
  const AdaptiveRunResult r = adaptive_run(scripted_adversary(s.events), a, 60);
  for (const VerifyReport& rep : r.reports) EXPECT_TRUE(rep.empty());

  RunOptions opt;
  const RunResult direct = run_stream(s, opt);
  std::vector<std::string> echoed;
  std::size_t k = 0;
  for (const Event& e : r.events) {
    if (e.kind != Event::Kind::kQuery) continue;
    const Dist d = r.answers[k++];
    echoed.push_back("q " + std::to_string(e.u) + " " + (d == kUnreachable ? "inf" : std::to_string(d)));
  }
  ASSERT_LE(echoed.size(), direct.answers.size());
  EXPECT_TRUE(std::equal(echoed.begin(), echoed.end(), direct.answers.begin()));
}

TEST(GreedyGap, OnlyValidInsertions) {
  Config cfg;
  cfg.n = 24;
  cfg.m_budget = 120;
  cfg.max_weight = 6;
  cfg.mode = Mode::kRandomized;
  cfg.raw_epsilon = true;
  cfg.fixing_iteration_multiplier = 0.01;
  IncrSSSP algo(cfg);
  GreedyGapAdversary adv(24, 6, 0, 1);
  const AdaptiveRunResult r = adaptive_run(std::ref(adv), algo, 120);
  EXPECT_EQ(r.reports.size(), 120u);
  for (const VerifyReport& rep : r.reports) EXPECT_TRUE(rep.sandwich_holds());
  EXPECT_EQ(algo.graph().num_edges(), 120u);
}

}  // namespace
}  // namespace incsssp
