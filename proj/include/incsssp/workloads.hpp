#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "incsssp/oracle.hpp"
#include "incsssp/prng.hpp"

namespace incsssp {

struct Event {
  enum class Kind { kInsert, kQuery, kPath };
  Kind kind = Kind::kInsert;
  Vertex u = 0;  ///< tail for inserts; the queried vertex otherwise
  Vertex v = 0;
  Weight w = 1;

  static Event insert(Vertex u, Vertex v, Weight w) { return {Kind::kInsert, u, v, w}; }
  static Event query(Vertex x) { return {Kind::kQuery, x, 0, 0}; }
  static Event path(Vertex x) { return {Kind::kPath, x, 0, 0}; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct InsertionStream {
  std::size_t n = 1;
  Weight max_weight = 1;
  std::size_t budget = 0;
  std::optional<Rational> eps;
  std::vector<Edge> initial_edges;
  std::vector<Event> events;

  std::size_t insertion_count() const {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(),
                                                  [](const Event& e) { return e.kind == Event::Kind::kInsert; }));
  }

  friend bool operator==(const InsertionStream&, const InsertionStream&) = default;
};

/// m distinct edges drawn uniformly without replacement (no self-loops),
/// weights uniform in [1, W]; after each insertion a query of a random vertex
/// follows with probability query_rate.
inline InsertionStream random_stream(std::size_t n, std::size_t m, Weight max_weight, std::uint64_t seed,
                                     double query_rate = 0.0) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1);
  if (n == 0 || m > pairs) throw Error(ErrorKind::kTooDense, std::to_string(m) + " edges exceed n(n-1)");
  if (max_weight < 1) throw Error(ErrorKind::kInvalidParams, "W must be >= 1");
  Prng rng(seed);
  InsertionStream s;
  s.n = n;
  s.max_weight = max_weight;
  s.budget = m;

  auto decode = [n](std::uint64_t code) {
    const auto u = static_cast<Vertex>(code / (n - 1));
    auto v = static_cast<Vertex>(code % (n - 1));
    if (v >= u) ++v;
    return std::pair{u, v};
  };

  std::vector<std::uint64_t> codes;
  if (2 * m >= pairs) {
    // Dense: partial Fisher-Yates over all pairs.
    codes.resize(pairs);
    for (std::uint64_t i = 0; i < pairs; ++i) codes[i] = i;
    for (std::uint64_t i = 0; i < m; ++i) {
      const std::uint64_t j = i + rng.uniform_upto(pairs - 1 - i);
      std::swap(codes[i], codes[j]);
    }
    codes.resize(m);
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (codes.size() < m) {
      const std::uint64_t c = rng.uniform_upto(pairs - 1);
      if (seen.insert(c).second) codes.push_back(c);
    }
  }

  const auto threshold = static_cast<std::uint64_t>(std::clamp(query_rate, 0.0, 1.0) * 18446744073709551615.0);
  for (std::uint64_t c : codes) {
    const auto [u, v] = decode(c);
    const auto w = static_cast<Weight>(1 + rng.uniform_upto(static_cast<std::uint64_t>(max_weight - 1)));
    s.events.push_back(Event::insert(u, v, w));
    if (query_rate > 0 && rng.next() < threshold) {
      s.events.push_back(Event::query(static_cast<Vertex>(rng.uniform_upto(n - 1))));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Quadratic-error construction for head-only propagation.
//
// Source s = 0. For h = B/2 there are h segments; segment i (1..h) is a path
// u(i,0) -> ... -> u(i,h) of h unit edges whose end u(i,h) hangs off s by the
// shortcut f_i. Helper vertices w_1..w_h start unreachable and carry edges
// e_{i,j}: w_j -> u(i,j-1). The first h red insertions (s, w_j) for j = h..1
// lower every segment back to front, one vertex per insertion; the last h-1
// connect u(i,h) -> u(i+1,0). The sink is x = u(h,h).
//
// In unscaled units, with c = 1 + g/2:
//   w(f_i)     = i c h + i + 1
//   w(e_{i,j}) = w(f_i) - (h - j + 1) c - 1
// All weights are multiplied by the denominator D of c so they are integers;
// unit edges become D and the error quantum becomes D g.
// ---------------------------------------------------------------------------

struct Fig1Params {
  std::int64_t phase_length = 4;  ///< B, even, >= 4
  Rational gran{1};               ///< the error quantum epsilon * delta, unscaled
};

struct Figure1Instance {
  InsertionStream stream;
  Vertex source = 0;
  Vertex sink = 0;
  std::int64_t scale = 1;          ///< D
  Rational scaled_gran{1};         ///< D * g, the quantum for the structure replaying this
  Dist initial_sink_distance = 0;  ///< D * w(f_h)
  Dist final_sink_distance = 0;    ///< D * (h^2 + h + 1)
  std::vector<Weight> f_weights;   ///< unscaled-formula weights times D, index i-1
};

inline Figure1Instance figure1_stream(const Fig1Params& p) {
  if (p.phase_length < 4 || p.phase_length % 2 != 0) throw Error(ErrorKind::kInvalidParams, "B must be even and >= 4");
  if (p.gran <= 0) throw Error(ErrorKind::kInvalidParams, "granularity must be positive");
  const std::int64_t h = p.phase_length / 2;
  const Rational c = Rational(1) + p.gran / Rational(2);
  const std::int64_t D = c.denominator();

  auto scaled = [D](const Rational& r) {
    const Rational x = r * Rational(D);
    if (x.denominator() != 1 || x.numerator() < 1) throw Error(ErrorKind::kInvalidParams, "non-integral weight");
    return static_cast<Weight>(x.numerator());
  };
  auto f_weight = [&](std::int64_t i) { return Rational(i) * c * Rational(h) + Rational(i + 1); };

  // Vertex numbering: 0 = s, 1..h = w_j, then segments.
  auto w_vertex = [](std::int64_t j) { return static_cast<Vertex>(j); };
  auto seg_vertex = [h](std::int64_t i, std::int64_t pos) { return static_cast<Vertex>(1 + h + (i - 1) * (h + 1) + pos); };
  const std::size_t n = static_cast<std::size_t>(1 + h + h * (h + 1));

  Figure1Instance inst;
  inst.scale = D;
  inst.scaled_gran = p.gran * Rational(D);
  inst.sink = seg_vertex(h, h);

  std::vector<Edge> initial;
  Weight max_w = D;
  for (std::int64_t i = 1; i <= h; ++i) {
    const Weight fw = scaled(f_weight(i));
    inst.f_weights.push_back(fw);
    initial.push_back({0, seg_vertex(i, h), fw});
    for (std::int64_t pos = 0; pos < h; ++pos) initial.push_back({seg_vertex(i, pos), seg_vertex(i, pos + 1), D});
    for (std::int64_t j = 1; j <= h; ++j) {
      const Weight ew = scaled(f_weight(i) - Rational(h - j + 1) * c - Rational(1));
      initial.push_back({w_vertex(j), seg_vertex(i, j - 1), ew});
      max_w = std::max(max_w, ew);
    }
    max_w = std::max(max_w, fw);
  }

  InsertionStream& s = inst.stream;
  s.n = n;
  s.max_weight = max_w;
  s.initial_edges = std::move(initial);
  for (std::int64_t j = h; j >= 1; --j) {
    s.events.push_back(Event::insert(0, w_vertex(j), D));
    s.events.push_back(Event::query(inst.sink));
  }
  for (std::int64_t i = 1; i < h; ++i) {
    s.events.push_back(Event::insert(seg_vertex(i, h), seg_vertex(i + 1, 0), D));
    s.events.push_back(Event::query(inst.sink));
  }
  s.budget = s.initial_edges.size() + s.insertion_count();
  inst.initial_sink_distance = inst.f_weights.back();
  inst.final_sink_distance = D * (h * h + h + 1);
  return inst;
}

// ---------------------------------------------------------------------------
// Adaptive adversaries
// ---------------------------------------------------------------------------

/// An adversary sees nothing but the answers to its own earlier queries and
/// path queries (a path query is answered with the reported path's weight).
using Adversary = std::function<Event(std::span<const Dist> answers)>;

struct AdaptiveRunResult {
  std::vector<VerifyReport> reports;  ///< one per insertion (if verifying)
  std::vector<Dist> answers;
  std::vector<Event> events;
};

inline AdaptiveRunResult adaptive_run(const Adversary& adversary, IncrSSSP& system, std::size_t budget,
                                      bool verify_each = true) {
  AdaptiveRunResult out;
  std::size_t inserted = 0;
  while (inserted < budget) {
    const Event ev = adversary(std::span<const Dist>(out.answers));
    out.events.push_back(ev);
    switch (ev.kind) {
      case Event::Kind::kInsert: {
        system.insert(ev.u, ev.v, ev.w);
        ++inserted;
        if (verify_each) {
          const ExactDistances truth = dijkstra(system.graph(), system.config().source);
          out.reports.push_back(verify(system, truth, system.guarantee_eps()));
        }
        break;
      }
      case Event::Kind::kQuery:
        out.answers.push_back(system.query(ev.u));
        break;
      case Event::Kind::kPath: {
        Dist weight = kUnreachable;
        if (system.query(ev.u) != kUnreachable) {
          const std::vector<Vertex> path = system.report_path(ev.u);
          weight = check_path(system.graph(), system.config().source, ev.u, path).weight;
        }
        out.answers.push_back(weight);
        break;
      }
    }
  }
  return out;
}

/// Replays a fixed script regardless of answers.
inline Adversary scripted_adversary(std::vector<Event> script) {
  auto pos = std::make_shared<std::size_t>(0);
  auto events = std::make_shared<std::vector<Event>>(std::move(script));
  return [pos, events](std::span<const Dist>) { return (*events)[(*pos)++ % events->size()]; };
}

/// Queries every vertex, then inserts an edge aimed at the vertex whose
/// answer exceeds the true distance (known to the adversary from its own
/// insertions) by the most, trying to widen the gap further. Only answers flow
/// back from the system.
class GreedyGapAdversary {
 public:
  GreedyGapAdversary(std::size_t n, Weight max_weight, Vertex source, std::uint64_t seed)
      : graph_(n, max_weight), source_(source), rng_(seed) {}

  Event operator()(std::span<const Dist> answers) {
    const std::size_t n = graph_.num_vertices();
    if (next_query_ < n) {
      return Event::query(static_cast<Vertex>(next_query_++));
    }
    // The last n answers are this round's sweep.
    const std::span<const Dist> sweep = answers.subspan(answers.size() - n);
    const ExactDistances truth = dijkstra(graph_, source_);

    Vertex target = 0;
    Dist best_gap = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (v == source_ || truth.d[v] == kUnreachable || sweep[v] == kUnreachable) continue;
      const Dist gap = sweep[v] - truth.d[v];
      if (gap > best_gap) {
        best_gap = gap;
        target = v;
      }
    }
    next_query_ = 0;

    Event ev = best_gap >= 0 ? edge_toward(target, truth) : random_edge();
    graph_.insert_edge(ev.u, ev.v, ev.w);
    return ev;
  }

 private:
  // A new in-edge for `target` from a reached vertex that almost, but not
  // quite, ties the current shortest path.
  Event edge_toward(Vertex target, const ExactDistances& truth) {
    const std::size_t n = graph_.num_vertices();
    for (int attempt = 0; attempt < 64; ++attempt) {
      const auto y = static_cast<Vertex>(rng_.uniform_upto(n - 1));
      if (y == target || truth.d[y] == kUnreachable || graph_.has_edge(y, target)) continue;
      const Dist slackless = truth.d[target] - truth.d[y];
      const Weight w = std::clamp<Weight>(slackless - 1, 1, graph_.max_weight());
      return Event::insert(y, target, w);
    }
    return random_edge();
  }

  Event random_edge() {
    const std::size_t n = graph_.num_vertices();
    for (;;) {
      const auto u = static_cast<Vertex>(rng_.uniform_upto(n - 1));
      const auto v = static_cast<Vertex>(rng_.uniform_upto(n - 1));
      if (u == v || graph_.has_edge(u, v)) continue;
      const auto w = static_cast<Weight>(1 + rng_.uniform_upto(static_cast<std::uint64_t>(graph_.max_weight() - 1)));
      return Event::insert(u, v, w);
    }
  }

  Graph graph_;
  Vertex source_;
  Prng rng_;
  std::size_t next_query_ = 0;
};

}  // namespace incsssp
