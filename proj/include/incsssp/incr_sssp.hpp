#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "incsssp/det_range.hpp"
#include "incsssp/prng.hpp"
#include "incsssp/rand_range.hpp"
#include "incsssp/short_tree.hpp"

namespace incsssp {

enum class Mode {
  kDeterministic,   ///< synchronized propagation, rebuild every B insertions
  kRandomized,      ///< twin tables with random global fixing phases
  kBaselineNoSync,  ///< propagate only from the inserted edge's head (additive test)
};

inline const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::kDeterministic: return "det";
    case Mode::kRandomized: return "rand";
    case Mode::kBaselineNoSync: return "nosync";
  }
  return "?";
}

struct Config {
  std::size_t n = 1;
  std::size_t m_budget = 1;  ///< total edges ever present, initial ones included
  Weight max_weight = 1;
  Vertex source = 0;
  Rational eps{1, 4};
  Mode mode = Mode::kDeterministic;
  std::uint64_t seed = 0;
  /// Divisor c_B in B = floor(sqrt(m) / c_B); defaults to 6 * ceil(lg n).
  std::optional<std::int64_t> phase_divisor;
  double fixing_iteration_multiplier = 1.0;
  /// Randomized mode: use eps as the internal epsilon instead of scaling it
  /// down by 100 * ceil(lg n).
  bool raw_epsilon = false;
};

/// Everything the frontend derives from a Config.
struct DerivedParams {
  int lg_n = 1;                ///< max(1, ceil(lg n))
  std::int64_t root = 1;       ///< ceil(sqrt m) (det) or ceil(cbrt m) (rand)
  std::int64_t phase_length = 1;
  Rational internal_eps{1};
  Rational guarantee_eps{1};   ///< d <= query <= (1 + guarantee_eps) d
  Dist range_floor = 1;
  Dist short_cap = 1;
  std::vector<Dist> taus;
};

inline DerivedParams derive_params(const Config& cfg) {
  if (cfg.n < 1) throw Error(ErrorKind::kInvalidConfig, "n must be >= 1");
  if (cfg.m_budget < 1) throw Error(ErrorKind::kInvalidConfig, "m_budget must be >= 1");
  if (cfg.max_weight < 1) throw Error(ErrorKind::kInvalidConfig, "W must be >= 1");
  if (cfg.source >= cfg.n) throw Error(ErrorKind::kInvalidConfig, "source outside vertex set");
  if (cfg.eps <= 0 || cfg.eps >= 1) throw Error(ErrorKind::kInvalidConfig, "eps must lie in (0, 1)");
  if (cfg.phase_divisor && *cfg.phase_divisor < 1) throw Error(ErrorKind::kInvalidConfig, "c_B must be >= 1");
  if (!(cfg.fixing_iteration_multiplier > 0)) throw Error(ErrorKind::kInvalidConfig, "iteration multiplier must be > 0");

  DerivedParams p;
  const auto m = static_cast<std::int64_t>(cfg.m_budget);
  p.lg_n = std::max(1, ceil_lg(cfg.n));

  if (cfg.mode == Mode::kRandomized) {
    p.root = icbrt_ceil(m);
    p.phase_length = std::max<std::int64_t>(1, icbrt_floor(m));
    p.internal_eps = cfg.raw_epsilon ? cfg.eps : cfg.eps / Rational(100 * p.lg_n);
    p.guarantee_eps = p.internal_eps * Rational(100 * p.lg_n);
    p.range_floor = 1;
    while (p.range_floor * p.range_floor * p.range_floor < m) p.range_floor *= 2;
  } else {
    p.root = isqrt_ceil(m);
    const std::int64_t divisor = cfg.phase_divisor.value_or(6 * p.lg_n);
    p.phase_length = std::max<std::int64_t>(1, isqrt_floor(m) / divisor);
    // Keep 2 B g lg B + B g <= eps * tau for the configured B.
    const std::int64_t spread = p.phase_length * (2 * ceil_lg(p.phase_length) + 1);
    p.internal_eps = spread <= p.root ? cfg.eps : cfg.eps * Rational(p.root, spread);
    p.guarantee_eps = cfg.eps;
    p.range_floor = 1;
    while (p.range_floor * p.range_floor < m) p.range_floor *= 2;
  }
  p.short_cap = 2 * p.root;
  const Dist top = static_cast<Dist>(cfg.n) * cfg.max_weight;
  for (Dist tau = p.range_floor; tau <= top; tau *= 2) p.taus.push_back(tau);
  return p;
}

inline DetParams det_params_for(const Config& cfg, const DerivedParams& p, Dist tau) {
  DetParams d;
  d.tau = tau;
  d.gran = Granularity::of(p.internal_eps * Rational(tau, p.root));
  d.phase_length = p.phase_length;
  d.cap = ceil((Rational(1) + cfg.eps) * Rational(2 * tau));
  if (cfg.mode == Mode::kBaselineNoSync) {
    d.propagation = Propagation::kHeadOnly;
    d.rule = RelaxRule::kAdditive;
  }
  return d;
}

inline RandParams rand_params_for(const Config& cfg, const DerivedParams& p, Dist tau) {
  RandParams r;
  const Rational eps = p.internal_eps;
  const Rational lg(p.lg_n);
  r.tau = tau;
  r.delta = Rational(tau, p.root);
  r.gran = Granularity::of(eps * r.delta);
  r.phase_length = p.phase_length;
  r.cap = ceil((Rational(2) + Rational(200) * lg * eps) * Rational(tau) + Rational(1));
  r.potential_threshold = eps * Rational(p.root) * Rational(tau) / Rational(4);
  r.max_sample_index = std::max<std::int64_t>(
      0, ceil(Rational(2 * p.root) + Rational(200) * eps * Rational(p.root) * lg - Rational(8)));
  const long double iters = static_cast<long double>(cfg.fixing_iteration_multiplier) * 2000.0L * p.lg_n *
                            eps.denominator() / eps.numerator();
  r.iterations = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(iters - 1e-9L)));
  r.seed = Prng(cfg.seed).split(static_cast<std::uint64_t>(tau)).seed();
  return r;
}

/// Incremental approximate single-source shortest paths.
///
/// Holds an exact short-distance tree plus one lazy structure per power-of-two
/// distance range, and a per-vertex minimum over all of them so that queries
/// never scan the structures.
class IncrSSSP {
 public:
  struct MinEntry {
    Dist value = kUnreachable;
    StructureId owner = kNoStructure;
  };

  struct Stats {
    std::int64_t relaxations = 0;   ///< edge scans over every structure
    std::int64_t touched = 0;       ///< total |V_touched| over lazy structures
    std::int64_t rebuilds = 0;
    std::int64_t fixing_phases = 0;
  };

  explicit IncrSSSP(const Config& cfg)
      : cfg_(cfg), params_(derive_params(cfg)), graph_(cfg.n, cfg.max_weight), min_(std::make_unique<std::vector<MinEntry>>()) {
    graph_.set_budget(cfg.m_budget);
    build_structures();
  }

  const Config& config() const noexcept { return cfg_; }
  const DerivedParams& params() const noexcept { return params_; }
  const Graph& graph() const noexcept { return graph_; }
  Rational guarantee_eps() const { return params_.guarantee_eps; }

  /// Loads the initial graph; only valid once and before any insertion.
  void preprocess(std::span<const Edge> initial_edges) {
    if (preprocessed_ || !graph_.insertion_log().empty()) {
      throw Error(ErrorKind::kAlreadyPreprocessed, "preprocess must run once, before any insertion");
    }
    if (initial_edges.size() > cfg_.m_budget) {
      throw Error(ErrorKind::kBudgetExceeded, std::to_string(initial_edges.size()) + " initial edges exceed budget " +
                                                  std::to_string(cfg_.m_budget));
    }
    Graph staged(cfg_.n, cfg_.max_weight);
    for (const Edge& e : initial_edges) staged.add_initial_edge(e.tail, e.head, e.weight);

    for (const Edge& e : initial_edges) graph_.add_initial_edge(e.tail, e.head, e.weight);
    preprocessed_ = true;
    build_structures();
  }

  /// Inserts (u, v, w). Fails without touching any structure on invalid input.
  void insert(Vertex u, Vertex v, Weight w) {
    graph_.insert_edge(u, v, w);
    short_->insert(graph_, u, v, w);
    for (auto& r : det_) {
      if (r->phase_full()) r->rebuild(graph_);
      r->insert(graph_, u, v, w);
    }
    for (auto& r : rand_) r->insert(graph_, u, v, w);
  }

  Dist query(Vertex v) const {
    graph_.check_vertex(v);
    return (*min_)[v].value;
  }

  StructureId owner(Vertex v) const {
    graph_.check_vertex(v);
    return (*min_)[v].owner;
  }

  /// Source-to-v path along the parent pointers of the structure holding v's
  /// minimum estimate. Its weight is at most query(v).
  std::vector<Vertex> report_path(Vertex v) const {
    graph_.check_vertex(v);
    const MinEntry& entry = (*min_)[v];
    if (entry.value == kUnreachable) throw Error(ErrorKind::kUnreachable, "vertex " + std::to_string(v) + " unreachable");
    std::vector<Vertex> path{v};
    Vertex x = v;
    while (x != cfg_.source) {
      const std::optional<Vertex> p = structure_parent(entry.owner, x);
      if (!p || path.size() > cfg_.n) {
        throw Error(ErrorKind::kNotAPath, "broken parent chain at vertex " + std::to_string(x));
      }
      x = *p;
      path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  // --- read-only access for the oracle and diagnostics ---

  std::size_t num_structures() const noexcept { return 1 + det_.size() + rand_.size(); }
  std::size_t num_ranges() const noexcept { return det_.size() + rand_.size(); }
  const ShortTree& short_tree() const { return *short_; }
  const std::vector<std::unique_ptr<DetRange>>& det_ranges() const noexcept { return det_; }
  const std::vector<std::unique_ptr<RandRange>>& rand_ranges() const noexcept { return rand_; }

  /// Visible estimate of v in structure `id` (kUnreachable at its cap).
  Dist structure_estimate(StructureId id, Vertex v) const {
    if (id == 0) return short_->estimate(v);
    const std::size_t i = id - 1;
    return i < det_.size() ? det_[i]->visible_estimate(v) : rand_[i - det_.size()]->visible_estimate(v);
  }

  Stats stats() const {
    Stats s;
    s.relaxations = short_->relaxations();
    for (const auto& r : det_) {
      s.relaxations += r->table().edge_scans();
      s.touched += r->touched_total();
      s.rebuilds += r->rebuilds();
    }
    for (const auto& r : rand_) {
      s.relaxations += r->edge_scans();
      s.touched += r->touched_total();
      s.fixing_phases += r->fixing_phases();
    }
    return s;
  }

  /// Fault injection: overwrites the answer for v, breaking coherence.
  void debug_corrupt_answer(Vertex v, Dist value) {
    graph_.check_vertex(v);
    (*min_)[v].value = value;
  }

 private:
  std::optional<Vertex> structure_parent(StructureId id, Vertex v) const {
    if (id == 0) return short_->parent(v);
    const std::size_t i = id - 1;
    return i < det_.size() ? det_[i]->table().parent(v) : rand_[i - det_.size()]->visible().parent(v);
  }

  EstimateTable::DecreaseListener listener_for(StructureId id) {
    std::vector<MinEntry>* table = min_.get();
    return [table, id](Vertex v, Dist, Dist now) {
      MinEntry& e = (*table)[v];
      if (now < e.value) e = {now, id};
    };
  }

  void build_structures() {
    min_->assign(cfg_.n, MinEntry{});
    det_.clear();
    rand_.clear();
    short_ = std::make_unique<ShortTree>(graph_, cfg_.source, params_.short_cap);
    (*min_)[cfg_.source] = {0, 0};
    short_->set_listener(listener_for(0));
    seed_min_from(0);

    StructureId id = 1;
    for (Dist tau : params_.taus) {
      if (cfg_.mode == Mode::kRandomized) {
        auto r = std::make_unique<RandRange>(graph_, cfg_.source, rand_params_for(cfg_, params_, tau));
        r->set_listener(listener_for(id));
        rand_.push_back(std::move(r));
      } else {
        auto r = std::make_unique<DetRange>(graph_, cfg_.source, det_params_for(cfg_, params_, tau));
        r->table().set_listener(listener_for(id));
        det_.push_back(std::move(r));
      }
      seed_min_from(id);
      ++id;
    }
  }

  // Structures initialize before their listener is attached; fold their
  // starting estimates in once.
  void seed_min_from(StructureId id) {
    for (Vertex v = 0; v < cfg_.n; ++v) {
      const Dist d = structure_estimate(id, v);
      MinEntry& e = (*min_)[v];
      if (d < e.value) e = {d, id};
    }
  }

  Config cfg_;
  DerivedParams params_;
  Graph graph_;
  std::unique_ptr<std::vector<MinEntry>> min_;
  std::unique_ptr<ShortTree> short_;
  std::vector<std::unique_ptr<DetRange>> det_;
  std::vector<std::unique_ptr<RandRange>> rand_;
  bool preprocessed_ = false;
};

}  // namespace incsssp
