#pragma once

#include <cmath>
#include <cstdint>

#include "incsssp/lazy.hpp"

namespace incsssp {

struct DetParams {
  Dist tau = 1;                 ///< range base; the range answers for [tau, 2 tau)
  Granularity gran;             ///< epsilon * delta
  std::int64_t phase_length = 1;  ///< B, insertions between rebuilds
  Dist cap = 2;                 ///< estimates >= cap read as unreachable
  Propagation propagation = Propagation::kSynchronized;
  RelaxRule rule = RelaxRule::kBucket;
};

/// Deterministic lazy structure for one distance range: synchronized
/// propagation inside a phase of B insertions, exact rebuild between phases.
class DetRange {
 public:
  DetRange(const Graph& graph, Vertex source, const DetParams& params)
      : params_(params), table_(graph.num_vertices(), source, params.cap, params.gran, params.rule) {
    if (params.phase_length < 1) throw Error(ErrorKind::kInvalidParams, "phase length must be >= 1");
    if (params.tau < 1) throw Error(ErrorKind::kInvalidParams, "tau must be >= 1");
    restore_exact(table_, graph);
  }

  const DetParams& params() const noexcept { return params_; }
  const EstimateTable& table() const noexcept { return table_; }
  EstimateTable& table() noexcept { return table_; }

  std::int64_t phase_step() const noexcept { return b_; }
  bool phase_full() const noexcept { return b_ >= params_.phase_length; }

  /// Runs one insertion of the phase. The edge must already be in `graph`.
  TouchedSet insert(const Graph& graph, Vertex u, Vertex v, Weight w) {
    if (phase_full()) throw Error(ErrorKind::kPhaseFull, "phase of " + std::to_string(b_) + " insertions is full");
    ++b_;
    TouchedSet touched = lazy_insert(table_, graph, u, v, w, b_, params_.propagation);
    touched_total_ += static_cast<std::int64_t>(touched.size());
    return touched;
  }

  /// Exact (capped) Dijkstra from the source; starts a new phase.
  void rebuild(const Graph& graph) {
    restore_exact(table_, graph);
    table_.reset_touches();
    b_ = 0;
    ++rebuilds_;
  }

  /// The range's answer for v: kUnreachable at the cap.
  Dist visible_estimate(Vertex v) const { return table_.estimate(v); }

  /// Additive error bound 2 B g lg B + B g on in-range vertices within a phase.
  long double phase_error_bound() const {
    const long double b = static_cast<long double>(params_.phase_length);
    const long double g = static_cast<long double>(params_.gran.num) / params_.gran.den;
    return 2.0L * b * g * std::log2(b) + b * g;
  }

  bool within_phase_bound(Dist additive_error) const {
    const long double bound = phase_error_bound();
    return static_cast<long double>(additive_error) <= bound * (1.0L + 1e-12L);
  }

  std::int64_t rebuilds() const noexcept { return rebuilds_; }
  std::int64_t touched_total() const noexcept { return touched_total_; }

 private:
  DetParams params_;
  EstimateTable table_;
  std::int64_t b_ = 0;
  std::int64_t rebuilds_ = 0;
  std::int64_t touched_total_ = 0;
};

}  // namespace incsssp
