#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "incsssp/lazy.hpp"
#include "incsssp/prng.hpp"

namespace incsssp {

struct RandParams {
  Dist tau = 1;
  Granularity gran;                 ///< epsilon * delta
  Rational delta{1};                ///< sampling window unit
  std::int64_t phase_length = 1;    ///< B, insertions between fixing phases
  Dist cap = 2;                     ///< tau_max
  Rational potential_threshold{1};  ///< potential drop that forces a fixing phase
  std::int64_t max_sample_index = 0;
  std::int64_t iterations = 1;      ///< samples per fixing phase
  std::uint64_t seed = 0;
};

/// Counter trigger (b >= B) or potential trigger (drop >= threshold).
inline bool fixing_trigger(std::int64_t b, std::int64_t phase_length, std::int64_t potential_drop,
                           const Rational& threshold) {
  if (b >= phase_length) return true;
  return static_cast<__int128>(potential_drop) * threshold.denominator() >= threshold.numerator();
}

/// Randomized lazy structure for one distance range. A visible table answers
/// queries; a hidden twin receives the random fixing work and can only leak
/// into the visible table through synchronization.
///
/// Not copyable or movable: both tables report decreases into this object.
class RandRange {
 public:
  using DecreaseListener = EstimateTable::DecreaseListener;

  struct Audit {
    std::size_t visible_breaches = 0;
    std::size_t hidden_breaches = 0;
    std::size_t visible_below_truth = 0;
    std::size_t hidden_below_truth = 0;
    bool potential_consistent = true;
    bool trigger_pending = false;
    bool ok() const {
      return visible_breaches == 0 && hidden_breaches == 0 && visible_below_truth == 0 &&
             hidden_below_truth == 0 && potential_consistent && !trigger_pending;
    }
  };

  RandRange(const Graph& graph, Vertex source, const RandParams& params)
      : params_(params),
        ds_(graph.num_vertices(), source, params.cap, params.gran),
        hidden_(graph.num_vertices(), source, params.cap, params.gran),
        dirty_flag_(graph.num_vertices(), 0),
        window_mark_(graph.num_vertices(), 0),
        rng_(params.seed) {
    if (params.phase_length < 1) throw Error(ErrorKind::kInvalidParams, "phase length must be >= 1");
    if (params.iterations < 1) throw Error(ErrorKind::kInvalidParams, "iteration count must be >= 1");
    if (params.delta <= 0) throw Error(ErrorKind::kInvalidParams, "delta must be positive");
    potential_ = static_cast<std::int64_t>(graph.num_vertices() - 1) * params.cap;
    by_estimate_.emplace(0, source);
    hidden_hash_ = entry_hash(source, 0);

    ds_.set_listener([this](Vertex v, Dist old_value, Dist new_value) {
      mark_dirty(v);
      if (listener_) listener_(v, old_value, new_value);
    });
    hidden_.set_listener([this](Vertex v, Dist old_value, Dist new_value) {
      mark_dirty(v);
      const Dist old_eff = old_value == kUnreachable ? params_.cap : old_value;
      potential_ -= old_eff - new_value;
      if (old_value != kUnreachable) {
        by_estimate_.erase({old_value, v});
        hidden_hash_ -= entry_hash(v, old_value);
      }
      by_estimate_.emplace(new_value, v);
      hidden_hash_ += entry_hash(v, new_value);
    });

    // t = 0: both tables start exact; no sampling.
    restore_exact(ds_, graph);
    restore_exact(hidden_, graph);
    clear_dirty();
    snapshot_ = potential_;
  }

  RandRange(const RandRange&) = delete;
  RandRange& operator=(const RandRange&) = delete;

  const RandParams& params() const noexcept { return params_; }

  /// Receives decreases of the visible table only.
  void set_listener(DecreaseListener listener) { listener_ = std::move(listener); }

  /// Runs the lazy insertion on both tables with the shared counter, then
  /// fixing phases until no trigger holds. The edge must already be in `graph`.
  void insert(const Graph& graph, Vertex u, Vertex v, Weight w) {
    ++b_;
    touched_total_ += static_cast<std::int64_t>(lazy_insert(ds_, graph, u, v, w, b_, Propagation::kSynchronized).size());
    lazy_insert(hidden_, graph, u, v, w, b_, Propagation::kSynchronized);
    while (needs_fixing()) global_fixing_phase(graph);
  }

  bool needs_fixing() const {
    return fixing_trigger(b_, params_.phase_length, snapshot_ - potential_, params_.potential_threshold);
  }

  void global_fixing_phase(const Graph& graph) {
    ++fixing_phases_;
    sync_digest_ = splitmix64(sync_digest_ ^ hidden_hash_);
    synchronize();
    snapshot_ = potential_;  // Bef(t)

    std::vector<Vertex> chosen;
    const std::uint64_t gen = ++window_generation_;
    std::unordered_set<std::int64_t> seen;
    for (std::int64_t it = 0; it < params_.iterations; ++it) {
      const auto i = static_cast<std::int64_t>(rng_.uniform_upto(static_cast<std::uint64_t>(params_.max_sample_index)));
      sample_hash_ = splitmix64(sample_hash_ ^ static_cast<std::uint64_t>(i));
      ++samples_drawn_;
      if (!seen.insert(i).second) continue;
      const Dist lo = ceil(params_.delta * Rational(i));
      const Dist hi = ceil(params_.delta * Rational(i + 8));  // exclusive
      for (auto it2 = by_estimate_.lower_bound({lo, 0}); it2 != by_estimate_.end() && it2->first < hi; ++it2) {
        if (window_mark_[it2->second] == gen) continue;
        window_mark_[it2->second] = gen;
        chosen.push_back(it2->second);
      }
    }
    window_vertices_ += static_cast<std::int64_t>(chosen.size());
    partial_dijkstra(hidden_, graph, chosen);

    b_ = 0;
    ds_.reset_touches();
    hidden_.reset_touches();
  }

  /// The range's answer for v, from the visible table only.
  Dist visible_estimate(Vertex v) const { return ds_.estimate(v); }
  const EstimateTable& visible() const noexcept { return ds_; }

  std::int64_t phase_step() const noexcept { return b_; }
  std::int64_t fixing_phases() const noexcept { return fixing_phases_; }
  std::int64_t samples_drawn() const noexcept { return samples_drawn_; }
  std::int64_t window_vertices() const noexcept { return window_vertices_; }
  std::int64_t touched_total() const noexcept { return touched_total_; }
  std::int64_t edge_scans() const noexcept { return ds_.edge_scans() + hidden_.edge_scans(); }
  /// Running hash over the sampled window indices.
  std::uint64_t sample_hash() const noexcept { return sample_hash_; }
  /// Running hash over the hidden table's contents at the start of every
  /// synchronization; equal digests mean equal synchronization inputs.
  std::uint64_t sync_digest() const noexcept { return sync_digest_; }

  /// Invariant audit over both tables. `truth` holds exact distances.
  Audit audit(const Graph& graph, std::span<const Dist> truth) const {
    Audit a;
    a.visible_breaches = edge_bound_breaches(ds_, graph).size();
    a.hidden_breaches = edge_bound_breaches(hidden_, graph).size();
    std::int64_t sum = 0;
    for (Vertex v = 0; v < hidden_.size(); ++v) {
      sum += hidden_.at_cap(v) ? params_.cap : hidden_.estimate(v);
      if (!ds_.at_cap(v) && ds_.estimate(v) < truth[v]) ++a.visible_below_truth;
      if (!hidden_.at_cap(v) && hidden_.estimate(v) < truth[v]) ++a.hidden_below_truth;
    }
    a.potential_consistent = sum == potential_;
    a.trigger_pending = needs_fixing();
    return a;
  }


 private:
  friend struct RandRangeTestPeer;

  static std::uint64_t entry_hash(Vertex v, Dist d) {
    return splitmix64((static_cast<std::uint64_t>(v) << 40) ^ static_cast<std::uint64_t>(d));
  }

  void mark_dirty(Vertex v) {
    if (syncing_ || dirty_flag_[v]) return;
    dirty_flag_[v] = 1;
    dirty_.push_back(v);
  }

  void clear_dirty() {
    for (Vertex v : dirty_) dirty_flag_[v] = 0;
    dirty_.clear();
  }

  // Both tables take the pointwise minimum; only vertices changed since the
  // last synchronization can differ.
  void synchronize() {
    syncing_ = true;
    for (Vertex v : dirty_) {
      const Dist a = ds_.estimate(v);
      const Dist h = hidden_.estimate(v);
      if (a < h) {
        hidden_.lower(v, a, ds_.parent(v));
      } else if (h < a) {
        ds_.lower(v, h, hidden_.parent(v));
      }
    }
    syncing_ = false;
    clear_dirty();
  }

  RandParams params_;
  EstimateTable ds_;
  EstimateTable hidden_;
  DecreaseListener listener_;
  std::vector<char> dirty_flag_;
  std::vector<Vertex> dirty_;
  bool syncing_ = false;
  std::set<std::pair<Dist, Vertex>> by_estimate_;  // hidden table, finite entries
  std::vector<std::uint64_t> window_mark_;
  std::uint64_t window_generation_ = 0;
  Prng rng_;
  std::int64_t b_ = 0;
  std::int64_t potential_ = 0;
  std::int64_t snapshot_ = 0;
  std::int64_t fixing_phases_ = 0;
  std::int64_t samples_drawn_ = 0;
  std::int64_t window_vertices_ = 0;
  std::int64_t touched_total_ = 0;
  std::uint64_t hidden_hash_ = 0;
  std::uint64_t sync_digest_ = 0;
  std::uint64_t sample_hash_ = 0;
};

}  // namespace incsssp
