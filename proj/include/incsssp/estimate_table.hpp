#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "incsssp/graph.hpp"
#include "incsssp/types.hpp"

namespace incsssp {

/// The per-range error quantum (epsilon times delta) as an exact reduced
/// fraction num/den.
struct Granularity {
  std::int64_t num = 1;
  std::int64_t den = 1;

  static Granularity of(const Rational& r) {
    if (r <= 0) throw Error(ErrorKind::kInvalidParams, "granularity must be positive");
    return {r.numerator(), r.denominator()};
  }
  Rational value() const { return Rational(num, den); }

  friend bool operator==(const Granularity&, const Granularity&) = default;
};

inline constexpr std::int64_t kCapBucket = std::numeric_limits<std::int64_t>::max();

/// ceil(d / gran) in exact integer arithmetic; the cap sentinel maps to the
/// maximal bucket.
inline std::int64_t bucket(Dist d, const Granularity& gran) {
  if (d == kUnreachable) return kCapBucket;
  return ceil_div(static_cast<__int128>(d) * gran.den, gran.num);
}

/// Which relaxation test a lazy table applies.
///  kBucket:   ceil(d(v)/g) > ceil((d(u)+w)/g)
///  kAdditive: d(v) >= d(u) + w + g   (the plain profit test of earlier lazy trees)
enum class RelaxRule { kBucket, kAdditive };

/// (j, k) with b = k * 2^j and j maximal.
struct BatchIndex {
  int j = 0;
  std::int64_t k = 0;
  friend bool operator==(const BatchIndex&, const BatchIndex&) = default;
};

inline BatchIndex batch_index(std::int64_t b) {
  if (b < 1) throw Error(ErrorKind::kInvalidParams, "batch index needs b >= 1");
  const int j = __builtin_ctzll(static_cast<unsigned long long>(b));
  return {j, b >> j};
}

/// Distance estimates, parent pointers and last_touched stamps of one lazy
/// ES-tree, capped at `cap` (estimates >= cap are stored as kUnreachable).
///
/// Estimates only ever decrease. Every decrease is reported synchronously to
/// the listener as (vertex, old, new).
class EstimateTable {
 public:
  using DecreaseListener = std::function<void(Vertex, Dist, Dist)>;

  EstimateTable(std::size_t n, Vertex source, Dist cap, Granularity gran,
                RelaxRule rule = RelaxRule::kBucket)
      : estimate_(n, kUnreachable),
        parent_(n, kNoParent),
        last_touched_(n, 0),
        entries_(n, 0),
        mark_(n, 0),
        source_(source),
        cap_(cap),
        gran_(gran),
        rule_(rule) {
    if (source >= n) throw Error(ErrorKind::kVertexOutOfRange, "source outside vertex set");
    if (cap < 1) throw Error(ErrorKind::kInvalidParams, "cap must be >= 1");
    estimate_[source] = 0;
  }

  std::size_t size() const noexcept { return estimate_.size(); }
  Vertex source() const noexcept { return source_; }
  Dist cap() const noexcept { return cap_; }
  const Granularity& gran() const noexcept { return gran_; }
  RelaxRule rule() const noexcept { return rule_; }

  Dist estimate(Vertex v) const { return estimate_[v]; }
  bool at_cap(Vertex v) const { return estimate_[v] == kUnreachable; }
  std::optional<Vertex> parent(Vertex v) const {
    if (parent_[v] == kNoParent) return std::nullopt;
    return parent_[v];
  }

  void set_listener(DecreaseListener listener) { listener_ = std::move(listener); }

  /// The relaxation test for moving an estimate from `current` to `candidate`.
  bool profits(Dist current, Dist candidate) const {
    if (candidate >= cap_) return false;
    if (current == kUnreachable) return true;
    if (rule_ == RelaxRule::kBucket) return bucket(current, gran_) > bucket(candidate, gran_);
    return static_cast<__int128>(current - candidate) * gran_.den >= gran_.num;
  }

  /// Lowers v to `value` with the given parent if that is a strict decrease
  /// below the cap. Returns whether anything changed.
  bool lower(Vertex v, Dist value, std::optional<Vertex> parent) {
    if (value >= cap_ || value >= estimate_[v]) return false;
    const Dist old = estimate_[v];
    estimate_[v] = value;
    parent_[v] = parent ? *parent : kNoParent;
    if (listener_) listener_(v, old, value);
    return true;
  }

  /// The edge relaxation test; on success v takes d(u) + w with parent u.
  bool try_relax(Vertex u, Vertex v, Weight w) {
    if (estimate_[u] == kUnreachable) return false;
    const Dist candidate = estimate_[u] + w;
    if (!profits(estimate_[v], candidate)) return false;
    return lower(v, candidate, u);
  }

  // --- last_touched bookkeeping for synchronized propagation ---

  std::int64_t last_touched(Vertex v) const { return last_touched_[v]; }

  void touch(Vertex v, std::int64_t step) {
    last_touched_[v] = step;
    entries_[v] = 0;
    if (touch_log_.size() <= static_cast<std::size_t>(step)) touch_log_.resize(step + 1);
    touch_log_[step].push_back(v);
  }

  /// Vertices whose last_touched lies in (lo, hi].
  std::vector<Vertex> touched_between(std::int64_t lo, std::int64_t hi) const {
    std::vector<Vertex> out;
    const std::int64_t top = std::min<std::int64_t>(hi, static_cast<std::int64_t>(touch_log_.size()) - 1);
    for (std::int64_t t = std::max<std::int64_t>(lo + 1, 1); t <= top; ++t) {
      for (Vertex v : touch_log_[t]) {
        if (last_touched_[v] == t) out.push_back(v);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void reset_touches() {
    for (const auto& step : touch_log_) {
      for (Vertex v : step) {
        last_touched_[v] = 0;
        entries_[v] = 0;
      }
    }
    touch_log_.clear();
  }

  /// Counts one V_input membership of v since its last touch.
  void count_entry(Vertex v) {
    ++entries_[v];
    max_entries_ = std::max(max_entries_, entries_[v]);
  }
  /// Largest number of V_input sets a single touch caused a vertex to enter.
  std::int64_t max_entries_per_touch() const noexcept { return max_entries_; }

  // --- work counters ---
  std::int64_t edge_scans() const noexcept { return edge_scans_; }
  void add_edge_scans(std::int64_t k) noexcept { edge_scans_ += k; }

  /// Fault injection for verifier tests; bypasses monotonicity.
  void debug_overwrite(Vertex v, Dist value) { estimate_[v] = value; }

  /// Generation-stamped scratch marks used by partial_dijkstra.
  std::vector<std::uint64_t>& scratch_marks() { return mark_; }
  std::uint64_t next_generation() { return ++generation_; }

 private:
  static constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

  std::vector<Dist> estimate_;
  std::vector<Vertex> parent_;
  std::vector<std::int64_t> last_touched_;
  std::vector<std::vector<Vertex>> touch_log_;
  std::vector<std::int64_t> entries_;
  std::int64_t max_entries_ = 0;
  std::vector<std::uint64_t> mark_;
  std::uint64_t generation_ = 0;
  std::int64_t edge_scans_ = 0;
  Vertex source_;
  Dist cap_;
  Granularity gran_;
  RelaxRule rule_;
  DecreaseListener listener_;
};

}  // namespace incsssp
