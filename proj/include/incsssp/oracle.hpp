#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "incsssp/incr_sssp.hpp"

namespace incsssp {

struct ExactDistances {
  std::vector<Dist> d;
  std::vector<std::optional<Vertex>> tree_parent;
};

/// Static Dijkstra from s; ties broken by vertex id.
inline ExactDistances dijkstra(const Graph& graph, Vertex s) {
  graph.check_vertex(s);
  BoundedDistances b = bounded_dijkstra(graph, s, kUnreachable);
  return {std::move(b.dist), std::move(b.parent)};
}

/// d(s) = 0 and d(v) <= d(u) + w on every edge.
inline bool is_bellman_optimal(const Graph& graph, Vertex s, const ExactDistances& exact) {
  if (exact.d[s] != 0) return false;
  for (Vertex u = 0; u < graph.num_vertices(); ++u) {
    if (exact.d[u] == kUnreachable) continue;
    for (const OutEdge& e : graph.out_edges(u)) {
      if (exact.d[e.head] > exact.d[u] + e.weight) return false;
    }
  }
  return true;
}

struct LowerViolation {
  Vertex vertex;
  Dist estimate;
  Dist truth;
};

struct UpperViolation {
  Vertex vertex;
  Dist estimate;
  Dist truth;
  Rational ratio;  ///< estimate / truth; 0 when the estimate is unreachable
};

struct InvariantBreach {
  StructureId structure;
  Edge edge;
  Rational amount;
};

struct VerifyReport {
  std::size_t insertion_index = 0;
  std::vector<LowerViolation> lower_violations;
  std::vector<UpperViolation> upper_violations;
  std::vector<InvariantBreach> invariant_breaches;
  /// Randomized ranges failing their twin-table audit.
  std::vector<StructureId> range_audit_failures;
  /// Vertices where the short tree is not exact below its cap.
  std::vector<Vertex> short_tree_mismatches;
  /// Vertices whose stored minimum differs from a scan over all structures.
  std::vector<Vertex> min_table_mismatches;
  Rational max_ratio{1};
  Dist max_additive_error = 0;

  bool sandwich_holds() const { return lower_violations.empty() && upper_violations.empty(); }
  bool empty() const {
    return sandwich_holds() && invariant_breaches.empty() && range_audit_failures.empty() &&
           short_tree_mismatches.empty() && min_table_mismatches.empty();
  }
};

/// Compares every answer of `algo` with `truth` (computed on the same graph):
/// truth <= query <= (1 + eps_eff) truth in exact arithmetic, plus structural
/// audits of every structure. Never mutates.
inline VerifyReport verify(const IncrSSSP& algo, const ExactDistances& truth, const Rational& eps_eff) {
  VerifyReport r;
  const Graph& g = algo.graph();
  r.insertion_index = g.insertion_log().size();
  const std::size_t n = g.num_vertices();
  const __int128 bound_num = eps_eff.denominator() + eps_eff.numerator();
  const __int128 bound_den = eps_eff.denominator();

  for (Vertex v = 0; v < n; ++v) {
    const Dist q = algo.query(v);
    const Dist t = truth.d[v];
    if (q < t) {
      r.lower_violations.push_back({v, q, t});
      continue;
    }
    if (t == kUnreachable) continue;
    if (q == kUnreachable) {
      r.upper_violations.push_back({v, q, t, Rational(0)});
      continue;
    }
    r.max_additive_error = std::max(r.max_additive_error, q - t);
    if (t > 0) {
      const Rational ratio(q, t);
      r.max_ratio = std::max(r.max_ratio, ratio);
      if (static_cast<__int128>(q) * bound_den > bound_num * t) r.upper_violations.push_back({v, q, t, ratio});
    }
  }

  // Short tree: exact below its cap.
  const ShortTree& st = algo.short_tree();
  for (Vertex v = 0; v < n; ++v) {
    const Dist expect = truth.d[v] < st.cap() ? truth.d[v] : kUnreachable;
    if (st.estimate(v) != expect) r.short_tree_mismatches.push_back(v);
  }

  StructureId id = 1;
  for (const auto& range : algo.det_ranges()) {
    for (const EdgeBreach& b : edge_bound_breaches(range->table(), g)) r.invariant_breaches.push_back({id, b.edge, b.amount});
    ++id;
  }
  for (const auto& range : algo.rand_ranges()) {
    if (!range->audit(g, truth.d).ok()) r.range_audit_failures.push_back(id);
    for (const EdgeBreach& b : edge_bound_breaches(range->visible(), g)) r.invariant_breaches.push_back({id, b.edge, b.amount});
    ++id;
  }

  for (Vertex v = 0; v < n; ++v) {
    Dist best = kUnreachable;
    for (StructureId s = 0; s < algo.num_structures(); ++s) best = std::min(best, algo.structure_estimate(s, v));
    if (best != algo.query(v)) r.min_table_mismatches.push_back(v);
  }
  return r;
}

/// Largest d(x) - truth(x) over vertices with truth in [tau, 2 tau) for one
/// deterministic range (kUnreachable if such a vertex sits at the cap).
inline Dist phase_error_audit(const DetRange& range, const ExactDistances& truth) {
  const Dist tau = range.params().tau;
  Dist worst = 0;
  for (Vertex v = 0; v < truth.d.size(); ++v) {
    const Dist t = truth.d[v];
    if (t < tau || t >= 2 * tau) continue;
    const Dist e = range.visible_estimate(v);
    if (e == kUnreachable) return kUnreachable;
    worst = std::max(worst, e - t);
  }
  return worst;
}

struct PathCheck {
  bool valid = false;
  Dist weight = 0;
};

/// Checks that `path` starts at s, ends at v, and walks existing edges.
inline PathCheck check_path(const Graph& graph, Vertex s, Vertex v, std::span<const Vertex> path) {
  PathCheck c;
  if (path.empty() || path.front() != s || path.back() != v) return c;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Weight w = graph.edge_weight(path[i], path[i + 1]);
    if (w == 0) return c;
    c.weight += w;
  }
  c.valid = true;
  return c;
}

}  // namespace incsssp
