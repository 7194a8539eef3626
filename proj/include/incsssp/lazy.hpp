#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "incsssp/estimate_table.hpp"
#include "incsssp/graph.hpp"

namespace incsssp {

using TouchedSet = std::vector<Vertex>;

namespace detail {
using HeapEntry = std::pair<Dist, Vertex>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;
}  // namespace detail

/// Dijkstra-like propagation seeded from `input`. Extends to every vertex
/// whose estimate passes the table's relaxation test; queued vertices also
/// take plain improvements (without being reported as touched). Ties on the
/// key are broken by vertex id. Returns the touched set, sorted.
inline TouchedSet partial_dijkstra(EstimateTable& table, const Graph& graph, std::span<const Vertex> input) {
  TouchedSet touched;
  if (input.empty()) return touched;

  auto& mark = table.scratch_marks();
  const std::uint64_t gen = table.next_generation();
  const std::uint64_t queued = 2 * gen;
  const std::uint64_t done = 2 * gen + 1;

  detail::MinHeap heap;
  for (Vertex v : input) {
    if (table.at_cap(v) || mark[v] == queued) continue;
    mark[v] = queued;
    heap.emplace(table.estimate(v), v);
  }

  std::int64_t scans = 0;
  while (!heap.empty()) {
    const auto [key, u] = heap.top();
    heap.pop();
    if (mark[u] != queued || key != table.estimate(u)) continue;  // stale
    mark[u] = done;
    const Dist du = table.estimate(u);
    for (const OutEdge& e : graph.out_edges(u)) {
      ++scans;
      const Dist candidate = du + e.weight;
      if (table.profits(table.estimate(e.head), candidate)) {
        table.lower(e.head, candidate, u);
        touched.push_back(e.head);
        mark[e.head] = queued;
        heap.emplace(candidate, e.head);
      } else if (mark[e.head] == queued) {
        if (table.lower(e.head, candidate, u)) heap.emplace(candidate, e.head);
      }
    }
  }
  table.add_edge_scans(scans);

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  return touched;
}

/// Exact single-source distances below `cap` (kUnreachable otherwise) and the
/// matching shortest-path tree parents. Queue entries at or above the cap are
/// dropped. Ties are broken by vertex id.
struct BoundedDistances {
  std::vector<Dist> dist;
  std::vector<std::optional<Vertex>> parent;
  std::int64_t edge_scans = 0;
};

inline BoundedDistances bounded_dijkstra(const Graph& graph, Vertex source, Dist cap) {
  const std::size_t n = graph.num_vertices();
  BoundedDistances out{std::vector<Dist>(n, kUnreachable), std::vector<std::optional<Vertex>>(n), 0};
  std::vector<char> settled(n, 0);
  detail::MinHeap heap;
  out.dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != out.dist[u]) continue;
    settled[u] = 1;
    for (const OutEdge& e : graph.out_edges(u)) {
      ++out.edge_scans;
      const Dist candidate = d + e.weight;
      if (candidate >= cap) continue;
      if (candidate < out.dist[e.head]) {
        out.dist[e.head] = candidate;
        out.parent[e.head] = u;
        heap.emplace(candidate, e.head);
      }
    }
  }
  return out;
}

/// Lowers every estimate to its exact (capped) distance. Since estimates are
/// upper bounds this never increases a value; decreases are notified as usual.
inline void restore_exact(EstimateTable& table, const Graph& graph) {
  const BoundedDistances exact = bounded_dijkstra(graph, table.source(), table.cap());
  for (Vertex v = 0; v < table.size(); ++v) {
    if (exact.dist[v] != kUnreachable) table.lower(v, exact.dist[v], exact.parent[v]);
  }
  table.add_edge_scans(exact.edge_scans);
}

enum class Propagation {
  kSynchronized,  ///< V_input built from power-of-two windows of last_touched
  kHeadOnly,      ///< V_input = {head of the inserted edge}, only if it profited
};

/// One lazy insertion step for in-phase counter value `step` (already
/// incremented by the caller, so step >= 1). The edge must already be in the
/// graph.
inline TouchedSet lazy_insert(EstimateTable& table, const Graph& graph, Vertex u, Vertex v, Weight w,
                              std::int64_t step, Propagation mode) {
  const bool relaxed = table.try_relax(u, v, w);
  if (relaxed) table.touch(v, step);

  std::vector<Vertex> input;
  if (mode == Propagation::kSynchronized) {
    const BatchIndex bi = batch_index(step);
    input = table.touched_between((bi.k - 1) << bi.j, step);
    for (Vertex x : input) table.count_entry(x);
  } else if (relaxed) {
    input.push_back(v);
  }

  TouchedSet touched = partial_dijkstra(table, graph, input);
  for (Vertex x : touched) table.touch(x, step);
  return touched;
}

/// Maximum additive error witnessed along `path` (a vertex sequence whose
/// consecutive pairs must be edges), measured against the last vertex's
/// estimate or against the fixed height `height` when given. Vertices at the
/// cap witness nothing.
inline Dist slack(const EstimateTable& table, const Graph& graph, std::span<const Vertex> path,
                  std::optional<Dist> height = std::nullopt) {
  if (path.empty()) throw Error(ErrorKind::kNotAPath, "empty path");
  std::vector<Dist> suffix(path.size(), 0);  // d_sigma(v_i, v_l)
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    const Weight w = graph.edge_weight(path[i], path[i + 1]);
    if (w == 0) {
      throw Error(ErrorKind::kNotAPath,
                  "no edge (" + std::to_string(path[i]) + ", " + std::to_string(path[i + 1]) + ")");
    }
    suffix[i] = suffix[i + 1] + w;
  }
  const Dist top = height ? *height : table.estimate(path.back());
  if (top == kUnreachable) return kUnreachable;
  Dist best = std::numeric_limits<Dist>::min();
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (table.at_cap(path[i])) continue;
    best = std::max(best, top - table.estimate(path[i]) - suffix[i]);
  }
  return best;
}

/// An edge (u, v) with d(v) > d(u) + w + gran.
struct EdgeBreach {
  Edge edge;
  Rational amount;  ///< how far d(v) exceeds d(u) + w + gran (infinite excess reported as cap - rhs)
};

/// Full scan of the per-edge bound d(v) <= d(u) + w + gran. A capped head is
/// only a breach when the right-hand side lies below the cap.
inline std::vector<EdgeBreach> edge_bound_breaches(const EstimateTable& table, const Graph& graph) {
  std::vector<EdgeBreach> out;
  const Granularity& g = table.gran();
  for (Vertex u = 0; u < table.size(); ++u) {
    if (table.at_cap(u)) continue;
    const Dist du = table.estimate(u);
    for (const OutEdge& e : graph.out_edges(u)) {
      // excess * den = (d(v) - d(u) - w) * den - num; a capped head counts as
      // sitting exactly at the cap, which is a breach iff d(u) + w + gran < cap.
      const Dist dv = table.at_cap(e.head) ? table.cap() : table.estimate(e.head);
      const __int128 scaled = static_cast<__int128>(dv - du - e.weight) * g.den - g.num;
      if (scaled > 0) {
        out.push_back({{u, e.head, e.weight},
                       Rational(dv - du - e.weight) - g.value()});
      }
    }
  }
  return out;
}

}  // namespace incsssp
