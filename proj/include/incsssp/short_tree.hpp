#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "incsssp/lazy.hpp"

namespace incsssp {

/// Exact incremental shortest paths for distances below a cap: an ES-tree
/// that propagates every strict improvement.
class ShortTree {
 public:
  using DecreaseListener = std::function<void(Vertex, Dist, Dist)>;

  ShortTree(const Graph& graph, Vertex source, Dist cap)
      : dist_(graph.num_vertices(), kUnreachable), parent_(graph.num_vertices()), source_(source), cap_(cap) {
    if (cap < 1) throw Error(ErrorKind::kInvalidParams, "short tree cap must be >= 1");
    dist_[source] = 0;
    reinitialize(graph);
  }

  void set_listener(DecreaseListener listener) { listener_ = std::move(listener); }

  /// Recomputes from scratch (used after loading initial edges).
  void reinitialize(const Graph& graph) {
    const BoundedDistances exact = bounded_dijkstra(graph, source_, cap_);
    for (Vertex v = 0; v < dist_.size(); ++v) {
      if (exact.dist[v] < dist_[v]) set(v, exact.dist[v], exact.parent[v]);
    }
    relaxations_ += exact.edge_scans;
  }

  void insert(const Graph& graph, Vertex u, Vertex v, Weight w) {
    if (dist_[u] == kUnreachable) return;
    const Dist candidate = dist_[u] + w;
    if (candidate >= cap_ || candidate >= dist_[v]) return;
    set(v, candidate, u);

    detail::MinHeap heap;
    heap.emplace(candidate, v);
    while (!heap.empty()) {
      const auto [d, x] = heap.top();
      heap.pop();
      if (d != dist_[x]) continue;
      for (const OutEdge& e : graph.out_edges(x)) {
        ++relaxations_;
        const Dist c = d + e.weight;
        if (c < cap_ && c < dist_[e.head]) {
          set(e.head, c, x);
          heap.emplace(c, e.head);
        }
      }
    }
  }

  Dist estimate(Vertex v) const { return dist_[v]; }
  std::optional<Vertex> parent(Vertex v) const { return parent_[v]; }
  Dist cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return dist_.size(); }
  std::int64_t relaxations() const noexcept { return relaxations_; }

 private:
  void set(Vertex v, Dist value, std::optional<Vertex> parent) {
    const Dist old = dist_[v];
    dist_[v] = value;
    parent_[v] = parent;
    if (listener_) listener_(v, old, value);
  }

  std::vector<Dist> dist_;
  std::vector<std::optional<Vertex>> parent_;
  Vertex source_;
  Dist cap_;
  std::int64_t relaxations_ = 0;
  DecreaseListener listener_;
};

}  // namespace incsssp
