#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "incsssp/types.hpp"

namespace incsssp {

struct OutEdge {
  Vertex head;
  Weight weight;

  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

/// Insert-only simple digraph over the fixed vertex set [0, n).
///
/// Edges are never removed, so adjacency lists only grow and a span returned
/// by out_edges() stays valid for its prefix until the next insertion.
class Graph {
 public:
  Graph(std::size_t n, Weight max_weight) : adjacency_(n), max_weight_(max_weight) {
    if (max_weight < 1) throw Error(ErrorKind::kInvalidConfig, "max weight must be >= 1");
  }

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  Weight max_weight() const noexcept { return max_weight_; }

  /// Caps the total edge count (initial plus inserted).
  void set_budget(std::size_t budget) noexcept { budget_ = budget; }
  std::size_t budget() const noexcept { return budget_; }
  std::size_t budget_left() const noexcept { return budget_ - num_edges_; }

  /// Checks everything insert_edge() would reject, without mutating.
  void validate_edge(Vertex u, Vertex v, Weight w) const {
    if (num_edges_ >= budget_) {
      throw Error(ErrorKind::kBudgetExceeded, "edge budget of " + std::to_string(budget_) + " exhausted");
    }
    check_vertex(u);
    check_vertex(v);
    if (w < 1 || w > max_weight_) {
      throw Error(ErrorKind::kWeightOutOfRange,
                  "weight " + std::to_string(w) + " outside [1, " + std::to_string(max_weight_) + "]");
    }
    if (has_edge(u, v)) {
      throw Error(ErrorKind::kDuplicateEdge,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") already present");
    }
  }

  /// Adds an initial (preprocessing) edge. Not recorded in the insertion log.
  void add_initial_edge(Vertex u, Vertex v, Weight w) {
    validate_edge(u, v, w);
    link(u, v, w);
    ++initial_edges_;
  }

  /// Returns the 1-based insertion index of the new edge.
  std::size_t insert_edge(Vertex u, Vertex v, Weight w) {
    validate_edge(u, v, w);
    link(u, v, w);
    log_.push_back({u, v, w});
    return log_.size();
  }

  std::span<const OutEdge> out_edges(Vertex u) const {
    check_vertex(u);
    return adjacency_[u];
  }

  bool has_edge(Vertex u, Vertex v) const { return keys_.contains(key(u, v)); }

  /// Weight of (u, v), or 0 if absent.
  Weight edge_weight(Vertex u, Vertex v) const {
    if (u >= num_vertices() || !has_edge(u, v)) return 0;
    for (const OutEdge& e : adjacency_[u]) {
      if (e.head == v) return e.weight;
    }
    return 0;
  }

  const std::vector<Edge>& insertion_log() const noexcept { return log_; }
  std::size_t initial_edge_count() const noexcept { return initial_edges_; }

  void check_vertex(Vertex u) const {
    if (u >= num_vertices()) {
      throw Error(ErrorKind::kVertexOutOfRange,
                  "vertex " + std::to_string(u) + " not in [0, " + std::to_string(num_vertices()) + ")");
    }
  }

 private:
  static std::uint64_t key(Vertex u, Vertex v) { return (std::uint64_t{u} << 32) | v; }

  void link(Vertex u, Vertex v, Weight w) {
    adjacency_[u].push_back({v, w});
    keys_.insert(key(u, v));
    ++num_edges_;
  }

  std::vector<std::vector<OutEdge>> adjacency_;
  std::unordered_set<std::uint64_t> keys_;
  std::vector<Edge> log_;
  std::size_t num_edges_ = 0;
  std::size_t initial_edges_ = 0;
  std::size_t budget_ = std::numeric_limits<std::size_t>::max();
  Weight max_weight_;
};

}  // namespace incsssp
