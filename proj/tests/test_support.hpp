#pragma once

#include <functional>
#include <vector>

#include "incsssp/incsssp.hpp"

namespace incsssp::testing {

/// Shortest distances by exhaustive enumeration of simple paths (small n only).
inline std::vector<Dist> brute_force_distances(const Graph& g, Vertex s) {
  std::vector<Dist> best(g.num_vertices(), kUnreachable);
  std::vector<char> on_path(g.num_vertices(), 0);
  std::function<void(Vertex, Dist)> walk = [&](Vertex u, Dist d) {
    best[u] = std::min(best[u], d);
    on_path[u] = 1;
    for (const OutEdge& e : g.out_edges(u)) {
      if (!on_path[e.head]) walk(e.head, d + e.weight);
    }
    on_path[u] = 0;
  };
  walk(s, 0);
  return best;
}

inline Graph random_graph(std::size_t n, std::size_t m, Weight W, std::uint64_t seed) {
  Graph g(n, W);
  for (const Event& e : random_stream(n, m, W, seed).events) g.insert_edge(e.u, e.v, e.w);
  return g;
}

}  // namespace incsssp::testing
