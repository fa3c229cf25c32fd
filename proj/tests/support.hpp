#pragma once

#include <utility>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace spinlab::testing {

// Random connected graph on 2..max_n vertices: a random increasing tree plus
// a few extra edges. Deterministic for a given rng state, so test cases give
// reproducible instances.
inline Graph random_connected_graph(Rng& rng, int max_n) {
  const int n = 2 + static_cast<int>(rng.next_below(max_n - 1));
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= n; ++v)
    edges.emplace_back(1 + static_cast<int>(rng.next_below(v - 1)), v);

  const int max_extra = n * (n - 1) / 2 - (n - 1);
  int extra = static_cast<int>(rng.next_below(n));
  for (int tries = 0; extra > 0 && tries < 10 * n && max_extra > 0; ++tries) {
    const int a = 1 + static_cast<int>(rng.next_below(n));
    const int b = 1 + static_cast<int>(rng.next_below(n));
    if (a == b) continue;
    const auto edge = std::minmax(a, b);
    bool present = false;
    for (auto [p, q] : edges) present |= (p == edge.first && q == edge.second);
    if (present) continue;
    edges.emplace_back(edge.first, edge.second);
    --extra;
  }
  return Graph(n, std::move(edges), "random:" + std::to_string(n));
}

}  // namespace spinlab::testing
