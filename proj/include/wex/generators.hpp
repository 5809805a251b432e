#pragma once

#include <utility>
#include <vector>

#include "wex/bipartite.hpp"
#include "wex/graph.hpp"
#include "wex/rng.hpp"

namespace wex {

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return Graph(n, edges);
}

// Outer 5-cycle, inner 5-cycle with step 2, spokes between them.
inline Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
    edges.emplace_back(i, i + 5);
    edges.emplace_back(std::min(5 + i, 5 + (i + 2) % 5), std::max(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, edges);
}

// Erdos-Renyi style graph, each edge present with probability p.
inline Graph random_graph(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

// Random bipartite instance with no isolated vertices: random cross edges,
// then every isolated vertex gets one edge to a uniformly drawn partner.
inline BipartiteInstance random_bipartite_instance(int s, int gamma, double p, Rng& rng) {
  std::vector<std::vector<char>> has(s, std::vector<char>(gamma, 0));
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < gamma; ++v)
      if (rng.bernoulli(p)) has[u][v] = 1;
  std::vector<int> s_deg(s, 0), n_deg(gamma, 0);
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < gamma; ++v)
      if (has[u][v]) { ++s_deg[u]; ++n_deg[v]; }
  for (int u = 0; u < s; ++u) {
    if (s_deg[u] == 0) {
      int v = static_cast<int>(rng.uniform_below(gamma));
      has[u][v] = 1;
      ++s_deg[u];
      ++n_deg[v];
    }
  }
  for (int v = 0; v < gamma; ++v) {
    if (n_deg[v] == 0) {
      int u = static_cast<int>(rng.uniform_below(s));
      has[u][v] = 1;
      ++s_deg[u];
      ++n_deg[v];
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < gamma; ++v)
      if (has[u][v]) edges.emplace_back(u, s + v);
  return BipartiteInstance(Graph(s + gamma, edges, s));
}

}  // namespace wex
