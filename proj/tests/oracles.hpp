// Test-side oracles: direct, set-based transcriptions of the definitions,
// kept independent of the library's bitmask enumeration paths.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wex/graph.hpp"
#include "wex/ratio.hpp"

namespace oracle {

inline std::set<int> gamma(const wex::Graph& g, const std::set<int>& s) {
  std::set<int> out;
  for (int u : s)
    for (int v : g.neighbors(u)) out.insert(v);
  return out;
}

inline std::set<int> gamma_minus(const wex::Graph& g, const std::set<int>& s) {
  std::set<int> out = gamma(g, s);
  for (int u : s) out.erase(u);
  return out;
}

// Vertices outside `s` with exactly one neighbor in `sprime`.
inline std::set<int> gamma1(const wex::Graph& g, const std::set<int>& s,
                            const std::set<int>& sprime) {
  std::set<int> out;
  for (int v = 0; v < g.n(); ++v) {
    if (s.count(v)) continue;
    int hits = 0;
    for (int u : g.neighbors(v))
      if (sprime.count(u)) ++hits;
    if (hits == 1) out.insert(v);
  }
  return out;
}

inline void all_subsets(const std::vector<int>& pool, int max_size,
                        std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::vector<size_t> stack;
  // depth-first over sorted pool keeps subsets in lexicographic order
  auto rec = [&](auto&& self, size_t from) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

struct ExpansionOracle {
  wex::Ratio value{0, 1};
  std::vector<int> witness;
};

enum class Kind { Ordinary, Unique, Wireless };

inline ExpansionOracle expansion(const wex::Graph& g, wex::Ratio alpha, Kind kind,
                                 std::optional<std::vector<int>> candidates = std::nullopt) {
  std::vector<int> pool;
  if (candidates) {
    pool = *candidates;
  } else {
    for (int v = 0; v < g.n(); ++v) pool.push_back(v);
  }
  int max_size = static_cast<int>((alpha * wex::Ratio::of(static_cast<int>(pool.size()))).floor());
  std::vector<std::vector<int>> subsets;
  all_subsets(pool, max_size, subsets);
  ExpansionOracle best;
  bool have = false;
  for (const auto& ids : subsets) {
    std::set<int> s(ids.begin(), ids.end());
    long long count = 0;
    if (kind == Kind::Ordinary) {
      count = static_cast<long long>(gamma_minus(g, s).size());
    } else if (kind == Kind::Unique) {
      count = static_cast<long long>(gamma1(g, s, s).size());
    } else {
      std::vector<std::vector<int>> subs;
      all_subsets(ids, static_cast<int>(ids.size()), subs);
      for (const auto& sp : subs) {
        std::set<int> sprime(sp.begin(), sp.end());
        count = std::max(count, static_cast<long long>(gamma1(g, s, sprime).size()));
      }
    }
    wex::Ratio value(count, static_cast<long long>(ids.size()));
    if (!have || value < best.value) {
      have = true;
      best.value = value;
      best.witness = ids;
    }
  }
  return best;
}

// ---- small fixed graphs ----

inline wex::Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return wex::Graph(n, edges);
}

inline wex::Graph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return wex::Graph(n, edges);
}

inline wex::Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return wex::Graph(a + b, edges, a);
}

inline wex::Graph star(int leaves) {  // center is vertex 0
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return wex::Graph(leaves + 1, edges);
}

inline wex::Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return wex::Graph(n, edges);
}

inline wex::Graph perfect_matching(int pairs) {  // bipartite, left i -- right pairs+i
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < pairs; ++i) edges.emplace_back(i, pairs + i);
  return wex::Graph(2 * pairs, edges, pairs);
}

inline wex::Graph petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));  // outer C5
    edges.emplace_back(i, i + 5);                                            // spokes
    edges.emplace_back(std::min(5 + i, 5 + (i + 2) % 5), std::max(5 + i, 5 + (i + 2) % 5));
  }
  return wex::Graph(10, edges);
}

// C^+ : complete graph plus a source attached to exactly two of its vertices.
inline wex::Graph c_plus(int clique) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < clique; ++u)
    for (int v = u + 1; v < clique; ++v) edges.emplace_back(u, v);
  int source = clique;
  edges.emplace_back(0, source);
  edges.emplace_back(1, source);
  return wex::Graph(clique + 1, edges);
}

}  // namespace oracle

// ---- spokesman-side oracles ----

#include "wex/bipartite.hpp"

namespace oracle {

// Exact expectation of the unique-cover of `bucket` when every S-vertex is
// sampled independently with probability p: full 2^|S| sample-space sum.
inline double exact_expected_bucket_cover(const wex::BipartiteInstance& inst,
                                          const std::vector<int>& bucket, double p) {
  int s = inst.s();
  const wex::Graph& g = inst.graph();
  double total = 0;
  for (std::uint32_t m = 0; m < (1u << s); ++m) {
    int pop = std::popcount(m);
    double weight = std::pow(p, pop) * std::pow(1 - p, s - pop);
    if (weight == 0) continue;
    long long covered = 0;
    for (int v : bucket) {
      int hits = 0;
      for (int u : g.neighbors(v))
        if (m >> u & 1) ++hits;
      if (hits == 1) ++covered;
    }
    total += weight * covered;
  }
  return total;
}

}  // namespace oracle
