#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wex/ratio.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

// Thrown when an operation exceeds its subset-enumeration cap.
class SizeCapError : public std::runtime_error {
public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kEnumerationCap = 20;  // 2^20 subsets is the desk-scale budget
inline constexpr int kWirelessCap = 16;     // sub-subset enumeration costs 3^n
inline constexpr int kRestrictedWirelessCap = 24;

// Undirected simple graph over dense ids 0..n-1, immutable after construction.
// A bipartite-tagged graph places the left side first (ids 0..left_size-1)
// so the side test is a comparison.
class Graph {
public:
  Graph() : n_(0) {}
  Graph(int n, const std::vector<std::pair<int, int>>& edges,
        std::optional<int> bipartite_left = std::nullopt)
      : n_(n), adj_(n), left_size_(bipartite_left) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    if (left_size_ && (*left_size_ < 0 || *left_size_ > n))
      throw std::invalid_argument("Graph: bipartition size out of range");
    for (auto [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("Graph: edge endpoint out of range");
      if (u == v) throw std::invalid_argument("Graph: self-loop");
      if (left_size_ && (u < *left_size_) == (v < *left_size_))
        throw std::invalid_argument("Graph: edge does not cross the bipartition");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (int v = 0; v < n_; ++v) {
      auto& nb = adj_[v];
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
        throw std::invalid_argument("Graph: duplicate edge");
    }
  }

  int n() const { return n_; }
  long long edge_count() const {
    long long total = 0;
    for (const auto& nb : adj_) total += static_cast<long long>(nb.size());
    return total / 2;
  }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max<int>(d, static_cast<int>(nb.size()));
    return d;
  }
  bool adjacent(int u, int v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }
  std::optional<int> left_size() const { return left_size_; }

  // Canonical edge list: u < v, ascending.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool is_regular() const {
    for (int v = 0; v < n_; ++v)
      if (degree(v) != degree(0)) return false;
    return n_ > 0;
  }

  bool is_connected() const {
    if (n_ == 0) return false;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj_[u])
        if (!seen[v]) { seen[v] = 1; ++count; stack.push_back(v); }
    }
    return count == n_;
  }

  // Per-vertex adjacency bitmasks; requires n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const {
    if (n_ > 64) throw SizeCapError("adjacency_masks: n > 64");
    std::vector<std::uint64_t> masks(n_, 0);
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[u]) masks[u] |= std::uint64_t{1} << v;
    return masks;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_ && a.left_size_ == b.left_size_;
  }

private:
  int n_;
  std::vector<std::vector<int>> adj_;
  std::optional<int> left_size_;
};

// BFS distances from source; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.n(), -1);
  std::vector<int> queue{source};
  dist.at(source) = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

inline int eccentricity(const Graph& g, int source) {
  auto dist = bfs_distances(g, source);
  int ecc = 0;
  for (int d : dist) {
    if (d < 0) throw std::domain_error("eccentricity: graph is disconnected");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

inline int diameter(const Graph& g) {
  int diam = 0;
  for (int v = 0; v < g.n(); ++v) diam = std::max(diam, eccentricity(g, v));
  return diam;
}

inline void check_vertex_range(const Graph& g, const VertexSet& s, const char* op) {
  if (s.universe() != g.n() || (!s.empty() && s.ids().back() >= g.n()))
    throw std::invalid_argument(std::string(op) + ": vertex id out of range");
}

// Gamma(S): union of neighborhoods, including members of S with a neighbor in S.
inline VertexSet neighborhood(const Graph& g, const VertexSet& s) {
  check_vertex_range(g, s, "neighborhood");
  std::vector<char> hit(g.n(), 0);
  for (int u : s.ids())
    for (int v : g.neighbors(u)) hit[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (hit[v]) out.push_back(v);
  return VertexSet(std::move(out), g.n());
}

// Gamma^-(S) = Gamma(S) \ S.
inline VertexSet external_neighborhood(const Graph& g, const VertexSet& s) {
  return set_minus(neighborhood(g, s), s);
}

// S-excluding unique-neighborhood Gamma^1_S(S'): vertices outside S with
// exactly one neighbor in S'. With sprime == s this is Gamma^1(S).
inline VertexSet unique_neighborhood(const Graph& g, const VertexSet& s,
                                     const VertexSet& sprime) {
  check_vertex_range(g, s, "unique_neighborhood");
  if (!sprime.is_subset_of(s))
    throw std::invalid_argument("unique_neighborhood: sprime is not a subset of s");
  std::vector<int> hits(g.n(), 0);
  for (int u : sprime.ids())
    for (int v : g.neighbors(u)) ++hits[v];
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (hits[v] == 1 && !s.contains(v)) out.push_back(v);
  return VertexSet(std::move(out), g.n());
}

// Exact maximum of |E(U)|/(|U|-1) over all U with |U| >= 2.
inline Ratio max_subgraph_density(const Graph& g, int cap = kEnumerationCap) {
  if (g.n() > cap || g.n() > 32)
    throw SizeCapError("max_subgraph_density: n exceeds enumeration cap");
  if (g.n() < 2 || g.edge_count() == 0) return Ratio(0, 1);
  auto masks = g.adjacency_masks();
  Ratio best(0, 1);
  std::uint32_t full = (g.n() == 32) ? 0xffffffffu : ((1u << g.n()) - 1);
  for (std::uint32_t m = 1; m <= full; ++m) {
    int k = std::popcount(m);
    if (k < 2) continue;
    long long inner = 0;
    std::uint32_t rest = m;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      inner += std::popcount(static_cast<std::uint32_t>(masks[v]) & m);
    }
    Ratio density(inner / 2, k - 1);
    if (best < density) best = density;
  }
  return best;
}

// Arboricity eta = max over U of ceil(|E(U)|/(|U|-1)), by subset enumeration.
inline long long arboricity_bruteforce(const Graph& g, int cap = kEnumerationCap) {
  Ratio d = max_subgraph_density(g, cap);
  return (d.num() + d.den() - 1) / d.den();  // ceil, density is nonnegative
}

// Graph file format: first line "n m" or "n m bipartite s"; then m lines
// "u v" with u < v, one edge each; '#' starts a comment line.
inline void write_graph(const Graph& g, std::ostream& out,
                        const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << g.n() << " " << g.edge_count();
  if (g.left_size()) out << " bipartite " << *g.left_size();
  out << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

inline void write_graph(const Graph& g, const std::string& path,
                        const std::vector<std::string>& comments = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_graph: cannot open " + path);
  write_graph(g, out, comments);
}

inline Graph read_graph(std::istream& in) {
  std::string line;
  auto next_content_line = [&](std::string& dst) {
    while (std::getline(in, dst)) {
      size_t start = dst.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (dst[start] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_content_line(line)) throw std::invalid_argument("read_graph: missing header");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string tag;
  long long left = -1;
  header >> n >> m;
  if (!header || n < 0 || m < 0) throw std::invalid_argument("read_graph: malformed header");
  if (header >> tag) {
    if (tag != "bipartite" || !(header >> left))
      throw std::invalid_argument("read_graph: malformed header");
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(line))
      throw std::invalid_argument("read_graph: fewer edges than declared");
    std::istringstream row(line);
    long long u, v;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra))
      throw std::invalid_argument("read_graph: malformed edge line: " + line);
    if (u >= v)
      throw std::invalid_argument("read_graph: edge not in canonical u < v order");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  if (next_content_line(line))
    throw std::invalid_argument("read_graph: trailing content after edge list");
  std::optional<int> tagged;
  if (left >= 0) tagged = static_cast<int>(left);
  return Graph(static_cast<int>(n), edges, tagged);
}

inline Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_graph: cannot open " + path);
  return read_graph(in);
}

}  // namespace wex
