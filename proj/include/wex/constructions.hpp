#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wex/graph.hpp"
#include "wex/ratio.hpp"
#include "wex/rng.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

// ---------------------------------------------------------------------------
// Core graph: bipartite graph on a perfect binary tree with s leaves.
// Leaf z is adjacent to every N-vertex owned by an ancestor tree node.
// ---------------------------------------------------------------------------

// N-vertex layout is level-major: level i occupies ids [s + i*s, s + (i+1)*s),
// split into 2^i contiguous node blocks of size s/2^i.
struct CoreGraphSpec {
  int requested_s = 0;
  int s = 0;       // power of two actually used
  int levels = 0;  // log2(2s)

  int log_s() const { return levels - 1; }
  int n_side_size() const { return s * levels; }

  int level_of(int n_vertex) const { return (n_vertex - s) / s; }
  int node_of(int n_vertex) const {
    int within = (n_vertex - s) % s;
    return within / (s >> level_of(n_vertex));
  }
  // [first, last) vertex ids owned by tree node (level, node)
  std::pair<int, int> node_range(int level, int node) const {
    int size = s >> level;
    int first = s + level * s + node * size;
    return {first, first + size};
  }
  // tree node (level, node) per N-vertex, in id order
  std::vector<std::pair<int, int>> tree_map() const {
    std::vector<std::pair<int, int>> map;
    map.reserve(n_side_size());
    for (int v = s; v < s + n_side_size(); ++v)
      map.emplace_back(level_of(v), node_of(v));
    return map;
  }
  // leaf z's ancestor node index at a given level
  int ancestor_node(int leaf, int level) const { return leaf >> (log_s() - level); }
};

struct CoreBuild {
  Graph graph;
  CoreGraphSpec spec;
};

inline int next_power_of_two(int x) {
  int p = 1;
  while (p < x) p *= 2;
  return p;
}

inline CoreBuild build_core(int requested_s) {
  if (requested_s < 1) throw std::invalid_argument("build_core: s must be >= 1");
  CoreGraphSpec spec;
  spec.requested_s = requested_s;
  spec.s = next_power_of_two(requested_s);
  spec.levels = 1;
  for (int p = spec.s; p > 1; p /= 2) ++spec.levels;
  int s = spec.s;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(s) * (2 * s - 1));
  for (int z = 0; z < s; ++z) {
    for (int level = 0; level < spec.levels; ++level) {
      auto [first, last] = spec.node_range(level, spec.ancestor_node(z, level));
      for (int v = first; v < last; ++v) edges.emplace_back(z, v);
    }
  }
  return {Graph(s + spec.n_side_size(), edges, s), spec};
}

// ---------------------------------------------------------------------------
// Copied variants: k copies of every N-vertex (raises expansion to beta)
// or k copies of every S-vertex (lowers it), wireless cap structure intact.
// ---------------------------------------------------------------------------

struct CopyBuild {
  Graph graph;
  CoreGraphSpec core;  // the underlying core graph the copies expand
  int k = 1;
  double requested_beta = 0;
};

namespace detail {

inline Graph core_with_n_copies(const CoreBuild& base, int k) {
  int s = base.spec.s;
  std::vector<std::pair<int, int>> edges;
  for (auto [z, v] : base.graph.edges()) {
    int b = v - s;
    for (int c = 0; c < k; ++c) edges.emplace_back(z, s + b * k + c);
  }
  return Graph(s + base.spec.n_side_size() * k, edges, s);
}

inline Graph core_with_s_copies(const CoreBuild& base, int k) {
  int s = base.spec.s;
  std::vector<std::pair<int, int>> edges;
  for (auto [z, v] : base.graph.edges()) {
    int b = v - s;
    for (int c = 0; c < k; ++c) edges.emplace_back(z * k + c, s * k + b);
  }
  return Graph(s * k + base.spec.n_side_size(), edges, s * k);
}

}  // namespace detail

inline CopyBuild build_core_ncopy(int requested_s, double beta) {
  CoreBuild base = build_core(requested_s);
  double l = std::log2(2.0 * base.spec.s);
  if (!(beta > l))
    throw std::invalid_argument("build_core_ncopy: beta must exceed log2(2s)");
  int k = std::max(1, static_cast<int>(std::llround(beta / l)));
  return {detail::core_with_n_copies(base, k), base.spec, k, beta};
}

inline CopyBuild build_core_scopy(int requested_s, double beta) {
  CoreBuild base = build_core(requested_s);
  double l = std::log2(2.0 * base.spec.s);
  if (!(beta <= l))
    throw std::invalid_argument("build_core_scopy: beta must be at most log2(2s)");
  if (!(beta > 0)) throw std::invalid_argument("build_core_scopy: beta must be positive");
  int k = std::max(1, static_cast<int>(std::llround(l / beta)));
  return {detail::core_with_s_copies(base, k), base.spec, k, beta};
}

// ---------------------------------------------------------------------------
// Generalized core graph with target maximum degree Delta* and expansion
// beta*. Dispatches between the two copied variants; the branch test and
// both degree equations follow the case split of the construction.
// ---------------------------------------------------------------------------

enum class GenCoreBranch { NCopy, SCopy };

struct GenCoreBuild {
  Graph graph;
  GenCoreBranch branch = GenCoreBranch::NCopy;
  int s = 0;  // integer solution used (pre power-of-two rounding)
  int k = 1;
  int delta_star = 0;
  double beta_star = 0;
  int s_size = 0;  // |S*|
  int n_size = 0;  // |N*|
  bool s_exact = false;      // integer s met the degree equation exactly
  bool range_ok = false;     // (2e)/Delta* <= beta* <= Delta*/(2e)
  bool max_degree_ok = false;
  double wireless_cap = 0;   // (4 / log2 min{D*/b*, D*.b*}) * |N*|; <0 marks an undefined cap
  CoreGraphSpec core;
};

namespace detail {

// Nearest integer s >= 1 for a nondecreasing equation f(s) = target;
// ties prefer the smaller s. Returns (s, exact).
template <typename F>
std::pair<int, bool> solve_monotone(F f, double target) {
  int s = 1;
  while (f(s) < target && s < (1 << 24)) ++s;
  double hi = f(s);
  if (std::abs(hi - target) < 1e-9) return {s, true};
  if (s == 1) return {1, false};
  double lo = f(s - 1);
  if (std::abs(lo - target) < 1e-9) return {s - 1, true};
  return {std::abs(lo - target) <= std::abs(hi - target) ? s - 1 : s, false};
}

}  // namespace detail

inline GenCoreBuild build_generalized_core(int delta_star, double beta_star,
                                           bool strict = false) {
  if (delta_star < 1)
    throw std::invalid_argument("build_generalized_core: delta_star must be >= 1");
  if (!(beta_star > 0))
    throw std::invalid_argument("build_generalized_core: beta_star must be positive");
  constexpr double kTwoE = 2 * 2.718281828459045235;
  bool range_ok = beta_star >= kTwoE / delta_star - 1e-12 &&
                  beta_star <= delta_star / kTwoE + 1e-12;
  if (strict && !range_ok)
    throw std::domain_error(
        "build_generalized_core: beta_star outside [(2e)/Delta*, Delta*/(2e)]");

  GenCoreBuild out;
  out.delta_star = delta_star;
  out.beta_star = beta_star;
  out.range_ok = range_ok;

  auto ncopy_deg = [&](int s) { return 2.0 * s * beta_star / std::log2(2.0 * s); };
  auto [s_n, exact_n] = detail::solve_monotone(ncopy_deg, delta_star);
  if (beta_star >= std::log2(2.0 * s_n) - 1e-9) {
    // ncopy branch; at the boundary beta* == log 2s the copy count is 1
    out.branch = GenCoreBranch::NCopy;
    out.s = s_n;
    out.s_exact = exact_n;
    CoreBuild base = build_core(s_n);
    out.k = std::max(1, static_cast<int>(std::llround(beta_star / std::log2(2.0 * base.spec.s))));
    out.graph = detail::core_with_n_copies(base, out.k);
    out.core = base.spec;
    out.s_size = base.spec.s;
    out.n_size = base.spec.n_side_size() * out.k;
  } else {
    auto scopy_deg = [&](int s) { return 2.0 * s * std::log2(2.0 * s) / beta_star; };
    auto [s_c, exact_c] = detail::solve_monotone(scopy_deg, delta_star);
    out.branch = GenCoreBranch::SCopy;
    out.s = s_c;
    out.s_exact = exact_c;
    CoreBuild base = build_core(s_c);
    out.k = std::max(1, static_cast<int>(std::llround(std::log2(2.0 * base.spec.s) / beta_star)));
    out.graph = detail::core_with_s_copies(base, out.k);
    out.core = base.spec;
    out.s_size = base.spec.s * out.k;
    out.n_size = base.spec.n_side_size();
  }
  out.max_degree_ok = out.graph.max_degree() <= delta_star;
  double arg = std::min(delta_star / beta_star, delta_star * beta_star);
  out.wireless_cap = arg > 1.0 ? (4.0 / std::log2(arg)) * out.n_size : -1.0;
  return out;
}

// ---------------------------------------------------------------------------
// G^bad: ordinary expansion beta with unique-neighbor expansion exactly
// 2*beta - Delta. Consecutive S-vertices (cyclically) share Delta - beta
// neighbors; the shared run of block i+1 is the tail of v_i's list.
// ---------------------------------------------------------------------------

struct BadUniqueBuild {
  Graph graph;
  int delta = 0;
  int beta = 0;
  int s = 0;
  int expected_beta_u = 0;  // 2*beta - Delta
  int wireless_floor = 0;   // max{2*beta - Delta, floor(Delta/2)}
};

inline BadUniqueBuild build_bad_unique(int delta, int beta, int s) {
  if (s < 3) throw std::invalid_argument("build_bad_unique: s must be >= 3");
  if (!(2 * beta >= delta && beta <= delta && beta >= 1))
    throw std::invalid_argument("build_bad_unique: need Delta/2 <= beta <= Delta");
  int overlap = delta - beta;
  std::vector<std::pair<int, int>> edges;
  auto block = [&](int i) { return s + i * beta; };
  for (int i = 0; i < s; ++i) {
    for (int p = 0; p < beta; ++p) edges.emplace_back(i, block(i) + p);
    for (int p = 0; p < overlap; ++p) edges.emplace_back(i, block((i + 1) % s) + p);
  }
  BadUniqueBuild out{Graph(s + s * beta, edges, s), delta, beta, s,
                     2 * beta - delta, std::max(2 * beta - delta, delta / 2)};
  return out;
}

// ---------------------------------------------------------------------------
// Worst-case plug: attach a generalized core on top of a base expander.
// S* vertices are new; N* is identified with the lowest-id base vertices.
// ---------------------------------------------------------------------------

struct PlugParams {
  double epsilon = 0;
  int delta_star = 0;    // round(epsilon * Delta)
  double beta_star = 0;  // beta / epsilon
};

inline PlugParams make_plug_params(int base_max_degree, double beta, double epsilon) {
  if (!(epsilon > 0 && epsilon < 0.5))
    throw std::invalid_argument("make_plug_params: epsilon must be in (0, 1/2)");
  if (!(base_max_degree * beta >= 1.0 / (1 - epsilon * epsilon) - 1e-12))
    throw std::invalid_argument("make_plug_params: need Delta*beta >= 1/(1-eps^2)");
  PlugParams p;
  p.epsilon = epsilon;
  p.delta_star = std::max(1, static_cast<int>(std::llround(epsilon * base_max_degree)));
  p.beta_star = beta / epsilon;
  return p;
}

struct PlugBuild {
  Graph graph;
  GenCoreBuild core;
  int base_n = 0;
  int tilde_n = 0;
  int tilde_delta = 0;
  double n_bound = 0;      // (1 + eps) * n
  double delta_bound = 0;  // (1 + eps) * Delta
  double beta_tilde = 0;   // (1 - eps) * beta
  double alpha_tilde = 0;  // (1 - eps) * alpha
  VertexSet s_star;
};

inline PlugBuild plug_worst_case(const Graph& base, Ratio alpha, Ratio beta,
                                 const PlugParams& params) {
  int delta = base.max_degree();
  if (!(delta * beta.to_double() >= 1.0 / (1 - params.epsilon * params.epsilon) - 1e-12))
    throw std::invalid_argument("plug_worst_case: need Delta*beta >= 1/(1-eps^2)");
  GenCoreBuild core = build_generalized_core(params.delta_star, params.beta_star,
                                             /*strict=*/false);
  if (core.n_size > base.n())
    throw std::invalid_argument("plug_worst_case: base too small to host N*");
  auto edges = base.edges();
  int s_size = core.s_size;
  for (auto [u, v] : core.graph.edges()) {
    // core S* id u < s_size maps to a new vertex, N* id v maps to base id v - s_size
    edges.emplace_back(base.n() + u, v - s_size);
  }
  PlugBuild out;
  out.base_n = base.n();
  out.graph = Graph(base.n() + s_size, edges);
  out.core = std::move(core);
  out.tilde_n = out.graph.n();
  out.tilde_delta = out.graph.max_degree();
  out.n_bound = (1 + params.epsilon) * base.n();
  out.delta_bound = (1 + params.epsilon) * delta;
  out.beta_tilde = (1 - params.epsilon) * beta.to_double();
  out.alpha_tilde = (1 - params.epsilon) * alpha.to_double();
  std::vector<int> star_ids;
  for (int v = base.n(); v < out.graph.n(); ++v) star_ids.push_back(v);
  out.s_star = VertexSet(star_ids, out.graph.n());
  return out;
}

// ---------------------------------------------------------------------------
// Broadcast chain: d_hops core copies in sequence. rt^0 feeds S^1; each
// rt^i is drawn uniformly from N^i by the seeded generator and feeds S^{i+1}.
// ---------------------------------------------------------------------------

struct ChainBuild {
  Graph graph;
  int s = 0;
  int d_hops = 0;
  std::uint64_t seed = 0;
  std::vector<int> rt;  // rt[0] = root vertex, then one sample per hop
  struct CoreRange {
    int s_begin, s_end, n_begin, n_end;
  };
  std::vector<CoreRange> cores;
  int diameter_claim = 0;  // 2 * d_hops + 2
};

inline ChainBuild build_broadcast_chain(int requested_s, int d_hops, std::uint64_t seed) {
  if (d_hops < 1) throw std::invalid_argument("build_broadcast_chain: d_hops must be >= 1");
  CoreBuild proto = build_core(requested_s);
  int s = proto.spec.s;
  int n_sz = proto.spec.n_side_size();
  int block = s + n_sz;
  auto core_edges = proto.graph.edges();

  ChainBuild out;
  out.s = s;
  out.d_hops = d_hops;
  out.seed = seed;
  out.diameter_claim = 2 * d_hops + 2;

  std::vector<std::pair<int, int>> edges;
  out.rt.push_back(0);
  Rng rng(seed);
  for (int h = 0; h < d_hops; ++h) {
    int offset = 1 + h * block;
    out.cores.push_back({offset, offset + s, offset + s, offset + block});
    for (auto [u, v] : core_edges) edges.emplace_back(offset + u, offset + v);
    if (h == 0) {
      for (int z = 0; z < s; ++z) edges.emplace_back(0, offset + z);
    }
    int sampled = offset + s + static_cast<int>(rng.uniform_below(n_sz));
    out.rt.push_back(sampled);
    if (h + 1 < d_hops) {
      int next_offset = 1 + (h + 1) * block;
      for (int z = 0; z < s; ++z) edges.emplace_back(sampled, next_offset + z);
    }
  }
  out.graph = Graph(1 + d_hops * block, edges);
  return out;
}

}  // namespace wex
