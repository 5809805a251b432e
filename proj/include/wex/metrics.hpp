#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wex/graph.hpp"
#include "wex/ratio.hpp"
#include "wex/rng.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

struct ExpansionResult {
  Ratio value;
  VertexSet witness;
};

struct WirelessResult {
  Ratio value;
  VertexSet witness_s;
  VertexSet witness_sprime;
};

// (alpha, beta, beta_u, beta_w) with the witness sets attaining each
// optimum. A single alpha parameterizes all three measures.
struct ExpansionReport {
  Ratio alpha;
  Ratio beta;
  Ratio beta_u;
  Ratio beta_w;
  VertexSet witness_beta;
  VertexSet witness_beta_u;
  VertexSet witness_beta_w_s;
  VertexSet witness_beta_w_sprime;
};

namespace detail {

struct EnumSpace {
  std::vector<int> candidates;             // candidate index -> vertex id
  std::vector<std::uint32_t> cand_mask;    // per vertex: adjacent candidate indices
  std::vector<int> cand_index;             // vertex id -> candidate index or -1
  int max_size;                            // floor(alpha * |candidates|)
};

inline EnumSpace make_space(const Graph& g, Ratio alpha,
                            const std::optional<VertexSet>& candidates, int cap,
                            const char* op) {
  EnumSpace sp;
  if (candidates) {
    check_vertex_range(g, *candidates, op);
    sp.candidates = candidates->ids();
  } else {
    sp.candidates.resize(g.n());
    for (int v = 0; v < g.n(); ++v) sp.candidates[v] = v;
  }
  int c = static_cast<int>(sp.candidates.size());
  if (c > cap || c > 30)
    throw SizeCapError(std::string(op) + ": candidate count exceeds cap");
  if (alpha <= Ratio(0, 1) || alpha > Ratio(1, 1))
    throw std::domain_error(std::string(op) + ": alpha must be in (0, 1]");
  sp.max_size = static_cast<int>((alpha * Ratio::of(c)).floor());
  if (sp.max_size < 1)
    throw std::domain_error(std::string(op) + ": alpha admits no nonempty set");
  sp.cand_index.assign(g.n(), -1);
  for (int i = 0; i < c; ++i) sp.cand_index[sp.candidates[i]] = i;
  sp.cand_mask.assign(g.n(), 0);
  for (int i = 0; i < c; ++i)
    for (int v : g.neighbors(sp.candidates[i]))
      sp.cand_mask[v] |= std::uint32_t{1} << i;
  return sp;
}

inline std::vector<int> mask_to_ids(std::uint32_t mask, const std::vector<int>& candidates) {
  std::vector<int> ids;
  for (std::uint32_t rest = mask; rest; rest &= rest - 1)
    ids.push_back(candidates[std::countr_zero(rest)]);
  return ids;
}

inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Shared min-of-ratio scan over admissible candidate subsets.
template <typename CountFn>
ExpansionResult min_ratio_scan(const Graph& g, const EnumSpace& sp, CountFn count_for) {
  int c = static_cast<int>(sp.candidates.size());
  bool have = false;
  Ratio best(0, 1);
  std::vector<int> best_ids;
  std::uint32_t full = (1u << c) - 1;
  for (std::uint32_t m = 1; m <= full; ++m) {
    int k = std::popcount(m);
    if (k > sp.max_size) continue;
    Ratio value(count_for(m), k);
    if (!have || value < best) {
      have = true;
      best = value;
      best_ids = mask_to_ids(m, sp.candidates);
    } else if (value == best) {
      auto ids = mask_to_ids(m, sp.candidates);
      if (lex_less(ids, best_ids)) best_ids = std::move(ids);
    }
  }
  return {best, VertexSet(best_ids, g.n())};
}

}  // namespace detail

// beta(G) = min |Gamma^-(S)|/|S| over nonempty S with |S| <= floor(alpha*|C|),
// C the candidate set (whole vertex set by default). Ties break to the
// lexicographically smallest witness.
inline ExpansionResult ordinary_expansion(const Graph& g, Ratio alpha,
                                          std::optional<VertexSet> candidates = std::nullopt,
                                          int cap = kEnumerationCap) {
  auto sp = detail::make_space(g, alpha, candidates, cap, "ordinary_expansion");
  return detail::min_ratio_scan(g, sp, [&](std::uint32_t m) {
    long long count = 0;
    for (int v = 0; v < g.n(); ++v) {
      int idx = sp.cand_index[v];
      if (idx >= 0 && (m >> idx & 1)) continue;  // v in S
      if (sp.cand_mask[v] & m) ++count;
    }
    return count;
  });
}

// beta_u(G) = min |Gamma^1(S)|/|S| over the same family.
inline ExpansionResult unique_expansion(const Graph& g, Ratio alpha,
                                        std::optional<VertexSet> candidates = std::nullopt,
                                        int cap = kEnumerationCap) {
  auto sp = detail::make_space(g, alpha, candidates, cap, "unique_expansion");
  return detail::min_ratio_scan(g, sp, [&](std::uint32_t m) {
    long long count = 0;
    for (int v = 0; v < g.n(); ++v) {
      int idx = sp.cand_index[v];
      if (idx >= 0 && (m >> idx & 1)) continue;
      if (std::popcount(sp.cand_mask[v] & m) == 1) ++count;
    }
    return count;
  });
}

// Inner max over S' for a fixed S given per-vertex masks restricted to S.
// Returns (count, sprime submask).
inline std::pair<long long, std::uint32_t> best_unique_cover(
    const std::vector<std::uint32_t>& outside_masks, std::uint32_t full) {
  long long best = -1;
  std::uint32_t best_sub = 0;
  std::uint32_t sub = 0;
  do {  // submasks of full in ascending order; first maximizer wins
    long long count = 0;
    for (std::uint32_t cm : outside_masks)
      if (std::popcount(cm & sub) == 1) ++count;
    if (count > best) {
      best = count;
      best_sub = sub;
    }
    sub = (sub - full) & full;
  } while (sub != 0);
  return {best, best_sub};
}

// beta_w(G) = min over S of max over S' subset of S of |Gamma^1_S(S')|/|S|.
inline WirelessResult wireless_expansion(const Graph& g, Ratio alpha,
                                         std::optional<VertexSet> candidates = std::nullopt,
                                         int cap = kWirelessCap) {
  auto sp = detail::make_space(g, alpha, candidates, cap, "wireless_expansion");
  int c = static_cast<int>(sp.candidates.size());
  bool have = false;
  Ratio best(0, 1);
  std::vector<int> best_s, best_sprime;
  std::vector<std::uint32_t> outside;
  std::uint32_t full = (1u << c) - 1;
  for (std::uint32_t m = 1; m <= full; ++m) {
    int k = std::popcount(m);
    if (k > sp.max_size) continue;
    outside.clear();
    for (int v = 0; v < g.n(); ++v) {
      int idx = sp.cand_index[v];
      if (idx >= 0 && (m >> idx & 1)) continue;
      if (sp.cand_mask[v] & m) outside.push_back(sp.cand_mask[v] & m);
    }
    auto [count, sub] = best_unique_cover(outside, m);
    Ratio value(count, k);
    bool better = !have || value < best;
    bool tie = have && value == best;
    if (better || tie) {
      auto s_ids = detail::mask_to_ids(m, sp.candidates);
      if (tie && !detail::lex_less(s_ids, best_s)) continue;
      have = true;
      best = value;
      best_s = std::move(s_ids);
      best_sprime = detail::mask_to_ids(sub, sp.candidates);
    }
  }
  return {best, VertexSet(best_s, g.n()), VertexSet(best_sprime, g.n())};
}

// Restricted mode: evaluates one user-supplied S only (|S| <= 24).
// Returns max_{S'} |Gamma^1_S(S')| / |S| with the maximizing S'.
inline WirelessResult wireless_expansion_at(const Graph& g, const VertexSet& s) {
  check_vertex_range(g, s, "wireless_expansion_at");
  if (s.empty()) throw std::domain_error("wireless_expansion_at: empty S");
  if (s.size() > kRestrictedWirelessCap)
    throw SizeCapError("wireless_expansion_at: |S| exceeds restricted cap");
  const auto& members = s.ids();
  std::vector<int> index(g.n(), -1);
  for (int i = 0; i < s.size(); ++i) index[members[i]] = i;
  std::vector<std::uint32_t> outside;
  for (int v = 0; v < g.n(); ++v) {
    if (index[v] >= 0) continue;
    std::uint32_t cm = 0;
    for (int u : g.neighbors(v))
      if (index[u] >= 0) cm |= std::uint32_t{1} << index[u];
    if (cm) outside.push_back(cm);
  }
  std::uint32_t full = (s.size() == 32) ? 0xffffffffu : ((1u << s.size()) - 1);
  auto [count, sub] = best_unique_cover(outside, full);
  std::vector<int> sprime_ids;
  for (std::uint32_t rest = sub; rest; rest &= rest - 1)
    sprime_ids.push_back(members[std::countr_zero(rest)]);
  return {Ratio(count, s.size()), s, VertexSet(sprime_ids, g.n())};
}

inline ExpansionReport expansion_report(const Graph& g, Ratio alpha,
                                        int cap = kEnumerationCap,
                                        int wireless_cap = kWirelessCap) {
  ExpansionReport rep;
  rep.alpha = alpha;
  auto ord = ordinary_expansion(g, alpha, std::nullopt, cap);
  auto uni = unique_expansion(g, alpha, std::nullopt, cap);
  auto wir = wireless_expansion(g, alpha, std::nullopt, wireless_cap);
  rep.beta = ord.value;
  rep.witness_beta = ord.witness;
  rep.beta_u = uni.value;
  rep.witness_beta_u = uni.witness;
  rep.beta_w = wir.value;
  rep.witness_beta_w_s = wir.witness_s;
  rep.witness_beta_w_sprime = wir.witness_sprime;
  return rep;
}

struct SpectralEstimate {
  int d;
  double lambda2;
  double tolerance;  // achieved residual / off-diagonal bound
};

namespace detail {

// Cyclic Jacobi on the dense adjacency matrix; adequate for n <= 64.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double* off_out) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  double off = 0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    off = std::sqrt(2 * off);
    if (off < 1e-12) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-15) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  if (off_out) *off_out = off;
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace detail

// Second largest adjacency eigenvalue of a d-regular connected graph.
// Dense Jacobi eigensolve for n <= 64; shifted power iteration with
// deflation of the all-ones eigenvector above that.
inline SpectralEstimate lambda2(const Graph& g) {
  if (g.n() < 2) throw std::domain_error("lambda2: need at least 2 vertices");
  if (!g.is_regular()) throw std::domain_error("lambda2: graph is not regular");
  if (!g.is_connected()) throw std::domain_error("lambda2: graph is not connected");
  int n = g.n();
  int d = g.degree(0);
  if (n <= 64) {
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u)
      for (int v : g.neighbors(u)) a[static_cast<size_t>(u) * n + v] = 1.0;
    double off = 0;
    auto ev = detail::jacobi_eigenvalues(std::move(a), n, &off);
    return {d, ev[1], off};
  }
  // Power iteration on A + dI restricted to the complement of span{1}:
  // the shift keeps the target eigenvalue largest in magnitude.
  std::vector<double> v(n), w(n);
  std::uint64_t state = 0x9d2c5680u;
  for (int i = 0; i < n; ++i)
    v[i] = static_cast<double>((splitmix64(state) >> 11)) * 0x1.0p-53 - 0.5;
  auto deflate = [&](std::vector<double>& x) {
    double mean = 0;
    for (double xi : x) mean += xi;
    mean /= n;
    for (double& xi : x) xi -= mean;
  };
  auto normalize = [&](std::vector<double>& x) {
    double norm = 0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    if (norm > 0)
      for (double& xi : x) xi /= norm;
  };
  deflate(v);
  normalize(v);
  double lambda = 0, residual = 1;
  for (int iter = 0; iter < 200000 && residual > 1e-10; ++iter) {
    for (int i = 0; i < n; ++i) {
      double acc = d * v[i];
      for (int u : g.neighbors(i)) acc += v[u];
      w[i] = acc;
    }
    deflate(w);
    normalize(w);
    std::swap(v, w);
    // Rayleigh quotient of A and residual ||Av - lambda v||.
    lambda = 0;
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int u : g.neighbors(i)) acc += v[u];
      w[i] = acc;
      lambda += v[i] * acc;
    }
    residual = 0;
    for (int i = 0; i < n; ++i) {
      double r = w[i] - lambda * v[i];
      residual += r * r;
    }
    residual = std::sqrt(residual);
  }
  return {d, lambda, residual};
}

// beta >= (1 - 1/d) * beta_u + (d - lambda) * (1 - alpha) / d, with
// alpha_u = alpha and exact beta, beta_u at that alpha.
inline bool check_spectral_relation(const Graph& g, Ratio alpha, int cap = kEnumerationCap) {
  auto se = lambda2(g);
  double beta = ordinary_expansion(g, alpha, std::nullopt, cap).value.to_double();
  double beta_u = unique_expansion(g, alpha, std::nullopt, cap).value.to_double();
  double d = se.d;
  double rhs = (1 - 1 / d) * beta_u + (d - se.lambda2) * (1 - alpha.to_double()) / d;
  return beta + 1e-6 >= rhs;
}

// beta_u >= 2*beta - Delta, checked in exact arithmetic.
inline bool check_unique_lower_bound(const Graph& g, Ratio alpha, int cap = kEnumerationCap) {
  Ratio beta = ordinary_expansion(g, alpha, std::nullopt, cap).value;
  Ratio beta_u = unique_expansion(g, alpha, std::nullopt, cap).value;
  return beta_u >= Ratio(2, 1) * beta - Ratio::of(g.max_degree());
}

}  // namespace wex
