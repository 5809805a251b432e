#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wex/bipartite.hpp"
#include "wex/graph.hpp"
#include "wex/ratio.hpp"
#include "wex/rng.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

inline constexpr double kBucketC = 3.59112;  // argmax of log2(c)/(2(1+c))
inline constexpr int kOracleCap = 20;

struct SpokesmanResult {
  VertexSet chosen;        // S' within S
  long long covered = 0;   // |Gamma^1_S(chosen)|, recomputed on the instance
  double certified_bound = 0;
  std::string algorithm;
  int trials_used = 0;
};

// Count of N-vertices with exactly one neighbor in `chosen`.
inline long long unique_cover_count(const BipartiteInstance& inst,
                                    const std::vector<int>& chosen) {
  std::vector<char> in(inst.s(), 0);
  for (int u : chosen) in.at(u) = 1;
  long long covered = 0;
  const Graph& g = inst.graph();
  for (int v = inst.s(); v < g.n(); ++v) {
    int hits = 0;
    for (int u : g.neighbors(v))
      if (in[u] && ++hits > 1) break;
    if (hits == 1) ++covered;
  }
  return covered;
}

namespace detail {

inline SpokesmanResult make_result(const BipartiteInstance& inst, std::vector<int> chosen,
                                   double bound, std::string algo, int trials = 0) {
  std::sort(chosen.begin(), chosen.end());
  SpokesmanResult r;
  r.covered = unique_cover_count(inst, chosen);
  r.chosen = VertexSet(std::move(chosen), inst.graph().n());
  r.certified_bound = bound;
  r.algorithm = std::move(algo);
  r.trials_used = trials;
  return r;
}

}  // namespace detail

// Ground truth by full enumeration; the problem itself is NP-hard, so the
// oracle is exponential in |S|. Lexicographically smallest maximizer.
inline SpokesmanResult oracle_exact(const BipartiteInstance& inst) {
  int s = inst.s();
  if (s > kOracleCap) throw SizeCapError("oracle_exact: |S| exceeds cap");
  const Graph& g = inst.graph();
  std::vector<std::uint32_t> n_masks;
  n_masks.reserve(inst.gamma());
  for (int v = s; v < g.n(); ++v) {
    std::uint32_t m = 0;
    for (int u : g.neighbors(v)) m |= std::uint32_t{1} << u;
    n_masks.push_back(m);
  }
  long long best = -1;
  std::vector<int> best_ids;
  std::uint32_t full = (s == 32) ? 0xffffffffu : ((1u << s) - 1);
  for (std::uint32_t m = 0;; ++m) {
    long long covered = 0;
    for (std::uint32_t nm : n_masks)
      if (std::popcount(nm & m) == 1) ++covered;
    if (covered > best) {
      best = covered;
      best_ids.clear();
      for (std::uint32_t rest = m; rest; rest &= rest - 1)
        best_ids.push_back(std::countr_zero(rest));
    } else if (covered == best) {
      std::vector<int> ids;
      for (std::uint32_t rest = m; rest; rest &= rest - 1)
        ids.push_back(std::countr_zero(rest));
      if (std::lexicographical_compare(ids.begin(), ids.end(),
                                       best_ids.begin(), best_ids.end()))
        best_ids = std::move(ids);
    }
    if (m == full) break;
  }
  return detail::make_result(inst, best_ids, static_cast<double>(best), "oracle");
}

// ---------------------------------------------------------------------------
// Randomized selector: restrict to degrees at most 2*delta_N, bucket by
// powers of two, sample the largest bucket's matching probability.
// ---------------------------------------------------------------------------

struct RandomizedPlan {
  int j = 0;                // bucket index, sampling probability 2^-j
  std::vector<int> bucket;  // vertex ids in N_j
  double p = 1;
};

inline RandomizedPlan randomized_plan(const BipartiteInstance& inst) {
  Ratio two_delta = Ratio(2, 1) * inst.delta_n();
  // buckets i = 0..floor(log2(2 delta_N)) cover every degree <= 2 delta_N
  int top = static_cast<int>(std::floor(std::log2(two_delta.to_double()) + 1e-12));
  std::vector<std::vector<int>> buckets(top + 1);
  const Graph& g = inst.graph();
  for (int v = inst.s(); v < g.n(); ++v) {
    long long deg = g.degree(v);
    if (Ratio::of(deg) > two_delta) continue;  // outside N'
    int i = 0;
    while ((2ll << i) <= deg) ++i;  // deg in [2^i, 2^{i+1})
    buckets.at(i).push_back(v);
  }
  RandomizedPlan plan;
  size_t best = 0;
  for (int i = 0; i <= top; ++i) {
    if (buckets[i].size() > best) {
      best = buckets[i].size();
      plan.j = i;
    }
  }
  plan.bucket = std::move(buckets[plan.j]);
  plan.p = std::ldexp(1.0, -plan.j);
  return plan;
}

inline SpokesmanResult select_randomized(const BipartiteInstance& inst, int trials,
                                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("select_randomized: trials must be >= 1");
  RandomizedPlan plan = randomized_plan(inst);
  long long best = -1;
  std::vector<int> best_ids;
  std::vector<int> sample;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    sample.clear();
    for (int u = 0; u < inst.s(); ++u)
      if (rng.bernoulli(plan.p)) sample.push_back(u);
    long long covered = unique_cover_count(inst, sample);
    if (covered > best) {
      best = covered;
      best_ids = sample;
    }
  }
  double bound = std::exp(-3.0) * static_cast<double>(plan.bucket.size());
  return detail::make_result(inst, best_ids, bound, "rand", trials);
}

// ---------------------------------------------------------------------------
// beta < 1 reduction: filter S to degree <= 2*delta_S, greedily shrink to
// S'' with |S''| <= |N'|, then run the randomized selector on the induced
// instance where the expansion is at least 1.
// ---------------------------------------------------------------------------

inline SpokesmanResult select_smallbeta(const BipartiteInstance& inst, int trials,
                                        std::uint64_t seed) {
  const Graph& g = inst.graph();
  Ratio two_delta_s = Ratio(2, 1) * inst.delta_s();
  std::vector<int> sprime;
  for (int u = 0; u < inst.s(); ++u)
    if (Ratio::of(g.degree(u)) <= two_delta_s) sprime.push_back(u);

  std::vector<char> in_nprime(g.n(), 0);
  for (int u : sprime)
    for (int v : g.neighbors(u)) in_nprime[v] = 1;

  // add u only if it covers a new vertex of N'
  std::vector<char> covered_n(g.n(), 0);
  std::vector<int> s2;
  for (int u : sprime) {
    bool is_new = false;
    for (int v : g.neighbors(u))
      if (in_nprime[v] && !covered_n[v]) is_new = true;
    if (!is_new) continue;
    s2.push_back(u);
    for (int v : g.neighbors(u)) covered_n[v] = 1;
  }

  // induced instance on (S'', N')
  std::vector<int> n_ids;
  for (int v = inst.s(); v < g.n(); ++v)
    if (in_nprime[v]) n_ids.push_back(v);
  std::vector<int> s_index(g.n(), -1), n_index(g.n(), -1);
  for (size_t i = 0; i < s2.size(); ++i) s_index[s2[i]] = static_cast<int>(i);
  for (size_t i = 0; i < n_ids.size(); ++i)
    n_index[n_ids[i]] = static_cast<int>(s2.size() + i);
  std::vector<std::pair<int, int>> edges;
  for (int u : s2)
    for (int v : g.neighbors(u))
      if (n_index[v] >= 0) edges.emplace_back(s_index[u], n_index[v]);
  BipartiteInstance induced(Graph(static_cast<int>(s2.size() + n_ids.size()), edges,
                                  static_cast<int>(s2.size())));
  SpokesmanResult inner = select_randomized(induced, trials, derive_seed(seed, 0x5b));
  std::vector<int> chosen;
  for (int idx : inner.chosen.ids()) chosen.push_back(s2[idx]);
  auto out = detail::make_result(inst, chosen, inner.certified_bound, "smallbeta", trials);
  return out;
}

// ---------------------------------------------------------------------------
// Naive selector: grow (S_uni, N_uni) from a minimum-degree N-vertex at a
// time; guarantees gamma / Delta_S covered.
// ---------------------------------------------------------------------------

inline SpokesmanResult select_naive(const BipartiteInstance& inst) {
  const Graph& g = inst.graph();
  enum { Tmp, Uni, Gone };
  std::vector<char> s_state(inst.s(), Tmp);
  std::vector<char> n_state(g.n(), Tmp);

  auto s_tmp_neighbors = [&](int v) {
    std::vector<int> out;
    for (int u : g.neighbors(v))
      if (s_state[u] == Tmp) out.push_back(u);
    return out;
  };

  while (true) {
    int v_pick = -1;
    size_t v_deg = 0;
    for (int v = inst.s(); v < g.n(); ++v) {
      if (n_state[v] != Tmp) continue;
      size_t d = s_tmp_neighbors(v).size();
      if (v_pick < 0 || d < v_deg) {
        v_pick = v;
        v_deg = d;
      }
    }
    if (v_pick < 0) break;
    auto gamma_v = s_tmp_neighbors(v_pick);
    assert(!gamma_v.empty());         // every N_tmp vertex keeps an S_tmp neighbor
    int w = gamma_v.front();          // lowest id; neighbor lists are sorted

    // Q'_v: N_tmp vertices whose S_tmp neighborhood equals Gamma(v, S_tmp);
    // they move to N_uni with w as their unique covered neighbor
    std::vector<char> in_gamma_v(inst.s(), 0);
    for (int u : gamma_v) in_gamma_v[u] = 1;
    for (int u : gamma_v) {
      for (int x : g.neighbors(u)) {
        if (n_state[x] != Tmp) continue;
        auto gx = s_tmp_neighbors(x);
        bool equal = gx.size() == gamma_v.size();
        for (int y : gx)
          if (!in_gamma_v[y]) { equal = false; break; }
        if (equal) {
          n_state[x] = Uni;
        } else if (g.adjacent(w, x)) {
          // neighbors of w with extra S_tmp neighbors would lose uniqueness later
          n_state[x] = Gone;
        }
      }
    }
    s_state[w] = Uni;
    for (int u : gamma_v)
      if (s_state[u] == Tmp) s_state[u] = Gone;
  }

  std::vector<int> chosen;
  for (int u = 0; u < inst.s(); ++u)
    if (s_state[u] == Uni) chosen.push_back(u);
  double bound = static_cast<double>(inst.gamma()) / inst.max_deg_s();
  return detail::make_result(inst, chosen, bound, "naive");
}

// ---------------------------------------------------------------------------
// Procedure Partition with conditions P1-P4.
// ---------------------------------------------------------------------------

struct PartitionState {
  VertexSet s_uni, s_tmp;
  VertexSet n_uni, n_many, n_tmp;
  long long e_uni = 0;  // edges from s_tmp into n_uni
  long long e_tmp = 0;  // edges from s_tmp into n_tmp
};

inline PartitionState partition(const BipartiteInstance& inst,
                                std::optional<std::vector<int>> s_pool = std::nullopt,
                                std::optional<std::vector<int>> n_pool = std::nullopt) {
  const Graph& g = inst.graph();
  enum { Out, Tmp, Uni, Many };
  std::vector<char> state(g.n(), Out);
  if (s_pool) {
    for (int u : *s_pool) state.at(u) = Tmp;
  } else {
    for (int u = 0; u < inst.s(); ++u) state[u] = Tmp;
  }
  if (n_pool) {
    for (int v : *n_pool) state.at(v) = Tmp;
  } else {
    for (int v = inst.s(); v < g.n(); ++v) state[v] = Tmp;
  }

  while (true) {
    int pick = -1;
    long long best_gain = 0;
    for (int u = 0; u < inst.s(); ++u) {
      if (state[u] != Tmp) continue;
      long long tmp_nb = 0, uni_nb = 0;
      for (int v : g.neighbors(u)) {
        if (state[v] == Tmp) ++tmp_nb;
        else if (state[v] == Uni) ++uni_nb;
      }
      long long gain = tmp_nb - 2 * uni_nb;
      if (gain > best_gain) {  // strict: ties keep the lowest id
        best_gain = gain;
        pick = u;
      }
    }
    if (pick < 0) break;
    state[pick] = Uni;
    for (int v : g.neighbors(pick)) {
      if (state[v] == Uni) state[v] = Many;
      else if (state[v] == Tmp) state[v] = Uni;
    }
  }

  PartitionState out;
  std::vector<int> s_uni, s_tmp, n_uni, n_many, n_tmp;
  for (int u = 0; u < inst.s(); ++u) {
    if (state[u] == Uni) s_uni.push_back(u);
    else if (state[u] == Tmp) s_tmp.push_back(u);
  }
  for (int v = inst.s(); v < g.n(); ++v) {
    if (state[v] == Uni) n_uni.push_back(v);
    else if (state[v] == Many) n_many.push_back(v);
    else if (state[v] == Tmp) n_tmp.push_back(v);
  }
  for (int u : s_tmp) {
    for (int v : g.neighbors(u)) {
      if (state[v] == Uni) ++out.e_uni;
      else if (state[v] == Tmp) ++out.e_tmp;
    }
  }
  int n = g.n();
  out.s_uni = VertexSet(s_uni, n);
  out.s_tmp = VertexSet(s_tmp, n);
  out.n_uni = VertexSet(n_uni, n);
  out.n_many = VertexSet(n_many, n);
  out.n_tmp = VertexSet(n_tmp, n);
  return out;
}

// Average-degree selector: run Partition on the low-degree half of N.
inline SpokesmanResult select_avgdeg(const BipartiteInstance& inst) {
  const Graph& g = inst.graph();
  Ratio two_delta = Ratio(2, 1) * inst.delta_n();
  std::vector<int> pool;
  for (int v = inst.s(); v < g.n(); ++v)
    if (Ratio::of(g.degree(v)) <= two_delta) pool.push_back(v);
  PartitionState st = partition(inst, std::nullopt, pool);
  double bound = inst.gamma() / (8.0 * inst.delta_n().to_double());
  return detail::make_result(inst, st.s_uni.ids(), bound, "avgdeg");
}

// Degree-bucket selector: Partition per bucket [c^{i-1}, c^i), best result.
// With `t` set, buckets only cover N^{t*delta} (degrees at most t*delta_N).
inline SpokesmanResult select_bucket(const BipartiteInstance& inst, double c = kBucketC,
                                     std::optional<double> t = std::nullopt) {
  if (!(c > 1)) throw std::invalid_argument("select_bucket: c must exceed 1");
  if (t && !(*t > 1)) throw std::invalid_argument("select_bucket: t must exceed 1");
  const Graph& g = inst.graph();
  double limit = t ? *t * inst.delta_n().to_double()
                   : static_cast<double>(inst.max_deg_n());
  std::vector<std::vector<int>> buckets;
  for (int v = inst.s(); v < g.n(); ++v) {
    int deg = g.degree(v);
    if (static_cast<double>(deg) > limit + 1e-12) continue;
    int i = static_cast<int>(std::floor(std::log(deg) / std::log(c) + 1e-12));
    if (static_cast<size_t>(i) >= buckets.size()) buckets.resize(i + 1);
    buckets[i].push_back(v);
  }
  long long best_covered = -1;
  std::vector<int> best_ids;
  for (const auto& bucket : buckets) {
    if (bucket.empty()) continue;
    PartitionState st = partition(inst, std::nullopt, bucket);
    long long covered = unique_cover_count(inst, st.s_uni.ids());
    if (covered > best_covered) {
      best_covered = covered;
      best_ids = st.s_uni.ids();
    }
  }
  // the partition guarantee holds per bucket, so the largest one certifies
  size_t max_bucket = 0;
  for (const auto& b : buckets) max_bucket = std::max(max_bucket, b.size());
  double bound = static_cast<double>(max_bucket) / (2 * (1 + c));
  return detail::make_result(inst, best_ids, bound, "bucket");
}

// ---------------------------------------------------------------------------
// Near-optimal selector: recursive Partition; recurse into (S_tmp, N_tmp)
// and keep whichever side covers more of the current sub-instance.
// ---------------------------------------------------------------------------

namespace detail {

inline long long cover_within(const Graph& g, const std::vector<int>& chosen,
                              const std::vector<int>& n_pool) {
  std::vector<char> in(g.n(), 0);
  for (int u : chosen) in[u] = 1;
  long long covered = 0;
  for (int v : n_pool) {
    int hits = 0;
    for (int u : g.neighbors(v))
      if (in[u] && ++hits > 1) break;
    if (hits == 1) ++covered;
  }
  return covered;
}

inline std::vector<int> tight_rec(const BipartiteInstance& inst, std::vector<int> s_pool,
                                  std::vector<int> n_pool, int depth_left) {
  PartitionState st = partition(inst, s_pool, n_pool);
  std::vector<int> cand = st.s_uni.ids();
  if (st.n_tmp.empty() || depth_left <= 0) return cand;
  std::vector<int> rec = tight_rec(inst, st.s_tmp.ids(), st.n_tmp.ids(), depth_left - 1);
  long long a = cover_within(inst.graph(), cand, n_pool);
  long long b = cover_within(inst.graph(), rec, n_pool);
  return b > a ? rec : cand;
}

}  // namespace detail

inline SpokesmanResult select_tight(const BipartiteInstance& inst) {
  std::vector<int> s_pool(inst.s());
  for (int u = 0; u < inst.s(); ++u) s_pool[u] = u;
  std::vector<int> n_pool(inst.gamma());
  for (int i = 0; i < inst.gamma(); ++i) n_pool[i] = inst.s() + i;
  // the recursion strictly shrinks N_tmp, so gamma levels always suffice
  auto chosen = detail::tight_rec(inst, s_pool, n_pool, inst.gamma());
  double delta = inst.delta_n().to_double();
  double gamma = inst.gamma();
  double bound = gamma / (9 * std::log2(2 * delta));
  if (delta >= 2)
    bound = std::max(bound, std::min(gamma / (9 * std::log2(delta)), gamma / 20));
  return detail::make_result(inst, chosen, bound, "tight");
}

// Portfolio: every deterministic selector plus the randomized one.
inline SpokesmanResult select_best(const BipartiteInstance& inst, std::uint64_t seed,
                                   int trials = 100) {
  std::vector<SpokesmanResult> results;
  results.push_back(select_naive(inst));
  results.push_back(select_avgdeg(inst));
  results.push_back(select_bucket(inst));
  results.push_back(select_tight(inst));
  results.push_back(select_randomized(inst, trials, derive_seed(seed, 1)));
  results.push_back(select_smallbeta(inst, trials, derive_seed(seed, 2)));
  size_t best = 0;
  double bound = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    bound = std::max(bound, results[i].certified_bound);
    if (results[i].covered > results[best].covered) best = i;
  }
  SpokesmanResult out = results[best];
  out.algorithm = "best(" + out.algorithm + ")";
  out.certified_bound = bound;
  out.trials_used = trials;
  return out;
}

}  // namespace wex
