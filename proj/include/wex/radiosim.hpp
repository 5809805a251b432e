#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wex/constructions.hpp"
#include "wex/graph.hpp"
#include "wex/rng.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

class ProtocolViolationError : public std::logic_error {
public:
  explicit ProtocolViolationError(const std::string& what) : std::logic_error(what) {}
};

// One synchronous round. A vertex receives iff it keeps silent and exactly
// one of its neighbors transmits; collisions look like silence.
struct RadioRoundState {
  VertexSet informed;
  VertexSet transmitting;
  VertexSet received;  // received_this_round
};

namespace detail {

// Vertices receiving under the collision rule (or plain flooding when
// collisions are disabled), given transmit flags.
inline std::vector<int> receivers(const Graph& g, const std::vector<char>& transmitting,
                                  bool collisions = true) {
  std::vector<int> counts(g.n(), 0);
  for (int u = 0; u < g.n(); ++u) {
    if (!transmitting[u]) continue;
    for (int v : g.neighbors(u)) ++counts[v];
  }
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v) {
    if (transmitting[v]) continue;
    if (collisions ? counts[v] == 1 : counts[v] >= 1) out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline RadioRoundState step(const Graph& g, const RadioRoundState& state,
                            const VertexSet& transmitters) {
  check_vertex_range(g, transmitters, "step");
  if (!transmitters.is_subset_of(state.informed))
    throw ProtocolViolationError("step: transmitter is not informed");
  std::vector<char> tx(g.n(), 0);
  for (int v : transmitters.ids()) tx[v] = 1;
  auto rec = detail::receivers(g, tx);
  RadioRoundState next;
  next.transmitting = transmitters;
  next.received = VertexSet(rec, g.n());
  next.informed = set_union(state.informed, next.received);
  return next;
}

struct BroadcastTrace {
  long long rounds = 0;                 // rounds until the target predicate
  std::vector<long long> per_hop;       // R^1..R^{D/2}, chain runs only
  std::vector<int> informed_history;    // informed count after each round
  bool completed = false;
  bool timeout = false;
  bool stalled = false;
};

struct DecayOptions {
  int phase_len = 0;        // 0: ceil(log2 n)
  long long round_cap = 0;  // 0: 64 * D * ceil(log2 n)
};

// Phased decay: in round i of a phase every informed vertex transmits with
// probability 2^-i. Protocols see only n, D, and their own informed bit;
// chain structure is used for measurement, never for decisions.
inline BroadcastTrace run_decay(const Graph& g, int source, std::uint64_t seed,
                                DecayOptions opts = {}, const ChainBuild* chain = nullptr) {
  int n = g.n();
  int phase_len = opts.phase_len;
  if (phase_len < 1) phase_len = std::max(1, static_cast<int>(std::ceil(std::log2(n))));
  long long cap = opts.round_cap;
  if (cap < 1) {
    int diam;
    if (chain) {
      diam = chain->diameter_claim;
    } else {
      try {
        diam = diameter(g);
      } catch (const std::domain_error&) {
        diam = n;  // disconnected: run to the cap and report a timeout
      }
    }
    cap = 64LL * std::max(1, diam) * std::max(1, static_cast<int>(std::ceil(std::log2(n))));
  }

  std::vector<char> informed(n, 0), tx(n, 0);
  std::vector<long long> first_informed(n, -1);
  informed.at(source) = 1;
  first_informed[source] = 0;
  int informed_count = 1;

  BroadcastTrace trace;
  Rng rng(seed);
  auto target_met = [&]() {
    return chain ? informed[chain->rt.back()] != 0 : informed_count == n;
  };
  long long round = 0;
  while (!target_met() && round < cap) {
    ++round;
    int phase_round = static_cast<int>((round - 1) % phase_len) + 1;
    double p = std::ldexp(1.0, -phase_round);
    std::fill(tx.begin(), tx.end(), 0);
    for (int v = 0; v < n; ++v)
      if (informed[v] && rng.bernoulli(p)) tx[v] = 1;
    for (int v : detail::receivers(g, tx)) {
      if (!informed[v]) {
        informed[v] = 1;
        first_informed[v] = round;
        ++informed_count;
      }
    }
    trace.informed_history.push_back(informed_count);
  }
  trace.rounds = round;
  trace.completed = target_met();
  trace.timeout = !trace.completed;
  if (chain && trace.completed) {
    for (size_t i = 1; i < chain->rt.size(); ++i)
      trace.per_hop.push_back(first_informed[chain->rt[i]] -
                              first_informed[chain->rt[i - 1]]);
  }
  return trace;
}

// Every informed vertex transmits every round. Deterministic, so a round
// with no new vertex is a fixed point; reported as a stall.
inline BroadcastTrace run_all_transmit(const Graph& g, const VertexSet& initial) {
  if (initial.empty()) throw std::invalid_argument("run_all_transmit: empty initial set");
  int n = g.n();
  std::vector<char> informed(n, 0);
  for (int v : initial.ids()) informed.at(v) = 1;
  int informed_count = initial.size();

  BroadcastTrace trace;
  long long round = 0;
  while (informed_count < n) {
    ++round;
    auto rec = detail::receivers(g, informed);
    int added = 0;
    for (int v : rec) {
      if (!informed[v]) {
        informed[v] = 1;
        ++added;
      }
    }
    informed_count += added;
    if (added == 0) {
      trace.stalled = true;
      --round;  // report the productive prefix
      break;
    }
    trace.informed_history.push_back(informed_count);
  }
  trace.rounds = round;
  trace.completed = informed_count == n;
  return trace;
}

inline BroadcastTrace run_all_transmit(const Graph& g, int source) {
  return run_all_transmit(g, VertexSet({source}, g.n()));
}

// Collision-free flood baseline: completes in exactly eccentricity(source).
inline BroadcastTrace run_flood(const Graph& g, int source) {
  int n = g.n();
  std::vector<char> informed(n, 0);
  informed.at(source) = 1;
  int informed_count = 1;
  BroadcastTrace trace;
  while (informed_count < n) {
    ++trace.rounds;
    auto rec = detail::receivers(g, informed, /*collisions=*/false);
    if (rec.empty()) {
      trace.stalled = true;  // disconnected
      break;
    }
    for (int v : rec) informed[v] = 1;
    informed_count += static_cast<int>(rec.size());
    trace.informed_history.push_back(informed_count);
  }
  trace.completed = informed_count == n;
  return trace;
}

// ---------------------------------------------------------------------------
// Exact adversary bound for the rt-attached core graph: minimum number of
// rounds, over all transmission schedules, to inform a (2i/log 2s)-fraction
// of N. Round one is forced (only rt holds the message and informs all of
// S); afterwards any T within S yields the new vertices Gamma^1_S(T), so the
// minimum is 1 + the fewest unique-cover sets whose union meets the target.
// N-side transmitters never affect N and are excluded, per the topology.
// ---------------------------------------------------------------------------

inline int min_rounds_fraction(const CoreBuild& core, int i) {
  const int s = core.spec.s;
  if (s > 8) throw SizeCapError("min_rounds_fraction: s exceeds exhaustive cap");
  if (i < 0) throw std::domain_error("min_rounds_fraction: negative fraction index");
  const int n_side = core.spec.n_side_size();
  const long long target = 2LL * s * i;  // (2i / log 2s) * |N|
  if (target > n_side)
    throw std::domain_error("min_rounds_fraction: fraction index exceeds (log 2s)/2");
  if (target == 0) return 1;

  // distinct unique-cover masks over N for every transmitter set T in S
  const Graph& g = core.graph;
  std::vector<std::uint64_t> n_of_s(s, 0);  // leaf -> its N neighbors as bits
  for (int z = 0; z < s; ++z)
    for (int v : g.neighbors(z)) n_of_s[z] |= std::uint64_t{1} << (v - s);
  std::vector<std::uint64_t> masks;
  for (std::uint32_t t = 1; t < (1u << s); ++t) {
    std::uint64_t once = 0, twice = 0;
    for (std::uint32_t rest = t; rest; rest &= rest - 1) {
      std::uint64_t nb = n_of_s[std::countr_zero(rest)];
      twice |= once & nb;
      once |= nb;
    }
    masks.push_back(once & ~twice);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // drop dominated masks; a subset of another mask never helps a union
  std::vector<std::uint64_t> maximal;
  for (std::uint64_t a : masks) {
    bool dominated = false;
    for (std::uint64_t b : masks)
      if (a != b && (a & ~b) == 0) { dominated = true; break; }
    if (!dominated) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });

  // iterative deepening over the number of cover rounds
  for (int t = 1; t <= s; ++t) {
    auto dfs = [&](auto&& self, std::uint64_t covered, size_t from, int left) -> bool {
      if (std::popcount(covered) >= target) return true;
      if (left == 0) return false;
      for (size_t idx = from; idx < maximal.size(); ++idx) {
        std::uint64_t gain = maximal[idx] & ~covered;
        // masks are popcount-sorted, so the first gain bounds the rest
        if (std::popcount(covered) + static_cast<long long>(left) * std::popcount(maximal[idx]) <
            target)
          return false;
        if (gain == 0) continue;
        if (self(self, covered | maximal[idx], idx + 1, left - 1)) return true;
      }
      return false;
    };
    if (dfs(dfs, 0, 0, t)) return 1 + t;
  }
  throw std::logic_error("min_rounds_fraction: cover search exhausted");  // unreachable
}

// ---------------------------------------------------------------------------
// Lower-bound experiment: fresh chain per seed, protocol run, per-hop stats.
// ---------------------------------------------------------------------------

enum class Protocol { Decay, AllTransmit };

struct ExperimentRow {
  std::uint64_t seed = 0;
  long long rounds = 0;
  std::vector<long long> per_hop;
  bool timeout = false;
};

struct ExperimentTable {
  int s = 0;
  int d_hops = 0;
  Protocol protocol = Protocol::Decay;
  std::vector<ExperimentRow> rows;

  double mean_rounds() const {
    double total = 0;
    for (const auto& r : rows) total += static_cast<double>(r.rounds);
    return rows.empty() ? 0 : total / rows.size();
  }
  double mean_per_hop() const {
    double total = 0;
    long long count = 0;
    for (const auto& r : rows)
      for (long long h : r.per_hop) { total += static_cast<double>(h); ++count; }
    return count == 0 ? 0 : total / count;
  }
  long long min_rounds() const {
    if (rows.empty()) return 0;
    long long best = rows.front().rounds;
    for (const auto& r : rows) best = std::min(best, r.rounds);
    return best;
  }
  long long median_rounds() const {
    if (rows.empty()) return 0;
    std::vector<long long> v;
    for (const auto& r : rows) v.push_back(r.rounds);
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  }
};

inline ExperimentRow run_chain_protocol(int s, int d_hops, Protocol protocol,
                                        std::uint64_t seed) {
  ChainBuild chain = build_broadcast_chain(s, d_hops, seed);
  ExperimentRow row;
  row.seed = seed;
  BroadcastTrace trace;
  if (protocol == Protocol::Decay) {
    trace = run_decay(chain.graph, 0, derive_seed(seed, 0xdeca1), {}, &chain);
  } else {
    trace = run_all_transmit(chain.graph, 0);
    trace.timeout = trace.stalled || !trace.completed;
  }
  row.rounds = trace.rounds;
  row.per_hop = trace.per_hop;
  row.timeout = trace.timeout;
  return row;
}

inline ExperimentTable experiment_lower_bound(int s, int d_hops, Protocol protocol,
                                              const std::vector<std::uint64_t>& seeds) {
  ExperimentTable table;
  table.s = s;
  table.d_hops = d_hops;
  table.protocol = protocol;
  for (std::uint64_t seed : seeds)
    table.rows.push_back(run_chain_protocol(s, d_hops, protocol, seed));
  return table;
}

}  // namespace wex
