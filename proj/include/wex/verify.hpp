#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wex/constructions.hpp"
#include "wex/generators.hpp"
#include "wex/graph.hpp"
#include "wex/metrics.hpp"
#include "wex/radiosim.hpp"
#include "wex/spokesman.hpp"

namespace wex {

// One named assertion with its observed values.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

class SuiteTimer {
public:
  SuiteTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

inline void add(SuiteReport& rep, const std::string& name, bool pass,
                const std::string& detail = "") {
  rep.checks.push_back({name, pass, detail});
}

inline void add_runtime(SuiteReport& rep, double seconds, double limit) {
  std::ostringstream os;
  os << seconds << "s, limit " << limit << "s";
  rep.checks.push_back({"runtime", seconds < limit, os.str()});
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

// Shared generator so the partition and selector suites see the very same
// seeded instances.
inline BipartiteInstance suite_instance(std::uint64_t seed, int index, int max_s = 12,
                                        int max_gamma = 24) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  int s = 2 + static_cast<int>(rng.uniform_below(max_s - 1));
  int gamma = 2 + static_cast<int>(rng.uniform_below(max_gamma - 1));
  double p = 0.1 + 0.7 * rng.uniform01();
  return random_bipartite_instance(s, gamma, p, rng);
}

inline Graph suite_graph(std::uint64_t seed, int index, int max_n) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
  int n = 4 + index % (max_n - 3);
  double p = 0.15 + 0.6 * rng.uniform01();
  return random_graph(n, p, rng);
}

inline bool meets(long long covered, double bound) {
  return covered >= static_cast<long long>(std::ceil(bound - 1e-9));
}

// Exact expected unique-cover of `bucket` under independent p-sampling of S,
// by summation over the full 2^|S| sample space.
inline double exact_expected_bucket_cover(const BipartiteInstance& inst,
                                          const std::vector<int>& bucket, double p) {
  int s = inst.s();
  const Graph& g = inst.graph();
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

}  // namespace detail

// Exact size and degree structure of the core graph.
inline SuiteReport verify_core(const std::vector<int>& sizes = {2, 4, 8, 16, 32}) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "core";
  for (int s : sizes) {
    auto [g, spec] = build_core(s);
    int log2s = spec.levels;
    detail::add(rep, "s=" + std::to_string(s) + " |N| = s log 2s",
                g.n() - s == s * log2s,
                std::to_string(g.n() - s) + " vs " + std::to_string(s * log2s));
    bool degrees_ok = true;
    for (int z = 0; z < s; ++z)
      if (g.degree(z) != 2 * s - 1) degrees_ok = false;
    detail::add(rep, "s=" + std::to_string(s) + " S-degree = 2s-1", degrees_ok);
    int max_n = 0;
    long long sum_n = 0;
    for (int v = s; v < g.n(); ++v) {
      max_n = std::max(max_n, g.degree(v));
      sum_n += g.degree(v);
    }
    detail::add(rep, "s=" + std::to_string(s) + " max N-degree = s", max_n == s);
    detail::add(rep, "s=" + std::to_string(s) + " avg N-degree <= 2s/log 2s",
                Ratio(sum_n, g.n() - s) <= Ratio(2 * s, log2s),
                Ratio(sum_n, g.n() - s).str() + " vs " + Ratio(2 * s, log2s).str());
  }
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 1.0);
  return rep;
}

// Expansion, wireless cap, and per-node coverage cap of the core graph,
// by brute force over every transmitter subset.
inline SuiteReport verify_core_wireless(const std::vector<int>& sizes = {2, 4, 8}) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "core-wireless";
  for (int s : sizes) {
    auto [g, spec] = build_core(s);
    int levels = spec.levels;
    std::vector<std::uint64_t> leaf_mask(s, 0);
    for (int z = 0; z < s; ++z)
      for (int v : g.neighbors(z)) leaf_mask[z] |= std::uint64_t{1} << (v - s);
    bool expansion_ok = true, cap_ok = true, node_ok = true;
    long long max_cover = 0;
    for (std::uint32_t m = 1; m < (1u << s); ++m) {
      std::uint64_t once = 0, twice = 0;
      int k = std::popcount(m);
      for (std::uint32_t rest = m; rest; rest &= rest - 1) {
        std::uint64_t nb = leaf_mask[std::countr_zero(rest)];
        twice |= once & nb;
        once |= nb;
      }
      if (std::popcount(once) < levels * k) expansion_ok = false;
      std::uint64_t uniq = once & ~twice;
      long long cover = std::popcount(uniq);
      max_cover = std::max(max_cover, cover);
      if (cover > 2 * s) cap_ok = false;
      for (int level = 0; level < levels && node_ok; ++level) {
        int inverse = levels - 1 - level;
        long long cap = (2LL << inverse) - 1;
        for (int node = 0; node < (1 << level); ++node) {
          // subtree-owned N bits of (level, node)
          std::uint64_t sub = 0;
          for (int l = level; l < levels; ++l) {
            int lo = node << (l - level), hi = (node + 1) << (l - level);
            for (int j = lo; j < hi; ++j) {
              auto [first, last] = spec.node_range(l, j);
              for (int v = first; v < last; ++v) sub |= std::uint64_t{1} << (v - s);
            }
          }
          if (std::popcount(uniq & sub) > cap) node_ok = false;
        }
      }
    }
    std::string tag = "s=" + std::to_string(s) + " ";
    detail::add(rep, tag + "|Gamma(S')| >= log(2s)|S'| for all S'", expansion_ok);
    detail::add(rep, tag + "max |Gamma1_S(S')| <= 2s", cap_ok,
                std::to_string(max_cover) + " vs " + std::to_string(2 * s));
    detail::add(rep, tag + "per-node cap 2^{j+1}-1", node_ok);
  }
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 10.0);
  return rep;
}

// beta >= beta_w >= beta_u and beta_u >= 2 beta - Delta on seeded
// random graphs.
inline SuiteReport verify_relations(int max_n = 14, int graphs = 200,
                                    std::uint64_t seed = 7, Ratio alpha = Ratio(1, 2),
                                    int jobs = 1) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "relations";
  std::vector<char> chain_ok(graphs, 0), bound_ok(graphs, 0);
  detail::parallel_for(graphs, jobs, [&](int i) {
    Graph g = detail::suite_graph(seed, i, max_n);
    auto report = expansion_report(g, alpha, kEnumerationCap, kWirelessCap);
    chain_ok[i] = report.beta >= report.beta_w && report.beta_w >= report.beta_u;
    bound_ok[i] =
        report.beta_u >= Ratio(2, 1) * report.beta - Ratio::of(g.max_degree());
  });
  int chain_fail = 0, bound_fail = 0;
  for (int i = 0; i < graphs; ++i) {
    if (!chain_ok[i]) ++chain_fail;
    if (!bound_ok[i]) ++bound_fail;
  }
  detail::add(rep, "beta >= beta_w >= beta_u on " + std::to_string(graphs) + " graphs",
              chain_fail == 0, std::to_string(chain_fail) + " violations");
  detail::add(rep, "beta_u >= 2 beta - Delta", bound_fail == 0,
              std::to_string(bound_fail) + " violations");
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 60.0);
  return rep;
}

// Tightness of the bad-unique construction plus its wireless floor.
inline SuiteReport verify_badunique() {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "badunique";
  struct Case {
    int delta, beta, s;
  };
  for (auto [delta, beta, s] : {Case{4, 2, 4}, Case{4, 3, 5}, Case{6, 4, 4}}) {
    auto built = build_bad_unique(delta, beta, s);
    VertexSet sside = VertexSet::prefix(s, built.graph.n());
    auto bu = unique_expansion(built.graph, Ratio(1, 1), sside);
    std::string tag = "(" + std::to_string(delta) + "," + std::to_string(beta) + "," +
                      std::to_string(s) + ") ";
    detail::add(rep, tag + "S-side beta_u = 2 beta - Delta",
                bu.value == Ratio(built.expected_beta_u, 1),
                bu.value.str() + " vs " + std::to_string(built.expected_beta_u));
    auto wir = wireless_expansion_at(built.graph, sside);
    detail::add(rep, tag + "wireless at S >= max{2b-D, D/2}",
                wir.value >= Ratio(built.wireless_floor, 1),
                wir.value.str() + " vs " + std::to_string(built.wireless_floor));
  }
  rep.seconds = timer.seconds();
  return rep;
}

// The spectral relation on three fixed regular graphs.
inline SuiteReport verify_spectral() {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "spectral";
  struct Case {
    const char* name;
    Graph g;
    Ratio alpha;
    double expected_lambda2;
  };
  Case cases[] = {
      {"K4", complete_graph(4), Ratio(1, 4), -1.0},
      {"C6", cycle_graph(6), Ratio(1, 3), 1.0},
      {"Petersen", petersen_graph(), Ratio(3, 10), 1.0},
  };
  for (auto& c : cases) {
    auto se = lambda2(c.g);
    detail::add(rep, std::string(c.name) + " lambda2 matches oracle to 1e-6",
                std::abs(se.lambda2 - c.expected_lambda2) < 1e-6,
                std::to_string(se.lambda2));
    detail::add(rep, std::string(c.name) + " spectral relation",
                check_spectral_relation(c.g, c.alpha));
  }
  rep.seconds = timer.seconds();
  return rep;
}

// Partition conditions P1-P4 on seeded bipartite instances.
inline SuiteReport verify_partition(int instances = 1000, std::uint64_t seed = 6,
                                    int jobs = 1) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "partition";
  std::vector<char> ok(instances, 0);
  detail::parallel_for(instances, jobs, [&](int i) {
    auto inst = detail::suite_instance(seed, i);
    auto st = partition(inst);
    const Graph& g = inst.graph();
    bool pass = true;
    for (int v : st.n_uni.ids()) {
      int hits = 0;
      for (int u : g.neighbors(v))
        if (st.s_uni.contains(u)) ++hits;
      if (hits != 1) pass = false;
    }
    for (int v : st.n_tmp.ids()) {
      int tmp_hits = 0, uni_hits = 0;
      for (int u : g.neighbors(v)) {
        if (st.s_tmp.contains(u)) ++tmp_hits;
        if (st.s_uni.contains(u)) ++uni_hits;
      }
      if (tmp_hits < 1 || uni_hits != 0) pass = false;
    }
    if (st.n_uni.size() < st.n_many.size()) pass = false;
    if (!st.n_tmp.empty() && st.e_tmp > 2 * st.e_uni) pass = false;
    ok[i] = pass;
  });
  int fails = 0;
  for (char c : ok)
    if (!c) ++fails;
  detail::add(rep, "P1-P4 on " + std::to_string(instances) + " instances", fails == 0,
              std::to_string(fails) + " violations");
  rep.seconds = timer.seconds();
  return rep;
}

// Selector guarantees and oracle domination on the same instance family
// as the partition suite.
inline SuiteReport verify_selectors(int instances = 1000, std::uint64_t seed = 6,
                                    int jobs = 1) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "selectors";
  std::vector<char> naive_ok(instances, 0), avg_ok(instances, 0), tight_ok(instances, 0),
      oracle_ok(instances, 0);
  detail::parallel_for(instances, jobs, [&](int i) {
    auto inst = detail::suite_instance(seed, i);
    double gamma = inst.gamma();
    double delta_n = inst.delta_n().to_double();
    auto naive = select_naive(inst);
    auto avg = select_avgdeg(inst);
    auto tight = select_tight(inst);
    naive_ok[i] = detail::meets(naive.covered, gamma / inst.max_deg_s());
    avg_ok[i] = detail::meets(avg.covered, gamma / (8 * delta_n));
    tight_ok[i] = detail::meets(tight.covered, gamma / (9 * std::log2(2 * delta_n)));
    auto oracle = oracle_exact(inst);
    std::uint64_t sub = derive_seed(seed, i);
    SpokesmanResult all[] = {naive,
                             avg,
                             tight,
                             select_bucket(inst),
                             select_randomized(inst, 20, sub),
                             select_smallbeta(inst, 20, sub),
                             select_best(inst, sub, 20)};
    bool dominated = true;
    for (const auto& r : all)
      if (r.covered > oracle.covered) dominated = false;
    oracle_ok[i] = dominated;
  });
  auto count_fails = [&](const std::vector<char>& v) {
    int fails = 0;
    for (char c : v)
      if (!c) ++fails;
    return fails;
  };
  detail::add(rep, "naive >= gamma/Delta_S", count_fails(naive_ok) == 0,
              std::to_string(count_fails(naive_ok)) + " violations");
  detail::add(rep, "avgdeg >= gamma/(8 delta_N)", count_fails(avg_ok) == 0,
              std::to_string(count_fails(avg_ok)) + " violations");
  detail::add(rep, "tight >= gamma/(9 log 2delta_N)", count_fails(tight_ok) == 0,
              std::to_string(count_fails(tight_ok)) + " violations");
  detail::add(rep, "every selector <= oracle", count_fails(oracle_ok) == 0,
              std::to_string(count_fails(oracle_ok)) + " violations");
  rep.seconds = timer.seconds();
  return rep;
}

// Exact sample-space expectation of the randomized selector's chosen
// bucket, against the e^-3 bound.
inline SuiteReport verify_rand_expectation(int instances = 20, std::uint64_t seed = 8) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "rand-expect";
  int fails = 0;
  double worst_margin = 1e18;
  for (int i = 0; i < instances; ++i) {
    auto inst = detail::suite_instance(seed, i, 12, 24);
    auto plan = randomized_plan(inst);
    double expectation = detail::exact_expected_bucket_cover(inst, plan.bucket, plan.p);
    double bound = std::exp(-3.0) * static_cast<double>(plan.bucket.size());
    worst_margin = std::min(worst_margin, expectation - bound);
    if (expectation < bound - 1e-9) ++fails;
  }
  std::ostringstream os;
  os << fails << " violations, worst margin " << worst_margin;
  detail::add(rep, "exact E[cover of N_j] >= e^-3 |N_j| on " +
                       std::to_string(instances) + " instances",
              fails == 0, os.str());
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 120.0);
  return rep;
}

// Exact adversary round floor on the root-attached core graph.
inline SuiteReport verify_corollary_detcor(const std::vector<int>& sizes = {4, 8}) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "corollary-detcor";
  for (int s : sizes) {
    auto core = build_core(s);
    int max_i = core.spec.levels / 2;
    for (int i = 0; i <= max_i; ++i) {
      int rounds = min_rounds_fraction(core, i);
      detail::add(rep,
                  "s=" + std::to_string(s) + " i=" + std::to_string(i) +
                      " min rounds >= 1+i",
                  rounds >= 1 + i, std::to_string(rounds) + " vs " + std::to_string(1 + i));
    }
  }
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 60.0);
  return rep;
}

// Decay-protocol scaling across chain lengths.
inline SuiteReport verify_broadcast_scaling(int s = 8, std::vector<int> hops = {2, 4, 8},
                                            int seed_count = 100, int jobs = 1) {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "scaling";
  std::vector<double> means;
  bool causality_ok = true, complete_ok = true;
  for (int d_hops : hops) {
    std::vector<ExperimentRow> rows(seed_count);
    detail::parallel_for(seed_count, jobs, [&](int i) {
      rows[i] = run_chain_protocol(s, d_hops, Protocol::Decay,
                                   static_cast<std::uint64_t>(i));
    });
    double total = 0, hop_total = 0;
    long long hop_count = 0;
    for (const auto& row : rows) {
      if (row.timeout) complete_ok = false;
      if (row.rounds < d_hops) causality_ok = false;
      total += static_cast<double>(row.rounds);
      for (long long h : row.per_hop) {
        hop_total += static_cast<double>(h);
        ++hop_count;
      }
    }
    means.push_back(total / seed_count);
    double mean_hop = hop_count ? hop_total / hop_count : 0;
    detail::add(rep,
                "d_hops=" + std::to_string(d_hops) + " mean R^i >= 1.25",
                mean_hop >= 1.25, std::to_string(mean_hop));
  }
  detail::add(rep, "no timeouts", complete_ok);
  detail::add(rep, "R >= d_hops always", causality_ok);
  bool nondecreasing = true;
  for (size_t i = 1; i < means.size(); ++i)
    if (means[i] < means[i - 1]) nondecreasing = false;
  detail::add(rep, "mean R nondecreasing in d_hops", nondecreasing);
  // least-squares slope of mean R against d_hops
  double xbar = 0, ybar = 0;
  for (size_t i = 0; i < hops.size(); ++i) {
    xbar += hops[i];
    ybar += means[i];
  }
  xbar /= hops.size();
  ybar /= means.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < hops.size(); ++i) {
    num += (hops[i] - xbar) * (means[i] - ybar);
    den += (hops[i] - xbar) * (hops[i] - xbar);
  }
  double slope = num / den;
  detail::add(rep, "least-squares slope >= 1.0", slope >= 1.0, std::to_string(slope));
  rep.seconds = timer.seconds();
  detail::add_runtime(rep, rep.seconds, 60.0);
  return rep;
}

// Structural checks of the worst-case plug on K_12.
inline SuiteReport verify_plug() {
  detail::SuiteTimer timer;
  SuiteReport rep;
  rep.name = "plug";
  Graph base = complete_graph(12);
  Ratio alpha(3, 4);
  Ratio beta = ordinary_expansion(base, alpha).value;
  detail::add(rep, "K12 base beta at alpha=3/4 is 1/3", beta == Ratio(1, 3), beta.str());
  auto params = make_plug_params(base.max_degree(), beta.to_double(), 0.25);
  auto plug = plug_worst_case(base, alpha, beta, params);
  detail::add(rep, "tilde n <= 1.25 * 12", plug.tilde_n <= 1.25 * 12 + 1e-9,
              std::to_string(plug.tilde_n));
  detail::add(rep, "tilde Delta <= 1.25 * 11", plug.tilde_delta <= 1.25 * 11 + 1e-9,
              std::to_string(plug.tilde_delta));
  auto wir = wireless_expansion_at(plug.graph, plug.s_star);
  double covered = wir.value.to_double() * plug.s_star.size();
  detail::add(rep, "wireless cap defined", plug.core.wireless_cap >= 0,
              std::to_string(plug.core.wireless_cap));
  detail::add(rep, "restricted wireless at S* within the cap",
              covered <= plug.core.wireless_cap + 1e-9,
              std::to_string(covered) + " vs " + std::to_string(plug.core.wireless_cap));
  // ordinary expansion of the plugged graph at alpha-tilde stays >= beta-tilde
  long long max_size = static_cast<long long>(plug.alpha_tilde * plug.graph.n());
  auto tilde = ordinary_expansion(plug.graph, Ratio(max_size, plug.graph.n()));
  detail::add(rep, "expansion at alpha-tilde >= beta-tilde",
              tilde.value.to_double() >= plug.beta_tilde - 1e-12,
              tilde.value.str() + " vs " + std::to_string(plug.beta_tilde));
  rep.seconds = timer.seconds();
  return rep;
}

}  // namespace wex
