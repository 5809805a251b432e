#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wex/constructions.hpp"
#include "wex/generators.hpp"
#include "wex/spokesman.hpp"

using wex::BipartiteInstance;
using wex::Graph;
using wex::Ratio;
using wex::VertexSet;

namespace {

BipartiteInstance k23() { return BipartiteInstance(oracle::complete_bipartite(2, 3)); }
BipartiteInstance matching(int pairs) {
  return BipartiteInstance(oracle::perfect_matching(pairs));
}
BipartiteInstance core_instance(int s) {
  return BipartiteInstance(wex::build_core(s).graph);
}

bool meets_bound(long long covered, double bound) {
  return covered >= static_cast<long long>(std::ceil(bound - 1e-9));
}

}  // namespace

TEST_CASE("oracle on small instances") {
  auto r = wex::oracle_exact(k23());
  REQUIRE(r.covered == 3);
  REQUIRE(r.chosen == VertexSet({0}, 5));  // lexicographically smallest maximizer

  auto m = wex::oracle_exact(matching(5));
  REQUIRE(m.covered == 5);
  REQUIRE(m.chosen.size() == 5);

  // core graph: max unique cover is one root path, within the 2s cap
  auto c = wex::oracle_exact(core_instance(4));
  REQUIRE(c.covered == 7);
  REQUIRE(c.covered <= 8);

  REQUIRE_THROWS_AS(wex::oracle_exact(matching(21)), wex::SizeCapError);
}

TEST_CASE("randomized selector plan and forced cases") {
  auto plan_match = wex::randomized_plan(matching(6));
  REQUIRE(plan_match.j == 0);
  REQUIRE(plan_match.p == 1.0);
  auto r = wex::select_randomized(matching(6), 1, 999);
  REQUIRE(r.covered == 6);  // probability-1 sampling takes all of S
  REQUIRE(r.chosen.size() == 6);

  auto plan = wex::randomized_plan(k23());
  REQUIRE(plan.j == 1);
  REQUIRE(plan.bucket.size() == 3);
  auto rk = wex::select_randomized(k23(), 50, 7);
  REQUIRE(rk.covered == 3);  // some singleton shows up within 50 trials
  REQUIRE(meets_bound(rk.covered, rk.certified_bound));
}

TEST_CASE("randomized selector expectation is exact-checkable") {
  wex::Rng rng(515151);
  for (int trial = 0; trial < 10; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(9));
    int gamma = 2 + static_cast<int>(rng.uniform_below(16));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.15 + 0.5 * rng.uniform01(), rng);
    auto plan = wex::randomized_plan(inst);
    double expectation = oracle::exact_expected_bucket_cover(inst, plan.bucket, plan.p);
    REQUIRE(expectation >= std::exp(-3.0) * plan.bucket.size() - 1e-9);
  }
}

TEST_CASE("randomized selector reaches its bound on the core graph") {
  auto inst = core_instance(8);
  auto plan = wex::randomized_plan(inst);
  auto r = wex::select_randomized(inst, 200, 2024);
  REQUIRE(r.trials_used == 200);
  REQUIRE(meets_bound(r.covered, std::exp(-3.0) * plan.bucket.size()));
  REQUIRE(r.covered <= wex::oracle_exact(inst).covered);
}

TEST_CASE("small beta reduction") {
  // star with the center in N: S'' collapses to one leaf
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) edges.emplace_back(i, 5);
  auto star = BipartiteInstance(Graph(6, edges, 5));
  auto r = wex::select_smallbeta(star, 10, 3);
  REQUIRE(r.covered == 1);  // gamma = 1, fully covered

  // a high-degree S-vertex is filtered out of S'
  std::vector<std::pair<int, int>> e2;
  for (int v = 0; v < 5; ++v) e2.emplace_back(0, 3 + v);
  e2.emplace_back(1, 8);
  e2.emplace_back(2, 8);
  auto skew = BipartiteInstance(Graph(9, e2, 3));
  REQUIRE(Ratio::of(5) > Ratio(2, 1) * skew.delta_s());
  auto rs = wex::select_smallbeta(skew, 10, 3);
  REQUIRE(!rs.chosen.contains(0));
}

TEST_CASE("small beta reduction keeps the chosen set inside the filter") {
  // on random gamma < s instances, the result is a subset of the low-degree
  // filter and never empty
  wex::Rng rng(343434);
  for (int trial = 0; trial < 20; ++trial) {
    int s = 6 + static_cast<int>(rng.uniform_below(7));
    int gamma = 2 + static_cast<int>(rng.uniform_below(s - 2));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.4, rng);
    auto r = wex::select_smallbeta(inst, 30, rng.next());
    REQUIRE(r.covered >= 1);
    wex::Ratio two_delta_s = wex::Ratio(2, 1) * inst.delta_s();
    for (int u : r.chosen.ids())
      REQUIRE(wex::Ratio::of(inst.graph().degree(u)) <= two_delta_s);
  }
}

TEST_CASE("small beta tracks the oracle on shrunken instances") {
  wex::Rng rng(606060);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = wex::random_bipartite_instance(12, 6, 0.3, rng);
    auto r = wex::select_smallbeta(inst, 200, rng.next());
    auto o = wex::oracle_exact(inst);
    REQUIRE(r.covered <= o.covered);
    REQUIRE(3 * r.covered >= o.covered);  // empirically never worse than a third
  }
}

TEST_CASE("naive selector guarantees gamma over Delta_S") {
  auto m = wex::select_naive(matching(4));
  REQUIRE(m.covered == 4);
  REQUIRE(m.certified_bound == 4.0);

  auto r = wex::select_naive(k23());
  REQUIRE(r.covered == 3);
  REQUIRE(meets_bound(r.covered, r.certified_bound));

  auto c = wex::select_naive(core_instance(4));
  REQUIRE(c.certified_bound == Catch::Approx(12.0 / 7.0));
  REQUIRE(meets_bound(c.covered, c.certified_bound));
}

TEST_CASE("partition small traces") {
  auto m = wex::partition(matching(4));
  REQUIRE(m.n_uni.size() == 4);
  REQUIRE(m.n_tmp.empty());

  auto st = wex::partition(k23());
  REQUIRE(st.s_uni == VertexSet({0}, 5));
  REQUIRE(st.n_uni.size() == 3);
  REQUIRE(st.n_many.empty());
  REQUIRE(st.n_tmp.empty());
}

TEST_CASE("partition conditions P1-P4 on random instances") {
  wex::Rng rng(808080);
  for (int trial = 0; trial < 100; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(11));
    int gamma = 2 + static_cast<int>(rng.uniform_below(23));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.1 + 0.7 * rng.uniform01(), rng);
    auto st = wex::partition(inst);
    const Graph& g = inst.graph();
    // P1
    for (int v : st.n_uni.ids()) {
      int hits = 0;
      for (int u : g.neighbors(v))
        if (st.s_uni.contains(u)) ++hits;
      REQUIRE(hits == 1);
    }
    // P2
    for (int v : st.n_tmp.ids()) {
      int tmp_hits = 0, uni_hits = 0;
      for (int u : g.neighbors(v)) {
        if (st.s_tmp.contains(u)) ++tmp_hits;
        if (st.s_uni.contains(u)) ++uni_hits;
      }
      REQUIRE(tmp_hits >= 1);
      REQUIRE(uni_hits == 0);
    }
    // P3
    REQUIRE(st.n_uni.size() >= st.n_many.size());
    // P4 plus edge-count recount
    long long e_uni = 0, e_tmp = 0;
    for (int u : st.s_tmp.ids()) {
      for (int v : g.neighbors(u)) {
        if (st.n_uni.contains(v)) ++e_uni;
        if (st.n_tmp.contains(v)) ++e_tmp;
      }
    }
    REQUIRE(e_uni == st.e_uni);
    REQUIRE(e_tmp == st.e_tmp);
    REQUIRE((st.n_tmp.empty() || st.e_tmp <= 2 * st.e_uni));
  }
}

TEST_CASE("avgdeg selector meets gamma/(8 delta)") {
  auto m = wex::select_avgdeg(matching(4));
  REQUIRE(m.covered == 4);

  auto c = wex::select_avgdeg(core_instance(8));
  REQUIRE(c.certified_bound == Catch::Approx(32.0 / (8.0 * 15.0 / 4.0)));
  REQUIRE(meets_bound(c.covered, c.certified_bound));

  wex::Rng rng(909090);
  for (int trial = 0; trial < 50; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(11));
    int gamma = 2 + static_cast<int>(rng.uniform_below(23));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.1 + 0.7 * rng.uniform01(), rng);
    auto r = wex::select_avgdeg(inst);
    REQUIRE(meets_bound(r.covered, inst.gamma() / (8.0 * inst.delta_n().to_double())));
  }
}

TEST_CASE("bucket selector per-bucket guarantee") {
  // uniform degrees: a single bucket holding all of N
  auto u = wex::select_bucket(BipartiteInstance(oracle::complete_bipartite(3, 3)));
  REQUIRE(u.certified_bound == Catch::Approx(3.0 / (2 * (1 + wex::kBucketC))));
  REQUIRE(meets_bound(u.covered, u.certified_bound));

  auto c = wex::select_bucket(core_instance(8));
  REQUIRE(c.covered >= 3);
  REQUIRE(meets_bound(c.covered, c.certified_bound));
  REQUIRE_THROWS_AS(wex::select_bucket(core_instance(2), 1.0), std::invalid_argument);

  // every bucket's own partition meets size/(2(1+c))
  wex::Rng rng(111213);
  double cc = wex::kBucketC;
  for (int trial = 0; trial < 25; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(9));
    int gamma = 2 + static_cast<int>(rng.uniform_below(20));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.2 + 0.6 * rng.uniform01(), rng);
    const Graph& g = inst.graph();
    std::vector<std::vector<int>> buckets;
    for (int v = inst.s(); v < g.n(); ++v) {
      int i = static_cast<int>(std::floor(std::log(g.degree(v)) / std::log(cc) + 1e-12));
      if (static_cast<size_t>(i) >= buckets.size()) buckets.resize(i + 1);
      buckets[i].push_back(v);
    }
    for (const auto& bucket : buckets) {
      if (bucket.empty()) continue;
      auto st = wex::partition(inst, std::nullopt, bucket);
      REQUIRE(st.n_uni.size() >= bucket.size() / (2 * (1 + cc)) - 1e-9);
    }
  }
}

TEST_CASE("tight selector bound and recursion") {
  auto m = wex::select_tight(matching(6));
  REQUIRE(m.covered == 6);
  REQUIRE(m.certified_bound == Catch::Approx(6.0 / 9.0));

  auto c = wex::select_tight(core_instance(8));
  REQUIRE(c.covered >= 2);
  REQUIRE(meets_bound(c.covered, c.certified_bound));

  wex::Rng rng(141516);
  for (int trial = 0; trial < 50; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(11));
    int gamma = 2 + static_cast<int>(rng.uniform_below(23));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.1 + 0.7 * rng.uniform01(), rng);
    auto r = wex::select_tight(inst);
    double delta = inst.delta_n().to_double();
    REQUIRE(meets_bound(r.covered, inst.gamma() / (9 * std::log2(2 * delta))));
    REQUIRE(r.covered <= wex::oracle_exact(inst).covered);
  }
}

TEST_CASE("all selectors stay at or below the oracle and reproduce covered") {
  wex::Rng rng(171819);
  for (int trial = 0; trial < 25; ++trial) {
    int s = 2 + static_cast<int>(rng.uniform_below(11));
    int gamma = 2 + static_cast<int>(rng.uniform_below(16));
    auto inst = wex::random_bipartite_instance(s, gamma, 0.1 + 0.7 * rng.uniform01(), rng);
    auto oracle_result = wex::oracle_exact(inst);
    wex::SpokesmanResult all[] = {
        wex::select_naive(inst),         wex::select_avgdeg(inst),
        wex::select_bucket(inst),        wex::select_tight(inst),
        wex::select_randomized(inst, 20, 5), wex::select_smallbeta(inst, 20, 5),
        wex::select_best(inst, 5),
    };
    for (const auto& r : all) {
      REQUIRE(r.covered <= oracle_result.covered);
      REQUIRE(meets_bound(r.covered, r.certified_bound));
      // covered always equals a recount through the graph-core path
      VertexSet sside = inst.s_side();
      REQUIRE(r.covered ==
              unique_neighborhood(inst.graph(), sside, r.chosen).size());
    }
  }
}

TEST_CASE("deterministic selectors are pure") {
  wex::Rng rng(2024);
  auto inst = wex::random_bipartite_instance(8, 14, 0.35, rng);
  auto a1 = wex::select_naive(inst), a2 = wex::select_naive(inst);
  REQUIRE(a1.chosen == a2.chosen);
  auto b1 = wex::select_avgdeg(inst), b2 = wex::select_avgdeg(inst);
  REQUIRE(b1.chosen == b2.chosen);
  auto c1 = wex::select_tight(inst), c2 = wex::select_tight(inst);
  REQUIRE(c1.chosen == c2.chosen);
  auto d1 = wex::select_randomized(inst, 10, 42), d2 = wex::select_randomized(inst, 10, 42);
  REQUIRE(d1.chosen == d2.chosen);
}

TEST_CASE("portfolio dominates every member") {
  wex::Rng rng(232425);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = wex::random_bipartite_instance(
        2 + static_cast<int>(rng.uniform_below(9)),
        2 + static_cast<int>(rng.uniform_below(16)), 0.4, rng);
    auto best = wex::select_best(inst, 11);
    REQUIRE(best.covered >= wex::select_naive(inst).covered);
    REQUIRE(best.covered >= wex::select_avgdeg(inst).covered);
    REQUIRE(best.covered >= wex::select_bucket(inst).covered);
    REQUIRE(best.covered >= wex::select_tight(inst).covered);
  }
  auto small = wex::select_best(core_instance(4), 1);
  REQUIRE(small.covered == wex::oracle_exact(core_instance(4)).covered);
  auto m = wex::select_best(matching(5), 1);
  REQUIRE(m.covered == 5);
}
