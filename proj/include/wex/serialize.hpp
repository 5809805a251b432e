#pragma once

#include <string>

#include <json.hpp>

#include "wex/bipartite.hpp"
#include "wex/constructions.hpp"
#include "wex/graph.hpp"
#include "wex/metrics.hpp"
#include "wex/radiosim.hpp"
#include "wex/ratio.hpp"
#include "wex/spokesman.hpp"
#include "wex/vertex_set.hpp"

namespace wex {

using nlohmann::json;

// Every CLI invocation carries one of these; it is echoed into every output
// artifact so a run can be reproduced from the artifact alone.
struct RunConfig {
  std::uint64_t seed = 0;
  Ratio alpha{1, 2};
  int cap = kEnumerationCap;
  int wireless_cap = kWirelessCap;
  int jobs = 1;
  std::string format = "json";
  std::string out;
  bool timestamp = true;
};

inline json to_json(const Ratio& r) { return json{{"num", r.num()}, {"den", r.den()}}; }
inline json to_json(const VertexSet& s) { return json(s.ids()); }

// The output path and worker count are not echoed: neither affects the
// computed content, and embedding them would make byte-identical reruns
// impossible across locations or --jobs settings.
inline json to_json(const RunConfig& c) {
  return json{{"seed", c.seed},
              {"alpha", c.alpha.str()},
              {"cap", c.cap},
              {"wireless_cap", c.wireless_cap},
              {"format", c.format}};
}

inline json to_json(const ExpansionReport& rep) {
  return json{{"alpha", to_json(rep.alpha)},
              {"beta", to_json(rep.beta)},
              {"beta_u", to_json(rep.beta_u)},
              {"beta_w", to_json(rep.beta_w)},
              {"witness_beta", to_json(rep.witness_beta)},
              {"witness_beta_u", to_json(rep.witness_beta_u)},
              {"witness_beta_w", json{{"s", to_json(rep.witness_beta_w_s)},
                                      {"sprime", to_json(rep.witness_beta_w_sprime)}}}};
}

inline json to_json(const SpokesmanResult& r) {
  return json{{"algorithm", r.algorithm},
              {"chosen", to_json(r.chosen)},
              {"covered", r.covered},
              {"certified_bound", r.certified_bound},
              {"trials_used", r.trials_used}};
}

inline json certificate(const CoreBuild& b) {
  return json{{"type", "core"},
              {"requested_s", b.spec.requested_s},
              {"s", b.spec.s},
              {"levels", b.spec.levels},
              {"n", b.graph.n()},
              {"n_side", b.spec.n_side_size()},
              {"s_degree", 2 * b.spec.s - 1},
              {"max_n_degree", b.spec.s},
              {"avg_n_degree_cap", to_json(Ratio(2 * b.spec.s, b.spec.levels))},
              {"expansion_lb", b.spec.levels},
              {"wireless_cap", 2 * b.spec.s}};
}

inline json certificate(const CopyBuild& b, const std::string& kind) {
  json cert{{"type", kind},
            {"requested_beta", b.requested_beta},
            {"k", b.k},
            {"requested_s", b.core.requested_s},
            {"s", b.core.s},
            {"levels", b.core.levels},
            {"n", b.graph.n()}};
  if (kind == "ncopy") {
    cert["s_side"] = b.core.s;
    cert["n_side"] = b.core.n_side_size() * b.k;
    cert["s_degree"] = (2 * b.core.s - 1) * b.k;
    cert["wireless_cap"] = 2 * b.core.s * b.k;
  } else {
    cert["s_side"] = b.core.s * b.k;
    cert["n_side"] = b.core.n_side_size();
    cert["s_degree"] = 2 * b.core.s - 1;
    cert["wireless_cap"] = 2 * b.core.s;
  }
  return cert;
}

inline json certificate(const GenCoreBuild& b) {
  return json{{"type", "gencore"},
              {"branch", b.branch == GenCoreBranch::NCopy ? "ncopy" : "scopy"},
              {"delta_star", b.delta_star},
              {"beta_star", b.beta_star},
              {"s", b.s},
              {"k", b.k},
              {"s_size", b.s_size},
              {"n_size", b.n_size},
              {"s_exact", b.s_exact},
              {"range_ok", b.range_ok},
              {"max_degree", b.graph.max_degree()},
              {"max_degree_ok", b.max_degree_ok},
              {"wireless_cap", b.wireless_cap}};
}

inline json certificate(const BadUniqueBuild& b) {
  return json{{"type", "badunique"},
              {"delta", b.delta},
              {"beta", b.beta},
              {"s", b.s},
              {"n", b.graph.n()},
              {"expected_beta_u", b.expected_beta_u},
              {"wireless_floor", b.wireless_floor}};
}

inline json certificate(const PlugBuild& b) {
  return json{{"type", "plug"},
              {"base_n", b.base_n},
              {"tilde_n", b.tilde_n},
              {"tilde_delta", b.tilde_delta},
              {"n_bound", b.n_bound},
              {"delta_bound", b.delta_bound},
              {"beta_tilde", b.beta_tilde},
              {"alpha_tilde", b.alpha_tilde},
              {"s_star", to_json(b.s_star)},
              {"core", certificate(b.core)}};
}

inline json certificate(const ChainBuild& b) {
  json cores = json::array();
  for (const auto& c : b.cores)
    cores.push_back(json{{"s_begin", c.s_begin}, {"s_end", c.s_end},
                         {"n_begin", c.n_begin}, {"n_end", c.n_end}});
  return json{{"type", "chain"},  {"s", b.s},   {"d_hops", b.d_hops},
              {"seed", b.seed},   {"rt", b.rt}, {"cores", cores},
              {"diameter_claim", b.diameter_claim}};
}

}  // namespace wex
