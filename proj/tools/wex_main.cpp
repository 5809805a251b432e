// wex: construct / metrics / spokesman / broadcast / verify / sweep
//
// Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 size-cap error.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wex/bipartite.hpp"
#include "wex/constructions.hpp"
#include "wex/generators.hpp"
#include "wex/graph.hpp"
#include "wex/metrics.hpp"
#include "wex/radiosim.hpp"
#include "wex/serialize.hpp"
#include "wex/spokesman.hpp"
#include "wex/verify.hpp"

using wex::json;

namespace {

struct GlobalOpts {
  wex::RunConfig config;
  std::string alpha_text = "1/2";
};

std::string timestamp_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// "0..99", "3", or "1,5,9"
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    std::uint64_t lo = std::stoull(text.substr(0, dots));
    std::uint64_t hi = std::stoull(text.substr(dots + 2));
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) seeds.push_back(std::stoull(tok));
  return seeds;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

class Output {
public:
  explicit Output(const GlobalOpts& opts) : opts_(opts) {
    if (!opts.config.out.empty()) {
      file_.open(opts.config.out);
      if (!file_) throw std::runtime_error("cannot open output file: " + opts.config.out);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void write_json(json value) {
    value["config"] = wex::to_json(opts_.config);
    if (opts_.config.timestamp) value["generated"] = timestamp_now();
    stream() << value.dump(2) << "\n";
  }

  void csv_header(const std::string& columns) {
    stream() << "# config " << wex::to_json(opts_.config).dump() << "\n";
    if (opts_.config.timestamp) stream() << "# generated " << timestamp_now() << "\n";
    stream() << columns << "\n";
  }

private:
  const GlobalOpts& opts_;
  std::ofstream file_;
};

void write_graph_artifact(const GlobalOpts& opts, const wex::Graph& g, const json& cert) {
  if (opts.config.out.empty())
    throw CLI::ValidationError("construct", "--out is required for construct");
  std::vector<std::string> comments{"config " + wex::to_json(opts.config).dump()};
  if (opts.config.timestamp) comments.push_back("generated " + timestamp_now());
  wex::write_graph(g, opts.config.out, comments);
  json full = cert;
  full["config"] = wex::to_json(opts.config);
  if (opts.config.timestamp) full["generated"] = timestamp_now();
  std::ofstream cf(opts.config.out + ".cert.json");
  if (!cf) throw std::runtime_error("cannot open certificate file");
  cf << full.dump(2) << "\n";
  std::cout << "wrote " << opts.config.out << " and " << opts.config.out << ".cert.json\n";
}

int print_suite(const wex::SuiteReport& rep) {
  for (const auto& check : rep.checks) {
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << rep.name << ": " << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
  }
  std::printf("suite %s: %s (%.3fs)\n", rep.name.c_str(), rep.pass() ? "PASS" : "FAIL",
              rep.seconds);
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wireless-expander toolkit"};
  app.require_subcommand(1);

  GlobalOpts opts;
  bool no_timestamp = false;
  app.add_option("--seed", opts.config.seed, "global RNG seed");
  app.add_option("--alpha", opts.alpha_text, "set-size fraction, e.g. 1/2 or 0.3");
  app.add_option("--cap", opts.config.cap, "subset enumeration cap");
  app.add_option("--wireless-cap", opts.config.wireless_cap, "wireless enumeration cap");
  app.add_option("--jobs", opts.config.jobs, "worker threads (default 1, deterministic)");
  app.add_option("--format", opts.config.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opts.config.out, "output path (default stdout)");
  app.add_flag("--no-timestamp", no_timestamp, "omit timestamps for byte-identical reruns");

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "build a graph family with certificate");
  construct->require_subcommand(1);
  int c_s = 8, c_delta = 4, c_beta_i = 3, c_hops = 8, c_delta_star = 16;
  double c_beta = 6.0, c_beta_star = 4.0;

  auto* ccore = construct->add_subcommand("core", "core graph on a perfect binary tree");
  ccore->add_option("--s", c_s, "left-side size (rounded up to a power of two)");
  auto* cbad = construct->add_subcommand("badunique", "expander with tight unique expansion");
  cbad->add_option("--delta", c_delta, "degree of every S vertex")->required();
  cbad->add_option("--beta", c_beta_i, "target expansion")->required();
  cbad->add_option("--s", c_s, "left-side size")->required();
  auto* cgen = construct->add_subcommand("gencore", "generalized core graph");
  cgen->add_option("--delta-star", c_delta_star, "target maximum degree")->required();
  cgen->add_option("--beta-star", c_beta_star, "target expansion")->required();
  auto* cncopy = construct->add_subcommand("ncopy", "core with copied N side");
  cncopy->add_option("--s", c_s)->required();
  cncopy->add_option("--beta", c_beta)->required();
  auto* cscopy = construct->add_subcommand("scopy", "core with copied S side");
  cscopy->add_option("--s", c_s)->required();
  cscopy->add_option("--beta", c_beta)->required();
  auto* cchain = construct->add_subcommand("chain", "broadcast lower-bound chain");
  cchain->add_option("--s", c_s);
  cchain->add_option("--hops", c_hops, "number of core copies");

  // ---- metrics ----
  auto* metrics = app.add_subcommand("metrics", "exact expansion report for a graph file");
  std::string m_graph;
  bool m_restrict = false;
  metrics->add_option("--graph", m_graph, "graph file")->required();
  metrics->add_flag("--restrict-s", m_restrict,
                    "enumerate only subsets of the bipartite left side");

  // ---- spokesman ----
  auto* spokesman = app.add_subcommand("spokesman", "run a spokesman-election algorithm");
  std::string sp_graph, sp_algo = "best";
  int sp_trials = 100;
  double sp_c = wex::kBucketC;
  double sp_t = 0;
  spokesman->add_option("--graph", sp_graph, "bipartite graph file")->required();
  spokesman->add_option("--algo", sp_algo, "algorithm")
      ->check(CLI::IsMember({"oracle", "rand", "smallbeta", "naive", "avgdeg", "bucket",
                             "tight", "best"}));
  spokesman->add_option("--trials", sp_trials, "randomized trials");
  spokesman->add_option("--c", sp_c, "bucket ratio (> 1)");
  spokesman->add_option("--t", sp_t, "restrict buckets to degrees <= t*delta_N");

  // ---- broadcast ----
  auto* broadcast = app.add_subcommand("broadcast", "run a broadcast protocol over chains");
  std::string b_protocol = "decay", b_seeds = "0..99";
  int b_s = 8, b_hops = 8;
  broadcast->add_option("--s", b_s, "core size per hop");
  broadcast->add_option("--hops", b_hops, "chain length");
  broadcast->add_option("--protocol", b_protocol)
      ->check(CLI::IsMember({"decay", "alltransmit"}));
  broadcast->add_option("--seeds", b_seeds, "seed range, e.g. 0..99 or 1,2,3");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string v_suite;
  int v_s = 0, v_n = 14, v_graphs = 200, v_instances = 1000, v_seedcount = 100;
  std::string v_hops = "2,4,8";
  verify->add_option("suite", v_suite, "suite name")->required();
  verify->add_option("--s", v_s, "construction size parameter");
  verify->add_option("--n", v_n, "max graph size (relations)");
  verify->add_option("--graphs", v_graphs, "graph count (relations)");
  verify->add_option("--instances", v_instances, "instance count (partition/selectors)");
  verify->add_option("--hops", v_hops, "hop list (scaling)");
  verify->add_option("--seed-count", v_seedcount, "seeds per cell (scaling)");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "cross-product experiment grid to CSV");
  sweep->require_subcommand(1);
  auto* sweep_spokes = sweep->add_subcommand("spokesman", "selectors over core sizes");
  std::string sw_s = "4,8,16", sw_algos = "naive,avgdeg,bucket,tight,best";
  sweep_spokes->add_option("--s", sw_s, "comma list of core sizes");
  sweep_spokes->add_option("--algos", sw_algos, "comma list of algorithms");
  auto* sweep_bcast = sweep->add_subcommand("broadcast", "decay rounds over chain lengths");
  std::string swb_hops = "2,4,8", swb_seeds = "0..99";
  int swb_s = 8;
  sweep_bcast->add_option("--s", swb_s);
  sweep_bcast->add_option("--hops", swb_hops, "comma list of hop counts");
  sweep_bcast->add_option("--seeds", swb_seeds, "seed range per cell");

  try {
    app.parse(argc, argv);
    opts.config.alpha = wex::Ratio::parse(opts.alpha_text);
    opts.config.timestamp = !no_timestamp;

    if (construct->parsed()) {
      if (ccore->parsed()) {
        auto built = wex::build_core(c_s);
        write_graph_artifact(opts, built.graph, wex::certificate(built));
      } else if (cbad->parsed()) {
        auto built = wex::build_bad_unique(c_delta, c_beta_i, c_s);
        write_graph_artifact(opts, built.graph, wex::certificate(built));
      } else if (cgen->parsed()) {
        auto built = wex::build_generalized_core(c_delta_star, c_beta_star);
        write_graph_artifact(opts, built.graph, wex::certificate(built));
      } else if (cncopy->parsed()) {
        auto built = wex::build_core_ncopy(c_s, c_beta);
        write_graph_artifact(opts, built.graph, wex::certificate(built, "ncopy"));
      } else if (cscopy->parsed()) {
        auto built = wex::build_core_scopy(c_s, c_beta);
        write_graph_artifact(opts, built.graph, wex::certificate(built, "scopy"));
      } else if (cchain->parsed()) {
        auto built = wex::build_broadcast_chain(c_s, c_hops, opts.config.seed);
        write_graph_artifact(opts, built.graph, wex::certificate(built));
      }
      return 0;
    }

    if (metrics->parsed()) {
      wex::Graph g = wex::read_graph(m_graph);
      std::optional<wex::VertexSet> candidates;
      if (m_restrict) {
        if (!g.left_size())
          throw CLI::ValidationError("metrics", "--restrict-s needs a bipartite graph");
        candidates = wex::VertexSet::prefix(*g.left_size(), g.n());
      }
      wex::ExpansionReport rep;
      rep.alpha = opts.config.alpha;
      auto ord = wex::ordinary_expansion(g, rep.alpha, candidates, opts.config.cap);
      auto uni = wex::unique_expansion(g, rep.alpha, candidates, opts.config.cap);
      auto wir = wex::wireless_expansion(g, rep.alpha, candidates, opts.config.wireless_cap);
      rep.beta = ord.value;
      rep.witness_beta = ord.witness;
      rep.beta_u = uni.value;
      rep.witness_beta_u = uni.witness;
      rep.beta_w = wir.value;
      rep.witness_beta_w_s = wir.witness_s;
      rep.witness_beta_w_sprime = wir.witness_sprime;
      Output out(opts);
      out.write_json(wex::to_json(rep));
      return 0;
    }

    if (spokesman->parsed()) {
      wex::BipartiteInstance inst(wex::read_graph(sp_graph));
      wex::SpokesmanResult result;
      if (sp_algo == "oracle") result = wex::oracle_exact(inst);
      else if (sp_algo == "rand") result = wex::select_randomized(inst, sp_trials, opts.config.seed);
      else if (sp_algo == "smallbeta") result = wex::select_smallbeta(inst, sp_trials, opts.config.seed);
      else if (sp_algo == "naive") result = wex::select_naive(inst);
      else if (sp_algo == "avgdeg") result = wex::select_avgdeg(inst);
      else if (sp_algo == "bucket")
        result = sp_t > 1 ? wex::select_bucket(inst, sp_c, sp_t) : wex::select_bucket(inst, sp_c);
      else if (sp_algo == "tight") result = wex::select_tight(inst);
      else result = wex::select_best(inst, opts.config.seed, sp_trials);

      json body = wex::to_json(result);
      if (inst.s() <= wex::kOracleCap && sp_algo != "oracle") {
        auto oracle = wex::oracle_exact(inst);
        body["oracle_covered"] = oracle.covered;
        body["oracle_gap"] = oracle.covered - result.covered;
      }
      Output out(opts);
      if (opts.config.format == "csv") {
        out.csv_header("algorithm,covered,certified_bound,trials,chosen");
        out.stream() << result.algorithm << "," << result.covered << ","
                     << result.certified_bound << "," << result.trials_used << ",\""
                     << result.chosen.str() << "\"\n";
      } else {
        out.write_json(body);
      }
      return 0;
    }

    if (broadcast->parsed()) {
      auto seeds = parse_seed_range(b_seeds);
      auto protocol = b_protocol == "decay" ? wex::Protocol::Decay : wex::Protocol::AllTransmit;
      std::vector<wex::ExperimentRow> rows(seeds.size());
      wex::detail::parallel_for(static_cast<int>(seeds.size()), opts.config.jobs, [&](int i) {
        rows[i] = wex::run_chain_protocol(b_s, b_hops, protocol, seeds[i]);
      });
      Output out(opts);
      std::ostringstream cols;
      cols << "seed,R";
      for (int h = 1; h <= b_hops; ++h) cols << ",R_" << h;
      cols << ",timeout_flag";
      out.csv_header(cols.str());
      for (const auto& row : rows) {
        out.stream() << row.seed << "," << row.rounds;
        for (int h = 0; h < b_hops; ++h) {
          out.stream() << ",";
          if (h < static_cast<int>(row.per_hop.size())) out.stream() << row.per_hop[h];
        }
        out.stream() << "," << (row.timeout ? 1 : 0) << "\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      wex::SuiteReport rep;
      if (v_suite == "core") {
        // size/degree checks exactly; subset brute force where feasible
        rep = v_s > 0 ? wex::verify_core({v_s}) : wex::verify_core();
        if (v_s > 0 && v_s <= 8) {
          auto wireless = wex::verify_core_wireless({v_s});
          for (auto& check : wireless.checks) rep.checks.push_back(check);
          rep.seconds += wireless.seconds;
        }
      } else if (v_suite == "core-wireless") {
        rep = v_s > 0 ? wex::verify_core_wireless({v_s}) : wex::verify_core_wireless();
      } else if (v_suite == "relations") {
        rep = wex::verify_relations(v_n, v_graphs, opts.config.seed, opts.config.alpha,
                                    opts.config.jobs);
      } else if (v_suite == "badunique") {
        rep = wex::verify_badunique();
      } else if (v_suite == "spectral") {
        rep = wex::verify_spectral();
      } else if (v_suite == "partition") {
        rep = wex::verify_partition(v_instances, opts.config.seed, opts.config.jobs);
      } else if (v_suite == "selectors") {
        rep = wex::verify_selectors(v_instances, opts.config.seed, opts.config.jobs);
      } else if (v_suite == "rand-expect") {
        rep = wex::verify_rand_expectation(20, opts.config.seed);
      } else if (v_suite == "corollary-detcor") {
        rep = v_s > 0 ? wex::verify_corollary_detcor({v_s}) : wex::verify_corollary_detcor();
      } else if (v_suite == "scaling") {
        rep = wex::verify_broadcast_scaling(v_s > 0 ? v_s : 8, parse_int_list(v_hops),
                                            v_seedcount, opts.config.jobs);
      } else if (v_suite == "plug") {
        rep = wex::verify_plug();
      } else if (v_suite == "all") {
        int status = 0;
        status |= print_suite(wex::verify_core());
        status |= print_suite(wex::verify_core_wireless());
        status |= print_suite(wex::verify_relations(v_n, v_graphs, opts.config.seed,
                                                    opts.config.alpha, opts.config.jobs));
        status |= print_suite(wex::verify_badunique());
        status |= print_suite(wex::verify_spectral());
        status |= print_suite(wex::verify_partition(v_instances, opts.config.seed,
                                                    opts.config.jobs));
        status |= print_suite(wex::verify_selectors(v_instances, opts.config.seed,
                                                    opts.config.jobs));
        status |= print_suite(wex::verify_rand_expectation(20, opts.config.seed));
        status |= print_suite(wex::verify_corollary_detcor());
        status |= print_suite(wex::verify_broadcast_scaling(8, parse_int_list(v_hops),
                                                            v_seedcount, opts.config.jobs));
        status |= print_suite(wex::verify_plug());
        return status;
      } else {
        throw CLI::ValidationError("verify", "unknown suite: " + v_suite);
      }
      return print_suite(rep);
    }

    if (sweep->parsed()) {
      if (sweep_spokes->parsed()) {
        auto sizes = parse_int_list(sw_s);
        std::vector<std::string> algos;
        {
          std::stringstream ss(sw_algos);
          std::string tok;
          while (std::getline(ss, tok, ',')) algos.push_back(tok);
        }
        if (sizes.empty() || algos.empty())
          throw CLI::ValidationError("sweep", "empty grid");
        Output out(opts);
        out.csv_header("s,gamma,algorithm,covered,certified_bound,oracle,error");
        for (int s : sizes) {
          for (const auto& algo : algos) {
            out.stream() << s << ",";
            try {
              wex::BipartiteInstance inst(wex::build_core(s).graph);
              wex::SpokesmanResult r;
              if (algo == "naive") r = wex::select_naive(inst);
              else if (algo == "avgdeg") r = wex::select_avgdeg(inst);
              else if (algo == "bucket") r = wex::select_bucket(inst);
              else if (algo == "tight") r = wex::select_tight(inst);
              else if (algo == "rand") r = wex::select_randomized(inst, 100, opts.config.seed);
              else if (algo == "smallbeta") r = wex::select_smallbeta(inst, 100, opts.config.seed);
              else if (algo == "best") r = wex::select_best(inst, opts.config.seed);
              else if (algo == "oracle") r = wex::oracle_exact(inst);
              else throw std::invalid_argument("unknown algorithm: " + algo);
              out.stream() << inst.gamma() << "," << algo << "," << r.covered << ","
                           << r.certified_bound << ",";
              if (inst.s() <= wex::kOracleCap) out.stream() << wex::oracle_exact(inst).covered;
              out.stream() << ",\n";
            } catch (const std::exception& e) {
              out.stream() << "," << algo << ",,,," << "\"" << e.what() << "\"\n";
            }
          }
        }
        return 0;
      }
      if (sweep_bcast->parsed()) {
        auto hops = parse_int_list(swb_hops);
        auto seeds = parse_seed_range(swb_seeds);
        if (hops.empty() || seeds.empty())
          throw CLI::ValidationError("sweep", "empty grid");
        Output out(opts);
        out.csv_header("s,d_hops,seeds,mean_R,median_R,min_R,mean_Rhop,timeouts,error");
        for (int h : hops) {
          out.stream() << swb_s << "," << h << "," << seeds.size() << ",";
          try {
            std::vector<wex::ExperimentRow> rows(seeds.size());
            wex::detail::parallel_for(static_cast<int>(seeds.size()), opts.config.jobs,
                                      [&](int i) {
                                        rows[i] = wex::run_chain_protocol(
                                            swb_s, h, wex::Protocol::Decay, seeds[i]);
                                      });
            wex::ExperimentTable table;
            table.rows = rows;
            int timeouts = 0;
            for (const auto& r : rows)
              if (r.timeout) ++timeouts;
            out.stream() << table.mean_rounds() << "," << table.median_rounds() << ","
                         << table.min_rounds() << "," << table.mean_per_hop() << ","
                         << timeouts << ",\n";
          } catch (const std::exception& e) {
            out.stream() << ",,,,," << "\"" << e.what() << "\"\n";
          }
        }
        return 0;
      }
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wex::SizeCapError& e) {
    std::cerr << "size-cap error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
