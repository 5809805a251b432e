#pragma once

#include <stdexcept>
#include <utility>

#include "wex/graph.hpp"
#include "wex/ratio.hpp"

namespace wex {

// The (S, N, E_S) spokesman instance. S occupies ids 0..s-1, N the rest.
// No vertex may be isolated, so both average degrees are >= 1.
class BipartiteInstance {
public:
  explicit BipartiteInstance(Graph graph) : graph_(std::move(graph)) {
    if (!graph_.left_size())
      throw std::invalid_argument("BipartiteInstance: graph is not bipartite-tagged");
    s_ = *graph_.left_size();
    gamma_ = graph_.n() - s_;
    if (s_ < 1 || gamma_ < 1)
      throw std::invalid_argument("BipartiteInstance: both sides must be nonempty");
    for (int v = 0; v < graph_.n(); ++v)
      if (graph_.degree(v) == 0)
        throw std::invalid_argument("BipartiteInstance: isolated vertex " + std::to_string(v));
    long long edges = graph_.edge_count();
    delta_s_ = Ratio(edges, s_);
    delta_n_ = Ratio(edges, gamma_);
    max_deg_s_ = 0;
    max_deg_n_ = 0;
    for (int v = 0; v < s_; ++v) max_deg_s_ = std::max(max_deg_s_, graph_.degree(v));
    for (int v = s_; v < graph_.n(); ++v) max_deg_n_ = std::max(max_deg_n_, graph_.degree(v));
  }

  const Graph& graph() const { return graph_; }
  int s() const { return s_; }
  int gamma() const { return gamma_; }
  Ratio delta_s() const { return delta_s_; }
  Ratio delta_n() const { return delta_n_; }
  int max_deg_s() const { return max_deg_s_; }
  int max_deg_n() const { return max_deg_n_; }

  bool in_s(int v) const { return v < s_; }
  VertexSet s_side() const { return VertexSet::prefix(s_, graph_.n()); }

  // Degree of an N-side vertex into S (all its edges, by bipartiteness).
  int n_degree(int v) const { return graph_.degree(v); }

private:
  Graph graph_;
  int s_;
  int gamma_;
  Ratio delta_s_;
  Ratio delta_n_;
  int max_deg_s_;
  int max_deg_n_;
};

}  // namespace wex
