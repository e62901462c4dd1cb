// Copyright 2026 The ELP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Directed node influence and the quantities derived from it: normalized
// influence, influence variance, the beta update-order index and the
// similarity-to-distance transform used by the EK-NNclus baseline.
//
// Influence is directional. influence(g, u, v) is how strongly v's label is
// pushed onto u: sim(u, v) * (rho_v / rho_u)^eta. Denser neighbors push
// harder.

#ifndef ELP_INFLUENCE_HPP_
#define ELP_INFLUENCE_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "elp/error.hpp"
#include "elp/graph.hpp"

namespace elp {

template <class F>
concept SimilarityMeasure = requires(const F& f, const Graph& g, NodeIndex u,
                                     NodeIndex v) {
  { f(g, u, v) } -> std::convertible_to<double>;
};

// sim * (rho_v / rho_u)^eta. Not clamped; values above 1 are legal here.
inline double influence_from(double sim, double rho_u, double rho_v,
                             double eta) {
  if (eta == 0.0) return sim;
  return sim * std::pow(rho_v / rho_u, eta);
}

inline double influence(const Graph& g, NodeIndex u, NodeIndex v, double eta) {
  if (u == v || !g.adjacent(u, v)) {
    throw invalid_argument("influence is only defined between neighbors");
  }
  return influence_from(jaccard(g, u, v), local_density(g, u),
                        local_density(g, v), eta);
}

// Mean absolute deviation from the mean; 0 for an empty range.
inline double mean_absolute_deviation(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double dev = 0.0;
  for (double x : xs) dev += std::abs(x - mean);
  return dev / n;
}

// Precomputed per-arc and per-node influence quantities for one graph.
//
// Per-arc arrays are indexed like the graph's flat adjacency: entry
// g.offset(i) + s belongs to the ordered pair (i, neighbors(i)[s]), i.e. the
// influence *of* that neighbor *on* i. The referenced Graph must outlive
// the table.
class InfluenceTable {
 public:
  template <SimilarityMeasure Sim = JaccardSimilarity>
  InfluenceTable(const Graph& g, double eta, Sim sim = {})
      : graph_(&g), eta_(eta) {
    const std::size_t n = g.node_count();
    if (n < 2) throw invalid_argument("influence needs at least two nodes");

    density_.resize(n);
    for (NodeIndex i = 0; i < n; ++i) density_[i] = local_density(g, i);

    similarity_.resize(g.arc_count());
    influence_.resize(g.arc_count());
    normalized_.resize(g.arc_count());
    variance_.assign(n, 0.0);
    for (NodeIndex i = 0; i < n; ++i) {
      auto nb = g.neighbors(i);
      const std::size_t base = g.offset(i);
      double total = 0.0;
      for (std::size_t s = 0; s < nb.size(); ++s) {
        const double sv = sim(g, i, nb[s]);
        similarity_[base + s] = sv;
        influence_[base + s] =
            influence_from(sv, density_[i], density_[nb[s]], eta);
        total += influence_[base + s];
      }
      // Evidence-free neighborhoods are treated as uniform, which gives V = 0.
      for (std::size_t s = 0; s < nb.size(); ++s) {
        normalized_[base + s] = total > 0.0
                                    ? influence_[base + s] / total
                                    : 1.0 / static_cast<double>(nb.size());
      }
      variance_[i] = mean_absolute_deviation(
          std::span<const double>(normalized_).subspan(base, nb.size()));
    }
    compute_beta();
  }

  const Graph& graph() const { return *graph_; }
  double eta() const { return eta_; }

  double density(NodeIndex i) const { return density_[i]; }
  double variance(NodeIndex i) const { return variance_[i]; }
  double beta(NodeIndex i) const { return beta_[i]; }

  // Per-arc views for node i, aligned with graph().neighbors(i).
  std::span<const double> similarities(NodeIndex i) const {
    return arc_view(similarity_, i);
  }
  std::span<const double> influences(NodeIndex i) const {
    return arc_view(influence_, i);
  }
  std::span<const double> normalized(NodeIndex i) const {
    return arc_view(normalized_, i);
  }
  std::span<const double> all_influences() const { return influence_; }

  // Influence of neighbor j on i.
  double influence(NodeIndex i, NodeIndex j) const {
    auto slot = graph_->slot_of(i, j);
    if (!slot) throw invalid_argument("influence is only defined between neighbors");
    return influence_[graph_->offset(i) + *slot];
  }

 private:
  std::span<const double> arc_view(const std::vector<double>& v,
                                   NodeIndex i) const {
    return std::span<const double>(v).subspan(graph_->offset(i),
                                              graph_->degree(i));
  }

  void compute_beta() {
    const std::size_t n = graph_->node_count();
    double var_sum = 0.0;
    double inv_rho_sum = 0.0;
    for (NodeIndex i = 0; i < n; ++i) {
      var_sum += variance_[i];
      if (density_[i] > 0.0) inv_rho_sum += 1.0 / density_[i];
    }
    beta_.assign(n, 0.0);
    for (NodeIndex i = 0; i < n; ++i) {
      const double var_term = var_sum > 0.0 ? variance_[i] / var_sum
                                            : 1.0 / static_cast<double>(n);
      const double rho_term =
          density_[i] > 0.0 ? (1.0 / density_[i]) / inv_rho_sum : 0.0;
      beta_[i] = var_term + rho_term;
    }
  }

  const Graph* graph_;
  double eta_;
  std::vector<double> density_;
  std::vector<double> similarity_;
  std::vector<double> influence_;
  std::vector<double> normalized_;
  std::vector<double> variance_;
  std::vector<double> beta_;
};

inline double influence_variance(const InfluenceTable& table, NodeIndex i) {
  return table.variance(i);
}

// Nodes by beta descending, ties by ascending index. Isolated nodes have no
// density term and are appended last in index order.
inline std::vector<NodeIndex> beta_order(const InfluenceTable& table) {
  const Graph& g = table.graph();
  std::vector<NodeIndex> connected;
  std::vector<NodeIndex> isolated;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    (g.degree(i) > 0 ? connected : isolated).push_back(i);
  }
  std::stable_sort(connected.begin(), connected.end(),
                   [&](NodeIndex a, NodeIndex b) {
                     return table.beta(a) > table.beta(b);
                   });
  connected.insert(connected.end(), isolated.begin(), isolated.end());
  return connected;
}

inline constexpr double kMaxSimilarityForDistance = 1.0 - 1e-9;

// delta / (1 - delta), with delta clamped below 1. Increases with delta.
inline double distance(double delta) {
  delta = std::clamp(delta, 0.0, kMaxSimilarityForDistance);
  return delta / (1.0 - delta);
}

}  // namespace elp

#endif  // ELP_INFLUENCE_HPP_
