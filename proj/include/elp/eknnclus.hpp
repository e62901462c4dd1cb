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

// EK-NNclus baseline on graphs (operational variant).
//
// Same evidential update engine as ELP, but each node listens only to its K
// strongest neighbors, ranked by distance(delta) = delta / (1 - delta).
// Candidates are graph neighbors only, since influence is defined on edges.
// The retained pairs keep adjacency order, so with K >= max degree the
// evidence lists, and therefore whole runs, coincide with ELP's.

#ifndef ELP_EKNNCLUS_HPP_
#define ELP_EKNNCLUS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "elp/belief.hpp"
#include "elp/error.hpp"
#include "elp/graph.hpp"
#include "elp/influence.hpp"
#include "elp/propagation.hpp"
#include "elp/random.hpp"

namespace elp {

struct EknnConfig {
  std::size_t k = 5;
  double eta = 1.0;
  double alpha0 = 1.0;
  std::optional<double> gamma;  // unset: heuristic over the retained pairs
  int max_iterations = 100;
  std::uint64_t seed = 0;
  double overlap_epsilon = 0.05;

  void validate(const Graph& g) const {
    if (k < 1) throw invalid_argument("K must be >= 1");
    if (k > g.node_count() - 1) throw invalid_argument("K must be <= N - 1");
    if (max_iterations < 1) throw invalid_argument("max iterations must be >= 1");
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
      throw invalid_argument("alpha0 must be in (0, 1]");
    }
    if (gamma && !(*gamma > 0.0)) throw invalid_argument("gamma must be > 0");
    if (!(overlap_epsilon >= 0.0)) {
      throw invalid_argument("overlap tolerance must be >= 0");
    }
  }
};

struct KnnEvidence {
  EvidenceLists lists;
  double gamma = 0.0;
  bool gamma_fallback = false;
};

// Slots (positions in neighbors(i)) of node i's K nearest partners, in
// adjacency order. Ranking: distance descending, then neighbor index.
inline std::vector<std::size_t> nearest_slots(const InfluenceTable& table,
                                              NodeIndex i, std::size_t k) {
  auto nb = table.graph().neighbors(i);
  auto deltas = table.influences(i);
  std::vector<std::size_t> slots(nb.size());
  for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = s;
  if (slots.size() <= k) return slots;
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) {
    return distance(deltas[a]) > distance(deltas[b]);
  });
  slots.resize(k);
  std::sort(slots.begin(), slots.end());
  return slots;
}

inline KnnEvidence knn_pairs(const InfluenceTable& table, std::size_t k,
                             double alpha0, std::optional<double> gamma) {
  if (k < 1) throw invalid_argument("K must be >= 1");
  const Graph& g = table.graph();
  std::vector<std::vector<std::size_t>> kept(g.node_count());
  std::vector<double> retained;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    kept[i] = nearest_slots(table, i, k);
    auto deltas = table.influences(i);
    for (std::size_t s : kept[i]) retained.push_back(deltas[s]);
  }
  const ResolvedGamma resolved = resolve_gamma(gamma, retained);

  std::vector<std::vector<Evidence>> lists(g.node_count());
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    auto nb = g.neighbors(i);
    auto deltas = table.influences(i);
    for (std::size_t s : kept[i]) {
      const double a = phi(deltas[s], alpha0, resolved.value);
      lists[i].push_back({nb[s], deltas[s], a, evidence_weight(a)});
    }
  }
  return {EvidenceLists(lists), resolved.value, resolved.fallback};
}

inline ElpResult eknnclus_run(const Graph& g, const EknnConfig& cfg) {
  cfg.validate(g);
  const InfluenceTable table(g, cfg.eta);
  KnnEvidence knn = knn_pairs(table, cfg.k, cfg.alpha0, cfg.gamma);
  Rng rng(cfg.seed);
  ElpResult r = detail::run_evidential(knn.lists, {}, cfg.max_iterations,
                                       cfg.overlap_epsilon, rng);
  r.gamma = knn.gamma;
  r.gamma_fallback = knn.gamma_fallback;
  return r;
}

}  // namespace elp

#endif  // ELP_EKNNCLUS_HPP_
