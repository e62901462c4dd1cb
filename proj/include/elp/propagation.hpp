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

// Evidential label propagation (ELP) and the classical label propagation
// baseline (LPA).
//
// ELP treats each neighbor j of node i as a simple bba that puts mass
// alpha_ij = phi(delta_ij) on "i belongs to j's community". Combining those
// by Dempster's rule never has to happen during propagation: the
// log-plausibility of label k for node i is, up to a constant,
//
//   u_ik = sum over neighbors j currently labelled k of -log(1 - alpha_ij),
//
// so each update is a weighted vote. Nodes are updated asynchronously until
// a full sweep changes nothing or the sweep budget runs out. The final bbas
// are then formed explicitly and read as memberships: the mass left on the
// whole frame flags outliers, near-equal top singleton masses flag bridges.

#ifndef ELP_PROPAGATION_HPP_
#define ELP_PROPAGATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elp/belief.hpp"
#include "elp/error.hpp"
#include "elp/graph.hpp"
#include "elp/influence.hpp"
#include "elp/partition.hpp"
#include "elp/random.hpp"

namespace elp {

enum class OrderPolicy {
  kRandom,  // fresh seeded shuffle every sweep
  kBeta,    // beta_order() computed once, reused every sweep
};

inline const char* to_string(OrderPolicy p) {
  return p == OrderPolicy::kBeta ? "beta" : "random";
}

struct ElpConfig {
  double eta = 1.0;
  double alpha0 = 1.0;
  std::optional<double> gamma;  // unset: gamma_heuristic over all influences
  int max_iterations = 100;
  OrderPolicy order = OrderPolicy::kRandom;
  std::uint64_t seed = 0;
  double overlap_epsilon = 0.05;

  void validate() const {
    if (max_iterations < 1) throw invalid_argument("max iterations must be >= 1");
    if (!(overlap_epsilon >= 0.0)) {
      throw invalid_argument("overlap tolerance must be >= 0");
    }
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) {
      throw invalid_argument("alpha0 must be in (0, 1]");
    }
    if (gamma && !(*gamma > 0.0)) throw invalid_argument("gamma must be > 0");
  }
};

// -log(1 - alpha).
inline double evidence_weight(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw invalid_argument("evidence weight needs alpha in [0, 1)");
  }
  return -std::log1p(-alpha);
}

// Neighbor j's evidence about node i.
struct Evidence {
  NodeIndex source;
  double delta;   // influence of source on the node
  double alpha;   // mass on the source's community
  double weight;  // -log(1 - alpha)
};

// Per-node evidence lists, flattened.
class EvidenceLists {
 public:
  EvidenceLists() = default;
  explicit EvidenceLists(const std::vector<std::vector<Evidence>>& lists) {
    offsets_.reserve(lists.size() + 1);
    for (const auto& l : lists) {
      entries_.insert(entries_.end(), l.begin(), l.end());
      offsets_.push_back(entries_.size());
    }
  }

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::span<const Evidence> of(NodeIndex i) const {
    return std::span<const Evidence>(entries_).subspan(
        offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Evidence> entries_;
};

// Every neighbor contributes, in adjacency order.
inline EvidenceLists full_neighborhood_evidence(const InfluenceTable& table,
                                                double alpha0, double gamma) {
  const Graph& g = table.graph();
  std::vector<std::vector<Evidence>> lists(g.node_count());
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    auto nb = g.neighbors(i);
    auto deltas = table.influences(i);
    lists[i].reserve(nb.size());
    for (std::size_t s = 0; s < nb.size(); ++s) {
      const double a = phi(deltas[s], alpha0, gamma);
      lists[i].push_back({nb[s], deltas[s], a, evidence_weight(a)});
    }
  }
  return EvidenceLists(lists);
}

struct ResolvedGamma {
  double value;
  bool fallback;  // heuristic had nothing to work with; 1.0 used
};

inline ResolvedGamma resolve_gamma(std::optional<double> fixed,
                                   std::span<const double> deltas) {
  if (fixed) return {*fixed, false};
  const bool usable = std::any_of(deltas.begin(), deltas.end(),
                                  [](double d) { return d > 0.0 && d < 1.0; });
  if (!usable) return {1.0, true};
  return {gamma_heuristic(deltas), false};
}

// Scratch space for vote accumulation, reused across updates.
class VoteTally {
 public:
  explicit VoteTally(std::size_t label_space)
      : sums_(label_space, 0.0), seen_(label_space, 0) {}

  void add(Label k, double w) {
    if (!seen_[k]) {
      seen_[k] = 1;
      touched_.push_back(k);
    }
    sums_[k] += w;
  }

  // Labels within tolerance of the best sum, in first-seen order.
  void maximizers(std::vector<Label>& out) const {
    out.clear();
    double best = 0.0;
    for (Label k : touched_) best = std::max(best, sums_[k]);
    const double tol = 1e-12 * std::max(1.0, best);
    for (Label k : touched_) {
      if (sums_[k] >= best - tol) out.push_back(k);
    }
  }

  void clear() {
    for (Label k : touched_) {
      sums_[k] = 0.0;
      seen_[k] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> sums_;
  std::vector<char> seen_;
  std::vector<Label> touched_;
};

// New label for a node given its evidence and the current labelling. Votes
// only go to labels held by the evidence sources. A node keeps its label
// when that label is among the maximizers; otherwise ties (including the
// all-zero-evidence case) are broken uniformly at random. No evidence at
// all: the label is kept.
inline Label update_node(std::span<const Evidence> evidence, Label current,
                         std::span<const Label> labels, Rng& rng,
                         VoteTally& tally, std::vector<Label>& tied) {
  if (evidence.empty()) return current;
  tally.clear();
  for (const auto& e : evidence) tally.add(labels[e.source], e.weight);
  tally.maximizers(tied);
  if (std::find(tied.begin(), tied.end(), current) != tied.end()) {
    return current;
  }
  return tied.size() == 1 ? tied.front() : tied[rng.uniform_index(tied.size())];
}

struct LabelState {
  std::vector<Label> labels;
  int iterations = 0;
  std::size_t changed_last_sweep = 0;
  bool converged = false;
  std::vector<NodeIndex> last_order;
};

// Initial state: every node carries its own index as label.
inline LabelState initial_state(std::size_t n) {
  LabelState s;
  s.labels.resize(n);
  std::iota(s.labels.begin(), s.labels.end(), Label{0});
  return s;
}

// One asynchronous pass in the given order. Returns the number of changes.
inline std::size_t sweep(const EvidenceLists& evidence,
                         std::span<const NodeIndex> order,
                         std::vector<Label>& labels, Rng& rng,
                         VoteTally& tally) {
  std::vector<Label> tied;
  std::size_t changed = 0;
  for (NodeIndex i : order) {
    const Label next = update_node(evidence.of(i), labels[i], labels, rng,
                                   tally, tied);
    if (next != labels[i]) {
      labels[i] = next;
      ++changed;
    }
  }
  return changed;
}

// Sweeps until one changes nothing or max_sweeps is reached. A non-empty
// fixed_order is reused every sweep; otherwise each sweep reshuffles.
inline LabelState propagate(const EvidenceLists& evidence,
                            std::span<const NodeIndex> fixed_order,
                            int max_sweeps, Rng& rng) {
  const std::size_t n = evidence.node_count();
  LabelState state = initial_state(n);
  VoteTally tally(n);
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  for (int it = 0; it < max_sweeps; ++it) {
    if (fixed_order.empty()) {
      std::iota(order.begin(), order.end(), NodeIndex{0});
      rng.shuffle(std::span<NodeIndex>(order));
    } else {
      order.assign(fixed_order.begin(), fixed_order.end());
    }
    state.changed_last_sweep = sweep(evidence, order, state.labels, rng, tally);
    state.iterations = it + 1;
    if (state.changed_last_sweep == 0) {
      state.converged = true;
      break;
    }
  }
  state.last_order = std::move(order);
  return state;
}

struct NodeClass {
  enum class Kind { kNormal, kOverlap, kOutlier };
  Kind kind = Kind::kNormal;
  std::vector<Label> labels;  // normal: the argmax; overlap: all near-top

  friend bool operator==(const NodeClass&, const NodeClass&) = default;
};

inline const char* to_string(NodeClass::Kind k) {
  switch (k) {
    case NodeClass::Kind::kNormal:
      return "normal";
    case NodeClass::Kind::kOverlap:
      return "overlap";
    case NodeClass::Kind::kOutlier:
      return "outlier";
  }
  return "?";
}

// Outlier when the frame carries more mass than any singleton. Otherwise
// the labels whose mass is within epsilon * top of the top mass form an
// overlap when there are at least two of them.
inline NodeClass classify(const MassFunction& m, double epsilon) {
  double top = 0.0;
  for (const auto& s : m.focal_singletons()) top = std::max(top, s.mass);
  NodeClass out;
  if (m.ignorance() > top) {
    out.kind = NodeClass::Kind::kOutlier;
    return out;
  }
  const double slack = epsilon * top;
  if (epsilon >= 1.0) {
    for (Label k = 0; k < m.frame_size(); ++k) {
      if (top - m.singleton(k) <= slack) out.labels.push_back(k);
    }
  } else {
    for (const auto& s : m.focal_singletons()) {
      if (top - s.mass <= slack) out.labels.push_back(s.label);
    }
  }
  out.kind = out.labels.size() >= 2 ? NodeClass::Kind::kOverlap
                                    : NodeClass::Kind::kNormal;
  return out;
}

struct ElpResult {
  std::size_t community_count = 0;
  std::vector<MassFunction> masses;  // per node, frame = 0..community_count-1
  std::vector<Label> domain_labels;
  std::vector<NodeClass> classes;
  int iterations = 0;
  bool converged = false;
  std::vector<NodeIndex> order;  // sweep order of the last sweep
  double gamma = 0.0;
  bool gamma_fallback = false;

  Partition partition() const { return Partition(domain_labels); }
};

namespace detail {

// Propagation plus the output stage shared by ELP and EK-NNclus.
inline ElpResult run_evidential(const EvidenceLists& evidence,
                                std::span<const NodeIndex> fixed_order,
                                int max_sweeps, double overlap_epsilon,
                                Rng& rng) {
  const std::size_t n = evidence.node_count();
  LabelState state = propagate(evidence, fixed_order, max_sweeps, rng);

  // Surviving labels -> dense frame, numbered by first holder.
  std::vector<Label> dense(n, UINT32_MAX);
  Label next = 0;
  for (NodeIndex i = 0; i < n; ++i) {
    Label& d = dense[state.labels[i]];
    if (d == UINT32_MAX) d = next++;
  }
  const std::size_t c = next;

  ElpResult r;
  r.community_count = c;
  r.iterations = state.iterations;
  r.converged = state.converged;
  r.order = std::move(state.last_order);
  r.masses.reserve(n);
  r.domain_labels.resize(n);
  r.classes.resize(n);

  std::vector<SimpleEvidence> pieces;
  std::vector<Label> best;
  for (NodeIndex i = 0; i < n; ++i) {
    pieces.clear();
    for (const auto& e : evidence.of(i)) {
      pieces.push_back({dense[state.labels[e.source]], e.alpha});
    }
    r.masses.push_back(combine_simple(c, pieces));
    const MassFunction& m = r.masses.back();

    // argmax pl == argmax singleton mass for this bba family.
    best.clear();
    double top = 0.0;
    for (const auto& s : m.focal_singletons()) top = std::max(top, s.mass);
    if (top == 0.0) {
      best.resize(c);
      std::iota(best.begin(), best.end(), Label{0});
    } else {
      const double tol = 1e-12 * top;
      for (const auto& s : m.focal_singletons()) {
        if (s.mass >= top - tol) best.push_back(s.label);
      }
    }
    const Label propagated = dense[state.labels[i]];
    if (std::find(best.begin(), best.end(), propagated) != best.end()) {
      r.domain_labels[i] = propagated;
    } else {
      r.domain_labels[i] = best[rng.uniform_index(best.size())];
    }
    r.classes[i] = classify(m, overlap_epsilon);
  }
  return r;
}

}  // namespace detail

inline ElpResult elp_run(const Graph& g, const ElpConfig& cfg) {
  cfg.validate();
  const InfluenceTable table(g, cfg.eta);
  const ResolvedGamma gamma = resolve_gamma(cfg.gamma, table.all_influences());
  const EvidenceLists evidence =
      full_neighborhood_evidence(table, cfg.alpha0, gamma.value);

  std::vector<NodeIndex> fixed;
  if (cfg.order == OrderPolicy::kBeta) fixed = beta_order(table);

  Rng rng(cfg.seed);
  ElpResult r = detail::run_evidential(evidence, fixed, cfg.max_iterations,
                                       cfg.overlap_epsilon, rng);
  r.gamma = gamma.value;
  r.gamma_fallback = gamma.fallback;
  return r;
}

struct LpaResult {
  Partition partition;
  int iterations = 0;
  bool converged = false;
};

// Asynchronous LPA: random order every sweep, plurality of neighbor labels,
// uniform random tie-break. Stops once every node holds one of its
// neighborhood's plurality labels.
inline LpaResult lpa_run(const Graph& g, std::uint64_t seed,
                         int max_iterations = 100) {
  if (max_iterations < 1) throw invalid_argument("max iterations must be >= 1");
  const std::size_t n = g.node_count();
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{0});
  std::vector<NodeIndex> order(n);
  VoteTally tally(n);
  std::vector<Label> tied;
  Rng rng(seed);

  auto plurality = [&](NodeIndex i) {
    tally.clear();
    for (NodeIndex j : g.neighbors(i)) tally.add(labels[j], 1.0);
    tally.maximizers(tied);
  };

  int it = 0;
  bool converged = false;
  while (it < max_iterations) {
    ++it;
    std::iota(order.begin(), order.end(), NodeIndex{0});
    rng.shuffle(std::span<NodeIndex>(order));
    for (NodeIndex i : order) {
      if (g.degree(i) == 0) continue;
      plurality(i);
      labels[i] =
          tied.size() == 1 ? tied.front() : tied[rng.uniform_index(tied.size())];
    }
    converged = true;
    for (NodeIndex i = 0; i < n && converged; ++i) {
      if (g.degree(i) == 0) continue;
      plurality(i);
      converged = std::find(tied.begin(), tied.end(), labels[i]) != tied.end();
    }
    if (converged) break;
  }
  return {Partition(labels), it, converged};
}

}  // namespace elp

#endif  // ELP_PROPAGATION_HPP_
