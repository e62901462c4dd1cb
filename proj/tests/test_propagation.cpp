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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "elp/propagation.hpp"
#include "support.hpp"

namespace elp {
namespace {

using testing::graph_of;
using testing::node;

TEST(EvidenceWeight, Examples) {
  EXPECT_EQ(evidence_weight(0.0), 0.0);
  EXPECT_NEAR(evidence_weight(1.0 - std::exp(-1.0)), 1.0, 1e-15);
  EXPECT_NEAR(evidence_weight(0.75), std::log(4.0), 1e-15);
  EXPECT_THROW(evidence_weight(1.0), Error);
  EXPECT_TRUE(std::isfinite(evidence_weight(kAlphaCap)));
}

// Sources 0..3 hold labels 10, 10, 11, 12.
struct UpdateFixture {
  std::vector<Label> labels{10, 10, 11, 12, 13};
  VoteTally tally{16};
  std::vector<Label> tied;
};

TEST(UpdateNode, SingleCandidate) {
  UpdateFixture f;
  const std::vector<Evidence> ev{{0, 0.9, 0.8, 2.0}};
  Rng rng(0);
  EXPECT_EQ(update_node(ev, 13, f.labels, rng, f.tally, f.tied), 10u);
}

TEST(UpdateNode, SumsPerLabel) {
  UpdateFixture f;
  const std::vector<Evidence> ev{
      {0, 0, 0, 1.0}, {1, 0, 0, 0.5}, {2, 0, 0, 1.2}};
  Rng rng(0);
  EXPECT_EQ(update_node(ev, 13, f.labels, rng, f.tally, f.tied), 10u);
}

TEST(UpdateNode, NoEvidenceKeepsLabel) {
  UpdateFixture f;
  Rng rng(0);
  EXPECT_EQ(update_node({}, 13, f.labels, rng, f.tally, f.tied), 13u);
}

TEST(UpdateNode, ZeroEvidencePicksNeighborLabelReproducibly) {
  UpdateFixture f;
  const std::vector<Evidence> ev{{1, 0, 0, 0.0}, {2, 0, 0, 0.0}, {3, 0, 0, 0.0}};
  std::set<Label> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng a(seed), b(seed);
    const Label la = update_node(ev, 13, f.labels, a, f.tally, f.tied);
    const Label lb = update_node(ev, 13, f.labels, b, f.tally, f.tied);
    EXPECT_EQ(la, lb);
    seen.insert(la);
  }
  EXPECT_EQ(seen, (std::set<Label>{10, 11, 12}));
}

TEST(UpdateNode, TieKeepsCurrentWhenAmongMaximizers) {
  UpdateFixture f;
  const std::vector<Evidence> ev{{0, 0, 0, 0.7}, {2, 0, 0, 0.7}};
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(update_node(ev, 11, f.labels, rng, f.tally, f.tied), 11u);
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(MassFunction(3), 0.05).kind, NodeClass::Kind::kOutlier);

  const MassFunction tie(2, {{0, 0.48}, {1, 0.48}}, 0.04);
  const NodeClass c = classify(tie, 0.05);
  EXPECT_EQ(c.kind, NodeClass::Kind::kOverlap);
  EXPECT_EQ(c.labels, (std::vector<Label>{0, 1}));
  EXPECT_EQ(classify(tie, 0.0).kind, NodeClass::Kind::kOverlap);

  const MassFunction clear(2, {{0, 0.7}, {1, 0.1}}, 0.2);
  const NodeClass n = classify(clear, 0.05);
  EXPECT_EQ(n.kind, NodeClass::Kind::kNormal);
  EXPECT_EQ(n.labels, (std::vector<Label>{0}));
}

TEST(ElpRun, Triangle) {
  const Graph g = testing::triangle();
  const ElpResult r = elp_run(g, {});
  EXPECT_EQ(r.community_count, 1u);
  EXPECT_TRUE(r.converged);
  // All influences are 1/3, so the heuristic gives gamma = 1/4.
  EXPECT_DOUBLE_EQ(r.gamma, 0.25);
  const double a = phi(1.0 / 3.0, 1.0, 0.25);
  for (NodeIndex i = 0; i < 3; ++i) {
    EXPECT_EQ(r.domain_labels[i], 0u);
    EXPECT_NEAR(r.masses[i].ignorance(), (1 - a) * (1 - a), 1e-15);
    EXPECT_NEAR(r.masses[i].singleton(0), 1 - (1 - a) * (1 - a), 1e-15);
    EXPECT_EQ(r.classes[i].kind, NodeClass::Kind::kNormal);
  }
}

TEST(ElpRun, TwoTriangles) {
  const Graph g = testing::two_triangles();
  for (auto order : {OrderPolicy::kRandom, OrderPolicy::kBeta}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ElpConfig cfg;
      cfg.order = order;
      cfg.seed = seed;
      const ElpResult r = elp_run(g, cfg);
      EXPECT_EQ(r.community_count, 2u);
      for (const auto& c : r.classes) EXPECT_EQ(c.kind, NodeClass::Kind::kNormal);
      EXPECT_EQ(r.domain_labels[0], r.domain_labels[1]);
      EXPECT_EQ(r.domain_labels[3], r.domain_labels[5]);
      EXPECT_NE(r.domain_labels[0], r.domain_labels[3]);
    }
  }
}

TEST(ElpRun, KarateOutliersUnderBetaOrder) {
  const Graph g = testing::karate();
  ElpConfig cfg;
  cfg.order = OrderPolicy::kBeta;
  const ElpResult r = elp_run(g, cfg);
  for (const char* id : {"10", "12"}) {
    const NodeIndex i = node(g, id);
    EXPECT_EQ(r.classes[i].kind, NodeClass::Kind::kOutlier) << id;
    EXPECT_EQ(r.masses[i].ignorance(), 1.0) << id;
  }
}

TEST(ElpRun, BudgetExhaustionIsNotAnError) {
  const Graph g = testing::karate();
  ElpConfig cfg;
  cfg.max_iterations = 1;
  const ElpResult r = elp_run(g, cfg);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.masses.size(), g.node_count());
}

TEST(ElpRun, SingleEdgeBothOutliers) {
  const Graph g = testing::single_edge();
  const ElpResult r = elp_run(g, {});
  EXPECT_TRUE(r.gamma_fallback);
  for (NodeIndex i = 0; i < 2; ++i) {
    EXPECT_EQ(r.classes[i].kind, NodeClass::Kind::kOutlier);
    EXPECT_EQ(r.masses[i].ignorance(), 1.0);
  }
}

TEST(ElpRun, ConfigValidation) {
  const Graph g = testing::triangle();
  ElpConfig cfg;
  cfg.max_iterations = 0;
  EXPECT_THROW(elp_run(g, cfg), Error);
  cfg = {};
  cfg.overlap_epsilon = -1;
  EXPECT_THROW(elp_run(g, cfg), Error);
  cfg = {};
  cfg.gamma = 0.0;
  EXPECT_THROW(elp_run(g, cfg), Error);
}

TEST(LpaRun, Triangle) {
  const LpaResult r = lpa_run(testing::triangle(), 1);
  EXPECT_EQ(r.partition.community_count(), 1u);
  EXPECT_TRUE(r.converged);
}

TEST(LpaRun, BridgedTrianglesGiveOneOrTwo) {
  const Graph g = graph_of("a b\nb c\nc a\nx y\ny z\nz x\nc x");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LpaResult r = lpa_run(g, seed);
    EXPECT_GE(r.partition.community_count(), 1u);
    EXPECT_LE(r.partition.community_count(), 2u);
  }
}

TEST(LpaRun, Deterministic) {
  const Graph g = testing::karate();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(lpa_run(g, seed).partition, lpa_run(g, seed).partition);
  }
}

Graph random_graph(std::mt19937_64& rng) {
  const NodeIndex n = 4 + static_cast<NodeIndex>(rng() % 40);
  std::vector<std::string> labels;
  for (NodeIndex i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  std::bernoulli_distribution keep(0.05 + 0.25 * (rng() % 100) / 100.0);
  for (NodeIndex i = 0; i < n; ++i) {
    for (NodeIndex j = i + 1; j < n; ++j) {
      if (keep(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(labels, edges);
}

bool bitwise_equal(const ElpResult& a, const ElpResult& b) {
  return a.community_count == b.community_count && a.masses == b.masses &&
         a.domain_labels == b.domain_labels && a.classes == b.classes &&
         a.iterations == b.iterations && a.converged == b.converged &&
         a.order == b.order;
}

TEST(ElpProperties, RandomGraphs) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const Graph g = random_graph(rng);
    ElpConfig cfg;
    cfg.seed = rng();
    cfg.order = (t % 2) ? OrderPolicy::kBeta : OrderPolicy::kRandom;
    const ElpResult r = elp_run(g, cfg);

    // Determinism.
    EXPECT_TRUE(bitwise_equal(r, elp_run(g, cfg)));

    const InfluenceTable table(g, cfg.eta);
    std::vector<char> used(r.community_count, 0);
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
      const MassFunction& m = r.masses[i];
      EXPECT_EQ(m.frame_size(), r.community_count);
      EXPECT_NEAR(m.total(), 1.0, 1e-9);
      ASSERT_LT(r.domain_labels[i], r.community_count);

      // Domain label is an argmax of singleton mass and of plausibility.
      double top = 0.0;
      for (Label k = 0; k < r.community_count; ++k) top = std::max(top, m.singleton(k));
      EXPECT_NEAR(m.singleton(r.domain_labels[i]), top, 1e-12 * std::max(top, 1.0));
      for (Label k = 0; k < r.community_count; ++k) {
        EXPECT_LE(m.pl(k), m.pl(r.domain_labels[i]) + 1e-12);
      }

      // Nodes without usable evidence are outliers.
      auto deltas = table.influences(i);
      const bool silent = std::all_of(deltas.begin(), deltas.end(),
                                      [](double d) { return d == 0.0; });
      if (silent) {
        EXPECT_EQ(r.classes[i].kind, NodeClass::Kind::kOutlier);
        EXPECT_EQ(m.ignorance(), 1.0);
      }
    }
  }
}

TEST(ElpProperties, FramesAreHeldLabelsAndLabelsAreNeverInvented) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng);
    const InfluenceTable table(g, 1.0);
    const auto gamma = resolve_gamma(std::nullopt, table.all_influences());
    const EvidenceLists ev = full_neighborhood_evidence(table, 1.0, gamma.value);
    Rng r(rng());
    const LabelState s = propagate(ev, {}, 100, r);
    for (Label l : s.labels) EXPECT_LT(l, g.node_count());

    Rng r2(t);
    const ElpResult res = detail::run_evidential(ev, {}, 100, 0.05, r2);
    std::set<Label> held;
    Rng r3(t);
    const LabelState s2 = propagate(ev, {}, 100, r3);
    for (Label l : s2.labels) held.insert(l);
    EXPECT_EQ(res.community_count, held.size());
  }
}

TEST(ElpProperties, BetaSweepFixedPoint) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng);
    const InfluenceTable table(g, 1.0);
    const auto gamma = resolve_gamma(std::nullopt, table.all_influences());
    const EvidenceLists ev = full_neighborhood_evidence(table, 1.0, gamma.value);
    const auto order = beta_order(table);
    Rng r(rng());
    LabelState s = propagate(ev, order, 200, r);
    if (!s.converged) continue;
    VoteTally tally(g.node_count());
    auto labels = s.labels;
    EXPECT_EQ(sweep(ev, order, labels, r, tally), 0u);
    EXPECT_EQ(labels, s.labels);
  }
}

TEST(ElpProperties, KarateZeroEvidenceNodesAlwaysOutliers) {
  const Graph g = testing::karate();
  for (auto order : {OrderPolicy::kRandom, OrderPolicy::kBeta}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ElpConfig cfg;
      cfg.order = order;
      cfg.seed = seed;
      const ElpResult r = elp_run(g, cfg);
      EXPECT_EQ(r.classes[node(g, "10")].kind, NodeClass::Kind::kOutlier);
      EXPECT_EQ(r.classes[node(g, "12")].kind, NodeClass::Kind::kOutlier);
    }
  }
}

}  // namespace
}  // namespace elp
