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

// Immutable undirected simple graph plus the structural primitives the
// propagation algorithms are built on: degree, local density and the
// open-neighborhood Jaccard index.

#ifndef ELP_GRAPH_HPP_
#define ELP_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elp/error.hpp"

namespace elp {

using NodeIndex = std::uint32_t;

// What the loader threw away on the way in.
struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

class Graph {
 public:
  Graph() = default;

  // Builds a graph over nodes 0..labels.size()-1. Self-loops and repeated
  // edges (in either direction) are dropped and counted in the report.
  static Graph from_edges(
      std::vector<std::string> labels,
      std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
    Graph g;
    const std::size_t n = labels.size();
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (NodeIndex i = 0; i < n; ++i) {
      auto [it, inserted] = g.index_.emplace(g.labels_[i], i);
      if (!inserted) {
        throw invalid_argument("duplicate node label '" + g.labels_[i] + "'");
      }
    }

    std::vector<std::pair<NodeIndex, NodeIndex>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw invalid_argument("edge endpoint out of range");
      if (u == v) {
        ++g.report_.self_loops_dropped;
        continue;
      }
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    const auto before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    g.report_.duplicate_edges_dropped = (before - arcs.size()) / 2;

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.reserve(arcs.size());
    for (auto [u, v] : arcs) g.adjacency_.push_back(v);
    return g;
  }

  // Convenience for literal graphs: nodes are numbered in first-appearance
  // order of their labels.
  static Graph from_labeled_edges(
      std::span<const std::pair<std::string, std::string>> edges) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeIndex> seen;
    std::vector<std::pair<NodeIndex, NodeIndex>> indexed;
    auto intern = [&](const std::string& s) {
      auto [it, inserted] =
          seen.emplace(s, static_cast<NodeIndex>(labels.size()));
      if (inserted) labels.push_back(s);
      return it->second;
    };
    for (const auto& [a, b] : edges) {
      const NodeIndex u = intern(a);
      const NodeIndex v = intern(b);
      indexed.emplace_back(u, v);
    }
    return from_edges(std::move(labels), indexed);
  }

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeIndex> neighbors(NodeIndex i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  std::size_t max_degree() const {
    std::size_t best = 0;
    for (NodeIndex i = 0; i < node_count(); ++i) {
      best = std::max(best, degree(i));
    }
    return best;
  }

  // Position of node i's first neighbor slot in the flat adjacency array.
  // Per-arc tables (see InfluenceTable) are indexed by offset(i) + slot.
  std::size_t offset(NodeIndex i) const { return offsets_[i]; }
  std::size_t arc_count() const { return adjacency_.size(); }

  bool adjacent(NodeIndex u, NodeIndex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Slot of v within neighbors(u), if adjacent.
  std::optional<std::size_t> slot_of(NodeIndex u, NodeIndex v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - nb.begin());
  }

  const std::string& label(NodeIndex i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<NodeIndex> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const LoadReport& load_report() const { return report_; }
  void set_load_report(const LoadReport& r) { report_ = r; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  LoadReport report_;
};

// Parses a whitespace-separated edge list. Lines starting with '#' or '%'
// and blank lines are skipped; every other line must hold exactly two node
// tokens. Nodes are numbered in order of first appearance.
inline Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeIndex> seen;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = seen.emplace(s, static_cast<NodeIndex>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    tokens >> a >> b;
    if (b.empty() || (tokens >> extra)) {
      throw data_error("edge list line " + std::to_string(line_no) +
                       ": expected 2 node tokens");
    }
    const NodeIndex u = intern(a);
    const NodeIndex v = intern(b);
    edges.emplace_back(u, v);
  }
  if (labels.empty()) throw data_error("edge list is empty");

  Graph g = Graph::from_edges(std::move(labels), edges);
  LoadReport r = g.load_report();
  r.lines_read = line_no;
  g.set_load_report(r);
  return g;
}

inline Graph load_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

inline Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open graph file '" + path + "'");
  return load_edge_list(in);
}

// d_i / (N - 1).
inline double local_density(const Graph& g, NodeIndex i) {
  if (g.node_count() < 2) {
    throw invalid_argument("local density is undefined for a single node");
  }
  return static_cast<double>(g.degree(i)) /
         static_cast<double>(g.node_count() - 1);
}

// |N_u ∩ N_v| / |N_u ∪ N_v| over open neighborhoods; 0 if the union is empty.
inline double jaccard(const Graph& g, NodeIndex u, NodeIndex v) {
  if (u == v) throw invalid_argument("jaccard requires two distinct nodes");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

struct JaccardSimilarity {
  double operator()(const Graph& g, NodeIndex u, NodeIndex v) const {
    return jaccard(g, u, v);
  }
};

}  // namespace elp

#endif  // ELP_GRAPH_HPP_
