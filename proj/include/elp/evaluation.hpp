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

#ifndef ELP_EVALUATION_HPP_
#define ELP_EVALUATION_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elp/error.hpp"
#include "elp/graph.hpp"
#include "elp/partition.hpp"

namespace elp {

// Normalized mutual information (Danon et al. form):
//
//   -2 sum_ij N_ij log(N_ij n / (N_i. N_.j))
//   ----------------------------------------------
//   sum_i N_i. log(N_i. / n) + sum_j N_.j log(N_.j / n)
//
// Two single-community partitions score 1; a single-community partition
// against a non-trivial one scores 0.
inline double nmi(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw invalid_argument("partitions cover different node sets");
  }
  const double n = static_cast<double>(a.size());
  const std::size_t ca = a.community_count();
  const std::size_t cb = b.community_count();
  if (ca == 1 && cb == 1) return 1.0;

  std::vector<double> row(ca, 0.0), col(cb, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    row[a[i]] += 1.0;
    col[b[i]] += 1.0;
  }

  double num = 0.0;
  for (const auto& [cell, nij] : joint) {
    num += nij * std::log(nij * n / (row[cell.first] * col[cell.second]));
  }
  num *= -2.0;
  double den = 0.0;
  for (double r : row) den += r * std::log(r / n);
  for (double c : col) den += c * std::log(c / n);
  const double v = num / den;
  return v < 0.0 ? 0.0 : v;  // -0.0 and rounding noise on independent pairs
}

// Ground truth: lines "node_token label_token"; '#' / '%' comments. Every
// graph node must be labelled; labels for unknown nodes are ignored.
inline Partition load_partition(std::istream& in, const Graph& g) {
  std::vector<std::string> ids(g.node_count());
  std::vector<char> have(g.node_count(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream tokens(line);
    std::string node, label, extra;
    tokens >> node >> label;
    if (label.empty() || (tokens >> extra)) {
      throw data_error("label file line " + std::to_string(line_no) +
                       ": expected node and label tokens");
    }
    auto idx = g.find(node);
    if (!idx) continue;
    ids[*idx] = label;
    have[*idx] = 1;
  }
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    if (!have[i]) {
      throw data_error("no ground-truth label for node '" + g.label(i) + "'");
    }
  }
  return Partition(ids);
}

inline Partition load_partition_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open label file '" + path + "'");
  return load_partition(in, g);
}

enum class Deviation { kPopulation, kSample };

// What one seeded run produced.
struct RunOutcome {
  Partition partition;
  int iterations = 0;
  bool converged = true;
};

struct RunRecord {
  std::uint64_t seed = 0;
  double nmi = 0.0;
  std::size_t communities = 0;
  int iterations = 0;
  bool converged = true;
};

struct RunStats {
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double deviation = 0.0;
  Deviation deviation_kind = Deviation::kPopulation;
  std::vector<RunRecord> runs;  // in seed order
};

inline RunStats summarize(std::vector<RunRecord> runs,
                          Deviation kind = Deviation::kPopulation) {
  if (runs.empty()) throw invalid_argument("no runs to summarize");
  RunStats s;
  s.deviation_kind = kind;
  s.runs = std::move(runs);
  s.max = s.runs.front().nmi;
  s.min = s.runs.front().nmi;
  double sum = 0.0;
  for (const auto& r : s.runs) {
    s.max = std::max(s.max, r.nmi);
    s.min = std::min(s.min, r.nmi);
    sum += r.nmi;
  }
  const double n = static_cast<double>(s.runs.size());
  s.mean = std::clamp(sum / n, s.min, s.max);
  double sq = 0.0;
  for (const auto& r : s.runs) sq += (r.nmi - s.mean) * (r.nmi - s.mean);
  const double dof = kind == Deviation::kSample ? n - 1.0 : n;
  s.deviation = dof > 0.0 ? std::sqrt(sq / dof) : 0.0;
  return s;
}

struct BenchmarkOptions {
  std::size_t runs = 50;
  std::uint64_t seed0 = 0;
  Deviation deviation = Deviation::kPopulation;
  unsigned threads = 1;
};

// Runs `algorithm(seed)` for seeds seed0 .. seed0 + runs - 1 and scores each
// partition against `truth`. Runs may execute on several threads; records
// are collected by seed so the result does not depend on scheduling.
template <class Algorithm>
  requires std::is_invocable_r_v<RunOutcome, Algorithm&, std::uint64_t>
RunStats benchmark(Algorithm algorithm, const Partition& truth,
                   const BenchmarkOptions& opts) {
  if (opts.runs < 1) throw invalid_argument("benchmark needs at least one run");
  std::vector<RunRecord> records(opts.runs);
  auto one = [&](std::size_t r) {
    const std::uint64_t seed = opts.seed0 + r;
    RunOutcome out = algorithm(seed);
    if (out.partition.size() != truth.size()) {
      throw invalid_argument("partition and ground truth sizes differ");
    }
    records[r] = {seed, nmi(truth, out.partition),
                  out.partition.community_count(), out.iterations,
                  out.converged};
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts.threads,
                                      static_cast<unsigned>(opts.runs)));
  if (workers == 1) {
    for (std::size_t r = 0; r < opts.runs; ++r) one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < opts.runs; r = next++) {
          try {
            one(r);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return summarize(std::move(records), opts.deviation);
}

}  // namespace elp

#endif  // ELP_EVALUATION_HPP_
