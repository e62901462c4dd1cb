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

// `elp` command-line front end.
//
//   elp detect GRAPH [--algorithm elp|lpa|eknnclus] [--order beta|random] ...
//   elp benchmark GRAPH TRUTH [--algorithm A ...] [--runs R] [--seed0 S] ...
//   elp order GRAPH [--eta E]
//   elp fetch-datasets [--dest DIR] [--import NAME --edges F [--truth F]]
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 data integrity.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elp/datasets.hpp"
#include "elp/eknnclus.hpp"
#include "elp/error.hpp"
#include "elp/evaluation.hpp"
#include "elp/graph.hpp"
#include "elp/influence.hpp"
#include "elp/io.hpp"
#include "elp/propagation.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;

struct Options {
  std::string graph;
  std::string truth;
  std::vector<std::string> algorithms{"elp"};
  std::string order = "random";
  double eta = 1.0;
  double alpha0 = 1.0;
  std::string gamma = "auto";
  int max_iter = 100;
  std::uint64_t seed = 0;
  std::size_t k = 5;
  double overlap_eps = 0.05;
  std::string output;
  std::string format = "json";
  // benchmark
  std::size_t runs = 50;
  std::uint64_t seed0 = 0;
  unsigned threads = 1;
  bool sample_std = false;
  std::string runs_csv;
  // fetch-datasets
  std::string dest;
  std::string import_name;
  std::string import_edges;
  std::string import_truth;
};

std::optional<double> parse_gamma(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || used == 0) {
    throw elp::invalid_argument("--gamma expects 'auto' or a number, got '" +
                                s + "'");
  }
  return v;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

elp::ElpConfig elp_config(const Options& o) {
  elp::ElpConfig c;
  c.eta = o.eta;
  c.alpha0 = o.alpha0;
  c.gamma = parse_gamma(o.gamma);
  c.max_iterations = o.max_iter;
  c.order = o.order == "beta" ? elp::OrderPolicy::kBeta
                              : elp::OrderPolicy::kRandom;
  c.seed = o.seed;
  c.overlap_epsilon = o.overlap_eps;
  return c;
}

elp::EknnConfig eknn_config(const Options& o) {
  elp::EknnConfig c;
  c.k = o.k;
  c.eta = o.eta;
  c.alpha0 = o.alpha0;
  c.gamma = parse_gamma(o.gamma);
  c.max_iterations = o.max_iter;
  c.seed = o.seed;
  c.overlap_epsilon = o.overlap_eps;
  return c;
}

elp::Json config_for(const std::string& algorithm, const Options& o) {
  if (algorithm == "elp") return elp::config_json(elp_config(o));
  elp::Json j;
  if (algorithm == "eknnclus") {
    const auto c = eknn_config(o);
    j["k"] = c.k;
    j["eta"] = c.eta;
    j["alpha0"] = c.alpha0;
    j["gamma"] = c.gamma ? elp::Json(*c.gamma) : elp::Json("auto");
    j["max_iterations"] = c.max_iterations;
    j["order"] = "random";
    j["seed"] = c.seed;
    j["overlap_epsilon"] = c.overlap_epsilon;
  } else {
    j["max_iterations"] = o.max_iter;
    j["order"] = "random";
    j["seed"] = o.seed;
  }
  return j;
}

elp::RunManifest make_manifest(const std::string& input,
                               const std::string& algorithm, elp::Json config,
                               std::vector<std::uint64_t> seeds) {
  elp::RunManifest m;
  m.input = input;
  m.input_sha256 = elp::sha256_file(input);
  m.algorithm = algorithm;
  m.config = std::move(config);
  m.seeds = std::move(seeds);
  m.created = utc_now();
  return m;
}

// Writes `text` to `path`, or stdout when path is empty; a file output gets a
// sidecar manifest carrying the wall-clock timestamp.
void emit(const std::string& path, const std::string& text,
          const elp::RunManifest& manifest) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw elp::io_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw elp::io_error("write failed for '" + path + "'");
  }
  std::ofstream side(path + ".manifest.json", std::ios::binary | std::ios::trunc);
  if (!side) throw elp::io_error("cannot write '" + path + ".manifest.json'");
  side << manifest.to_json(true).dump(2) << '\n';
}

elp::ElpResult run_algorithm(const std::string& algorithm,
                             const elp::Graph& g, const Options& o) {
  if (algorithm == "elp") return elp::elp_run(g, elp_config(o));
  if (algorithm == "eknnclus") return elp::eknnclus_run(g, eknn_config(o));
  return elp::categorical_result(elp::lpa_run(g, o.seed, o.max_iter));
}

int cmd_detect(const Options& o) {
  const std::string& algorithm = o.algorithms.front();
  const elp::Graph g = elp::load_edge_list_file(o.graph);
  const elp::ElpResult r = run_algorithm(algorithm, g, o);
  const auto manifest =
      make_manifest(o.graph, algorithm, config_for(algorithm, o), {o.seed});
  std::ostringstream text;
  if (o.format == "csv") {
    elp::write_result_csv(text, g, r);
  } else {
    text << elp::result_to_json(g, r, algorithm, manifest, o.seed).dump(2)
         << '\n';
  }
  emit(o.output, text.str(), manifest);
  if (!r.converged) {
    std::cerr << "warning: no fixed point within " << o.max_iter
              << " sweeps (converged=false)\n";
  }
  return 0;
}

std::string column_name(const std::string& algorithm) {
  if (algorithm == "elp") return "ELP";
  if (algorithm == "lpa") return "LPA";
  return "EK-NNclus*";
}

int cmd_benchmark(const Options& o) {
  const elp::Graph g = elp::load_edge_list_file(o.graph);
  const elp::Partition truth = elp::load_partition_file(o.truth, g);
  elp::BenchmarkOptions bo;
  bo.runs = o.runs;
  bo.seed0 = o.seed0;
  bo.threads = o.threads;
  bo.deviation =
      o.sample_std ? elp::Deviation::kSample : elp::Deviation::kPopulation;

  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < o.runs; ++r) seeds.push_back(o.seed0 + r);

  std::vector<std::string> headers;
  std::vector<elp::RunStats> columns;
  elp::Json doc = elp::Json::array();
  for (const std::string& algorithm : o.algorithms) {
    auto run = [&](std::uint64_t seed) {
      Options local = o;
      local.seed = seed;
      const elp::ElpResult r = run_algorithm(algorithm, g, local);
      return elp::RunOutcome{r.partition(), r.iterations, r.converged};
    };
    elp::RunStats stats = elp::benchmark(run, truth, bo);
    const auto manifest =
        make_manifest(o.graph, algorithm, config_for(algorithm, o), seeds);
    doc.push_back(elp::stats_to_json(stats, algorithm, manifest));
    if (!o.runs_csv.empty()) {
      const std::string path = o.algorithms.size() == 1
                                   ? o.runs_csv
                                   : o.runs_csv + "." + algorithm + ".csv";
      std::ostringstream csv;
      elp::write_runs_csv(csv, stats);
      emit(path, csv.str(), manifest);
    }
    headers.push_back(column_name(algorithm));
    columns.push_back(std::move(stats));
  }

  elp::write_stats_table(std::cout, headers, columns);
  for (const auto& a : o.algorithms) {
    if (a == "eknnclus") {
      std::cout << "* EK-NNclus (operational variant), K=" << o.k << '\n';
      break;
    }
  }
  if (!o.output.empty()) {
    elp::RunManifest m = make_manifest(o.graph, "benchmark", elp::Json::object(),
                                       seeds);
    emit(o.output, doc.dump(2) + "\n", m);
  }
  return 0;
}

int cmd_order(const Options& o) {
  const elp::Graph g = elp::load_edge_list_file(o.graph);
  const elp::InfluenceTable table(g, o.eta);
  const auto order = elp::beta_order(table);
  std::ostringstream out;
  out << "rank,node,beta,variance,density\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto i = order[r];
    out << r + 1 << ',' << g.label(i) << ','
        << elp::format_double(table.beta(i)) << ','
        << elp::format_double(table.variance(i)) << ','
        << elp::format_double(table.density(i)) << '\n';
  }
  elp::RunManifest m;
  if (!o.output.empty()) {
    m = make_manifest(o.graph, "order", elp::Json{{"eta", o.eta}}, {});
  }
  emit(o.output, out.str(), m);
  return 0;
}

int cmd_fetch(const Options& o) {
  const std::filesystem::path src = elp::default_data_dir();
  const std::filesystem::path dest =
      o.dest.empty() ? src : std::filesystem::path(o.dest);
  if (!o.import_name.empty()) {
    if (o.import_edges.empty()) {
      throw elp::invalid_argument("--import needs --edges");
    }
    std::optional<std::filesystem::path> truth;
    if (!o.import_truth.empty()) truth = o.import_truth;
    const auto v =
        elp::import_dataset(o.import_name, o.import_edges, truth, src);
    std::cout << o.import_name << ": imported into " << src.string()
              << "  sha256 " << *v.entry.edges_sha256 << '\n';
  }
  const auto report = elp::fetch_datasets(src, dest, std::cout);
  std::cout << report.ready.size() << " dataset(s) ready in " << dest.string()
            << ", " << report.missing.size() << " unavailable\n";
  return 0;
}

void add_detect_flags(CLI::App* cmd, Options& o, bool multi_algorithm) {
  auto* alg = multi_algorithm
                  ? cmd->add_option("--algorithm", o.algorithms,
                                    "Algorithms to compare")
                  : cmd->add_option("--algorithm", o.algorithms.front(),
                                    "Algorithm");
  alg->check(CLI::IsMember({"elp", "lpa", "eknnclus"}));
  if (multi_algorithm) alg->expected(1, 3);
  cmd->add_option("--order", o.order, "ELP update order")
      ->check(CLI::IsMember({"beta", "random"}));
  cmd->add_option("--eta", o.eta, "Density exponent in the influence");
  cmd->add_option("--alpha0", o.alpha0, "Evidence ceiling in (0, 1]");
  cmd->add_option("--gamma", o.gamma, "'auto' or a positive real");
  cmd->add_option("--max-iter", o.max_iter, "Sweep budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k", o.k, "EK-NNclus neighbor count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--overlap-eps", o.overlap_eps,
                  "Relative tolerance for overlap detection")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--output", o.output, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidential label propagation community detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", elp::kToolVersion);
  Options o;

  auto* detect = app.add_subcommand("detect", "Detect communities in a graph");
  detect->add_option("graph", o.graph, "Edge-list file")->required();
  add_detect_flags(detect, o, false);
  detect->add_option("--seed", o.seed, "RNG seed");
  detect->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* bench =
      app.add_subcommand("benchmark", "NMI statistics over seeded runs");
  bench->add_option("graph", o.graph, "Edge-list file")->required();
  bench->add_option("truth", o.truth, "Ground-truth label file")->required();
  add_detect_flags(bench, o, true);
  bench->add_option("--runs", o.runs, "Number of runs")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed0", o.seed0, "First seed");
  bench->add_option("--threads", o.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--sample-std", o.sample_std,
                  "Sample deviation (divide by R-1) instead of population");
  bench->add_option("--runs-csv", o.runs_csv,
                    "Per-run CSV (seed,nmi,communities,iterations)");

  auto* order = app.add_subcommand("order", "Dump the beta update order as CSV");
  order->add_option("graph", o.graph, "Edge-list file")->required();
  order->add_option("--eta", o.eta, "Density exponent in the influence");
  order->add_option("--output", o.output, "Output file (default stdout)");

  auto* fetch = app.add_subcommand(
      "fetch-datasets", "Verify bundled datasets and copy them to --dest");
  fetch->add_option("--dest", o.dest, "Destination (default: data directory)");
  auto* imp = fetch->add_option("--import", o.import_name,
                                "Register a user-supplied dataset copy");
  fetch->add_option("--edges", o.import_edges, "Edge list to import")
      ->needs(imp);
  fetch->add_option("--truth", o.import_truth, "Label file to import")
      ->needs(imp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*detect) return cmd_detect(o);
    if (*bench) return cmd_benchmark(o);
    if (*order) return cmd_order(o);
    if (*fetch) return cmd_fetch(o);
  } catch (const elp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case elp::ErrorKind::kIo:
        return kExitIo;
      case elp::ErrorKind::kDataIntegrity:
      case elp::ErrorKind::kConflict:
        return kExitData;
      case elp::ErrorKind::kInvalidArgument:
        return kExitUsage;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
