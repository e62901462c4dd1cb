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

// Result and statistics serialization (JSON, CSV) and the run manifest that
// travels with every output.
//
// Result JSON layout:
//
//   {
//     "algorithm": "elp" | "lpa" | "eknnclus",
//     "manifest": { tool, version, input, algorithm, config, seeds },
//     "run": { seed, iterations, converged, communities, gamma, ... },
//     "nodes": [
//       { "id": "<external id>", "label": <community>, "class": "normal",
//         "overlap": [..],            // only for class "overlap"
//         "mass": { "<community>": m, ..., "ignorance": m(frame) },
//         "pignistic": { "<community>": p, ... } },
//       ...
//     ]
//   }
//
// "mass" lists nonzero singleton masses only; "pignistic" covers the whole
// frame. Doubles are written in shortest round-trip form, so reading a
// result back reproduces the masses bit for bit.

#ifndef ELP_IO_HPP_
#define ELP_IO_HPP_

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "elp/belief.hpp"
#include "elp/error.hpp"
#include "elp/evaluation.hpp"
#include "elp/graph.hpp"
#include "elp/partition.hpp"
#include "elp/propagation.hpp"

namespace elp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "elp";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunManifest {
  std::string input;
  std::string input_sha256;  // empty when not computed
  std::string algorithm;
  Json config = Json::object();
  std::vector<std::uint64_t> seeds;
  std::string created;  // wall clock; kept out of byte-stable outputs

  Json to_json(bool with_timestamp = false) const {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["input"] = input;
    if (!input_sha256.empty()) j["input_sha256"] = input_sha256;
    j["algorithm"] = algorithm;
    j["config"] = config;
    j["seeds"] = seeds;
    if (with_timestamp && !created.empty()) j["created"] = created;
    return j;
  }
};

inline Json config_json(const ElpConfig& c) {
  Json j;
  j["eta"] = c.eta;
  j["alpha0"] = c.alpha0;
  j["gamma"] = c.gamma ? Json(*c.gamma) : Json("auto");
  j["max_iterations"] = c.max_iterations;
  j["order"] = to_string(c.order);
  j["seed"] = c.seed;
  j["overlap_epsilon"] = c.overlap_epsilon;
  return j;
}

// Hard partition expressed as categorical bbas, so every algorithm shares
// one output schema.
inline ElpResult categorical_result(const LpaResult& lpa) {
  ElpResult r;
  const Partition& p = lpa.partition;
  r.community_count = p.community_count();
  r.iterations = lpa.iterations;
  r.converged = lpa.converged;
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.masses.emplace_back(r.community_count,
                          std::vector<SingletonMass>{{p[i], 1.0}}, 0.0);
    r.domain_labels.push_back(p[i]);
    r.classes.push_back({NodeClass::Kind::kNormal, {p[i]}});
  }
  return r;
}

inline Json result_to_json(const Graph& g, const ElpResult& r,
                           const std::string& algorithm,
                           const RunManifest& manifest, std::uint64_t seed) {
  Json j;
  j["algorithm"] = algorithm;
  j["manifest"] = manifest.to_json(false);
  Json run;
  run["seed"] = seed;
  run["iterations"] = r.iterations;
  run["converged"] = r.converged;
  run["communities"] = r.community_count;
  if (algorithm != "lpa") {
    run["gamma"] = r.gamma;
    run["gamma_fallback"] = r.gamma_fallback;
  }
  Json order = Json::array();
  for (NodeIndex i : r.order) order.push_back(g.label(i));
  if (!r.order.empty()) run["order"] = std::move(order);
  j["run"] = std::move(run);

  Json nodes = Json::array();
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const MassFunction& m = r.masses[i];
    Json node;
    node["id"] = g.label(i);
    node["label"] = r.domain_labels[i];
    node["class"] = to_string(r.classes[i].kind);
    if (r.classes[i].kind == NodeClass::Kind::kOverlap) {
      node["overlap"] = r.classes[i].labels;
    }
    Json mass = Json::object();
    for (const auto& s : m.focal_singletons()) {
      mass[std::to_string(s.label)] = s.mass;
    }
    mass["ignorance"] = m.ignorance();
    node["mass"] = std::move(mass);
    Json bet = Json::object();
    const auto p = m.betp();
    for (std::size_t k = 0; k < p.size(); ++k) bet[std::to_string(k)] = p[k];
    node["pignistic"] = std::move(bet);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

// Node records read back from a result document.
struct ParsedResult {
  std::string algorithm;
  std::size_t community_count = 0;
  std::vector<std::string> ids;
  std::vector<Label> labels;
  std::vector<NodeClass> classes;
  std::vector<MassFunction> masses;
  bool converged = false;
  int iterations = 0;
};

inline NodeClass::Kind parse_class(const std::string& s) {
  if (s == "normal") return NodeClass::Kind::kNormal;
  if (s == "overlap") return NodeClass::Kind::kOverlap;
  if (s == "outlier") return NodeClass::Kind::kOutlier;
  throw data_error("unknown node class '" + s + "'");
}

inline ParsedResult result_from_json(const Json& j) {
  try {
    ParsedResult out;
    out.algorithm = j.at("algorithm").get<std::string>();
    const Json& run = j.at("run");
    out.community_count = run.at("communities").get<std::size_t>();
    out.converged = run.at("converged").get<bool>();
    out.iterations = run.at("iterations").get<int>();
    for (const Json& node : j.at("nodes")) {
      out.ids.push_back(node.at("id").get<std::string>());
      out.labels.push_back(node.at("label").get<Label>());
      NodeClass cls;
      cls.kind = parse_class(node.at("class").get<std::string>());
      if (cls.kind == NodeClass::Kind::kOverlap) {
        cls.labels = node.at("overlap").get<std::vector<Label>>();
      } else if (cls.kind == NodeClass::Kind::kNormal) {
        cls.labels = {out.labels.back()};
      }
      out.classes.push_back(std::move(cls));
      std::vector<SingletonMass> singletons;
      double ignorance = 0.0;
      for (const auto& [key, value] : node.at("mass").items()) {
        if (key == "ignorance") {
          ignorance = value.get<double>();
        } else {
          singletons.push_back(
              {static_cast<Label>(std::stoul(key)), value.get<double>()});
        }
      }
      out.masses.emplace_back(out.community_count, std::move(singletons),
                              ignorance);
    }
    return out;
  } catch (const Json::exception& e) {
    throw data_error(std::string("malformed result document: ") + e.what());
  }
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// node,label,class,m_omega,m_0..m_{c-1}
inline void write_result_csv(std::ostream& out, const Graph& g,
                             const ElpResult& r) {
  out << "node,label,class,m_omega";
  for (std::size_t k = 0; k < r.community_count; ++k) out << ",m_" << k;
  out << '\n';
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const MassFunction& m = r.masses[i];
    out << g.label(i) << ',' << r.domain_labels[i] << ','
        << to_string(r.classes[i].kind) << ',' << format_double(m.ignorance());
    for (double v : m.dense()) out << ',' << format_double(v);
    out << '\n';
  }
}

inline Json stats_to_json(const RunStats& s, const std::string& algorithm,
                          const RunManifest& manifest) {
  Json j;
  j["algorithm"] = algorithm;
  j["manifest"] = manifest.to_json(false);
  j["max"] = s.max;
  j["min"] = s.min;
  j["average"] = s.mean;
  j["deviation"] = s.deviation;
  j["deviation_kind"] =
      s.deviation_kind == Deviation::kSample ? "sample" : "population";
  Json runs = Json::array();
  for (const auto& r : s.runs) {
    runs.push_back({{"seed", r.seed},
                    {"nmi", r.nmi},
                    {"communities", r.communities},
                    {"iterations", r.iterations},
                    {"converged", r.converged}});
  }
  j["runs"] = std::move(runs);
  return j;
}

// seed,nmi,communities,iterations
inline void write_runs_csv(std::ostream& out, const RunStats& s) {
  out << "seed,nmi,communities,iterations\n";
  for (const auto& r : s.runs) {
    out << r.seed << ',' << format_double(r.nmi) << ',' << r.communities << ','
        << r.iterations << '\n';
  }
}

// The Max / Min / Average / Deviation table, one column per algorithm.
inline void write_stats_table(std::ostream& out,
                              const std::vector<std::string>& headers,
                              const std::vector<RunStats>& columns) {
  auto cell = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%12.4f", v);
    return std::string(buf);
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-10s", "");
  out << buf;
  for (const auto& h : headers) {
    std::snprintf(buf, sizeof buf, "%12s", h.c_str());
    out << buf;
  }
  out << '\n';
  const char* rows[] = {"Max", "Min", "Average", "Deviation"};
  for (int row = 0; row < 4; ++row) {
    std::snprintf(buf, sizeof buf, "%-10s", rows[row]);
    out << buf;
    for (const auto& s : columns) {
      const double v = row == 0   ? s.max
                       : row == 1 ? s.min
                       : row == 2 ? s.mean
                                  : s.deviation;
      out << cell(v);
    }
    out << '\n';
  }
}

}  // namespace elp

#endif  // ELP_IO_HPP_
