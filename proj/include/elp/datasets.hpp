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

// Benchmark dataset registry. A data directory holds `datasets.json` (the
// registry: file names, expected sizes, pinned SHA-256 sums) and the edge /
// truth files. Datasets that cannot be redistributed have null checksums in
// the registry; a user-supplied copy is registered with import_dataset(),
// which records its checksums in `checksums.local.json` next to it.
//
// Requires OpenSSL (libcrypto).

#ifndef ELP_DATASETS_HPP_
#define ELP_DATASETS_HPP_

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "elp/error.hpp"
#include "elp/graph.hpp"

#ifndef ELP_DEFAULT_DATA_DIR
#define ELP_DEFAULT_DATA_DIR "data"
#endif

namespace elp {

namespace fs = std::filesystem;

inline constexpr const char* kDataDirEnv = "ELP_DATA_DIR";
inline constexpr const char* kRegistryFile = "datasets.json";
inline constexpr const char* kLocalChecksums = "checksums.local.json";

// $ELP_DATA_DIR, else the directory compiled in at build time.
inline fs::path default_data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env && *env) return env;
  return ELP_DEFAULT_DATA_DIR;
}

inline std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorKind::kIo, "sha256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string sha256_file(const fs::path& path) {
  return sha256_hex(read_file(path));
}

struct DatasetEntry {
  std::string name;
  std::string edges_file;
  std::string truth_file;  // empty: no labels
  std::size_t nodes = 0;
  std::size_t edge_count = 0;
  std::optional<std::string> edges_sha256;
  std::optional<std::string> truth_sha256;
  std::string truth_kind;  // "authoritative" | "surrogate"
  std::string source;

  bool pinned() const { return edges_sha256.has_value(); }
};

namespace detail {

inline std::optional<std::string> optional_string(const nlohmann::json& j,
                                                  const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

inline nlohmann::json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw data_error("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

inline void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace detail

inline std::vector<DatasetEntry> load_registry(const fs::path& dir) {
  const nlohmann::json j = detail::read_json(dir / kRegistryFile);
  std::vector<DatasetEntry> out;
  try {
    for (const auto& [name, e] : j.items()) {
      DatasetEntry d;
      d.name = name;
      d.edges_file = e.at("edges").get<std::string>();
      d.truth_file = detail::optional_string(e, "truth").value_or("");
      d.nodes = e.at("nodes").get<std::size_t>();
      d.edge_count = e.at("edge_count").get<std::size_t>();
      d.edges_sha256 = detail::optional_string(e, "edges_sha256");
      d.truth_sha256 = detail::optional_string(e, "truth_sha256");
      d.truth_kind = e.value("truth_kind", "authoritative");
      d.source = e.value("source", "");
      out.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("malformed dataset registry: ") + e.what());
  }
  return out;
}

inline const DatasetEntry& find_dataset(const std::vector<DatasetEntry>& reg,
                                        const std::string& name) {
  for (const auto& d : reg) {
    if (d.name == name) return d;
  }
  throw invalid_argument("unknown dataset '" + name + "'");
}

// Checksums for a dataset: pinned in the registry, else recorded locally by
// an earlier import, else none.
inline DatasetEntry with_local_checksums(DatasetEntry d, const fs::path& dir) {
  if (d.pinned()) return d;
  const fs::path local = dir / kLocalChecksums;
  if (!fs::exists(local)) return d;
  const nlohmann::json j = detail::read_json(local);
  if (auto it = j.find(d.name); it != j.end()) {
    d.edges_sha256 = detail::optional_string(*it, "edges_sha256");
    d.truth_sha256 = detail::optional_string(*it, "truth_sha256");
  }
  return d;
}

struct VerifiedDataset {
  DatasetEntry entry;
  fs::path edges;
  fs::path truth;  // empty when the dataset has no labels on disk
};

// Confirms the files under `dir` match the recorded checksums and expected
// sizes. Throws io_error when files are missing and data_error on any
// mismatch or when no checksum is known.
inline VerifiedDataset verify_dataset(const DatasetEntry& entry,
                                      const fs::path& dir) {
  const DatasetEntry d = with_local_checksums(entry, dir);
  VerifiedDataset v{d, dir / d.edges_file, {}};
  if (!fs::exists(v.edges)) {
    throw io_error("dataset '" + d.name + "' not present: missing '" +
                   v.edges.string() + "'");
  }
  if (!d.edges_sha256) {
    throw data_error("dataset '" + d.name +
                     "' has no recorded checksum; register it with "
                     "fetch-datasets --import");
  }
  const std::string got = sha256_file(v.edges);
  if (got != *d.edges_sha256) {
    throw data_error("checksum mismatch for '" + v.edges.string() +
                     "': expected " + *d.edges_sha256 + ", got " + got);
  }
  if (!d.truth_file.empty() && fs::exists(dir / d.truth_file)) {
    v.truth = dir / d.truth_file;
    if (d.truth_sha256) {
      const std::string t = sha256_file(v.truth);
      if (t != *d.truth_sha256) {
        throw data_error("checksum mismatch for '" + v.truth.string() +
                         "': expected " + *d.truth_sha256 + ", got " + t);
      }
    }
  }
  const Graph g = load_edge_list_file(v.edges.string());
  if (g.node_count() != d.nodes || g.edge_count() != d.edge_count) {
    throw data_error("dataset '" + d.name + "' has N=" +
                     std::to_string(g.node_count()) + ", E=" +
                     std::to_string(g.edge_count()) + "; expected N=" +
                     std::to_string(d.nodes) + ", E=" +
                     std::to_string(d.edge_count));
  }
  return v;
}

// Registers a user-supplied copy of a dataset: checks its size against the
// registry, copies the files into `dir` and records their checksums.
inline VerifiedDataset import_dataset(const std::string& name,
                                      const fs::path& edges,
                                      const std::optional<fs::path>& truth,
                                      const fs::path& dir) {
  const auto registry = load_registry(dir);
  const DatasetEntry& entry = find_dataset(registry, name);
  const Graph g = load_edge_list_file(edges.string());
  if (g.node_count() != entry.nodes || g.edge_count() != entry.edge_count) {
    throw data_error("'" + edges.string() + "' has N=" +
                     std::to_string(g.node_count()) + ", E=" +
                     std::to_string(g.edge_count()) + "; " + name +
                     " needs N=" + std::to_string(entry.nodes) + ", E=" +
                     std::to_string(entry.edge_count));
  }
  if (entry.pinned() && sha256_file(edges) != *entry.edges_sha256) {
    throw data_error("'" + edges.string() + "' differs from the pinned " +
                     name + " edge list");
  }

  const auto copy = [](const fs::path& from, const fs::path& to) {
    std::error_code ec;
    if (fs::exists(to) && fs::equivalent(from, to, ec)) return;
    fs::copy_file(from, to, fs::copy_options::overwrite_existing, ec);
    if (ec) {
      throw io_error("cannot copy '" + from.string() + "' to '" + to.string() +
                     "': " + ec.message());
    }
  };
  copy(edges, dir / entry.edges_file);
  if (truth) {
    if (entry.truth_file.empty()) {
      throw invalid_argument("dataset '" + name + "' takes no truth file");
    }
    copy(*truth, dir / entry.truth_file);
  }

  if (!entry.pinned()) {
    const fs::path local = dir / kLocalChecksums;
    nlohmann::json j =
        fs::exists(local) ? detail::read_json(local) : nlohmann::json::object();
    nlohmann::json rec;
    rec["edges_sha256"] = sha256_file(dir / entry.edges_file);
    rec["truth_sha256"] = truth ? nlohmann::json(sha256_file(
                                      dir / entry.truth_file))
                                : nlohmann::json(nullptr);
    j[name] = rec;
    detail::write_json(local, j);
  }
  return verify_dataset(entry, dir);
}

struct FetchReport {
  std::vector<std::string> ready;
  std::vector<std::string> missing;
};

// Verifies every registered dataset under `src` and copies the verified ones
// (plus the registry) into `dest` when it differs from `src`. Missing,
// unpinned datasets are listed, not fatal; a checksum mismatch throws.
inline FetchReport fetch_datasets(const fs::path& src, const fs::path& dest,
                                  std::ostream& log) {
  const auto registry = load_registry(src);
  std::error_code ec;
  const bool same = fs::exists(dest) && fs::equivalent(src, dest, ec);
  if (!same) {
    fs::create_directories(dest, ec);
    if (ec) throw io_error("cannot create '" + dest.string() + "'");
  }
  FetchReport report;
  nlohmann::json local_out = nlohmann::json::object();
  for (const auto& entry : registry) {
    const DatasetEntry d = with_local_checksums(entry, src);
    if (!fs::exists(src / d.edges_file)) {
      log << d.name << ": not available (" << d.source << ")\n";
      report.missing.push_back(d.name);
      continue;
    }
    const VerifiedDataset v = verify_dataset(entry, src);
    log << d.name << ": ok  N=" << d.nodes << " E=" << d.edge_count
        << "  sha256 " << *v.entry.edges_sha256;
    if (v.truth.empty()) {
      log << "  (no labels)";
    } else if (d.truth_kind != "authoritative") {
      log << "  (labels: " << d.truth_kind << ", report-only)";
    }
    log << '\n';
    report.ready.push_back(d.name);
    if (!entry.pinned()) {
      local_out[d.name] = {{"edges_sha256", *v.entry.edges_sha256},
                           {"truth_sha256", v.entry.truth_sha256
                                                ? nlohmann::json(
                                                      *v.entry.truth_sha256)
                                                : nlohmann::json(nullptr)}};
    }
    if (!same) {
      fs::copy_file(v.edges, dest / d.edges_file,
                    fs::copy_options::overwrite_existing, ec);
      if (!ec && !v.truth.empty()) {
        fs::copy_file(v.truth, dest / d.truth_file,
                      fs::copy_options::overwrite_existing, ec);
      }
      if (ec) throw io_error("cannot copy into '" + dest.string() + "'");
    }
  }
  if (!same) {
    fs::copy_file(src / kRegistryFile, dest / kRegistryFile,
                  fs::copy_options::overwrite_existing, ec);
    if (ec) throw io_error("cannot copy registry into '" + dest.string() + "'");
    if (!local_out.empty()) detail::write_json(dest / kLocalChecksums, local_out);
  }
  return report;
}

}  // namespace elp

#endif  // ELP_DATASETS_HPP_
