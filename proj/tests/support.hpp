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

// Fixtures shared by the test binaries.

#ifndef ELP_TESTS_SUPPORT_HPP_
#define ELP_TESTS_SUPPORT_HPP_

#include <string>
#include <string_view>

#include "elp/evaluation.hpp"
#include "elp/graph.hpp"

namespace elp::testing {

inline std::string data_path(std::string_view file) {
  return std::string(ELP_DEFAULT_DATA_DIR) + "/" + std::string(file);
}

inline Graph karate() { return load_edge_list_file(data_path("karate.edges")); }

inline Partition karate_truth(const Graph& g) {
  return load_partition_file(data_path("karate.truth"), g);
}

inline Graph triangle() { return load_edge_list(std::string_view("a b\nb c\nc a\n")); }

inline Graph two_triangles() {
  return load_edge_list(std::string_view("a b\nb c\nc a\nx y\ny z\nz x\n"));
}

inline Graph single_edge() { return load_edge_list(std::string_view("u v\n")); }

inline Graph graph_of(std::string_view text) { return load_edge_list(text); }

inline NodeIndex node(const Graph& g, std::string_view label) {
  return *g.find(label);
}

}  // namespace elp::testing

#endif  // ELP_TESTS_SUPPORT_HPP_
