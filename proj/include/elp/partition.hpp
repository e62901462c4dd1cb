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

#ifndef ELP_PARTITION_HPP_
#define ELP_PARTITION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "elp/error.hpp"

namespace elp {

// Hard assignment of every node to one community. Community ids are
// renumbered 0..C-1 in order of first appearance, so two partitions that
// differ only by naming compare equal.
class Partition {
 public:
  template <class Id>
  explicit Partition(std::span<const Id> ids) {
    if (ids.empty()) throw invalid_argument("partition over zero nodes");
    std::unordered_map<Id, std::uint32_t> dense;
    labels_.reserve(ids.size());
    for (const Id& id : ids) {
      auto [it, inserted] =
          dense.emplace(id, static_cast<std::uint32_t>(dense.size()));
      labels_.push_back(it->second);
    }
    community_count_ = dense.size();
  }

  template <class Id>
  explicit Partition(const std::vector<Id>& ids)
      : Partition(std::span<const Id>(ids)) {}

  std::size_t size() const { return labels_.size(); }
  std::size_t community_count() const { return community_count_; }
  std::uint32_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::uint32_t> labels() const { return labels_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t community_count_ = 0;
};

}  // namespace elp

#endif  // ELP_PARTITION_HPP_
