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

// Brute-force belief functions over the full power set of a small frame.
// Exponential in the frame size; exists to cross-check the closed forms in
// belief.hpp, never used on the propagation path.

#ifndef ELP_BELIEF_ORACLE_HPP_
#define ELP_BELIEF_ORACLE_HPP_

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "elp/belief.hpp"
#include "elp/error.hpp"

namespace elp {

// Subset of the frame as a bitmask; bit k set <=> omega_k in the subset.
using Subset = std::uint32_t;

inline constexpr std::size_t kMaxOracleFrame = 12;

class GeneralMassFunction {
 public:
  // All mass on the empty set; callers fill in masses with set().
  explicit GeneralMassFunction(std::size_t frame_size)
      : frame_size_(frame_size) {
    if (frame_size == 0 || frame_size > kMaxOracleFrame) {
      throw invalid_argument("oracle frame size must be in [1, 12]");
    }
    masses_.assign(std::size_t{1} << frame_size, 0.0);
  }

  static GeneralMassFunction vacuous(std::size_t frame_size) {
    GeneralMassFunction m(frame_size);
    m.set(m.full(), 1.0);
    return m;
  }

  static GeneralMassFunction from(const MassFunction& restricted) {
    GeneralMassFunction m(restricted.frame_size());
    for (const auto& s : restricted.focal_singletons()) {
      m.set(Subset{1} << s.label, s.mass);
    }
    m.set(m.full(), m.mass(m.full()) + restricted.ignorance());
    return m;
  }

  std::size_t frame_size() const { return frame_size_; }
  Subset full() const { return static_cast<Subset>(masses_.size() - 1); }
  double mass(Subset a) const { return masses_.at(a); }
  void set(Subset a, double m) { masses_.at(a) = m; }
  std::span<const double> masses() const { return masses_; }

  // Sum over nonempty B contained in A.
  double bel(Subset a) const {
    double total = 0.0;
    for (Subset b = 1; b < masses_.size(); ++b) {
      if ((b & ~a) == 0) total += masses_[b];
    }
    return total;
  }

  // Sum over B intersecting A.
  double pl(Subset a) const {
    double total = 0.0;
    for (Subset b = 1; b < masses_.size(); ++b) {
      if ((b & a) != 0) total += masses_[b];
    }
    return total;
  }

  // Pignistic probability of omega_k, normalized by 1 - m(empty).
  double betp(Label k) const {
    const double denom = 1.0 - masses_[0];
    double total = 0.0;
    for (Subset b = 1; b < masses_.size(); ++b) {
      if (b & (Subset{1} << k)) {
        total += masses_[b] / static_cast<double>(std::popcount(b));
      }
    }
    return total / denom;
  }

 private:
  std::size_t frame_size_;
  std::vector<double> masses_;
};

// Dempster's rule by enumeration: the conjunctive combination of all
// sources, then division by 1 - K where K is the mass landing on the empty
// set.
inline GeneralMassFunction combine_oracle(
    std::span<const GeneralMassFunction> sources) {
  if (sources.empty()) throw invalid_argument("nothing to combine");
  const std::size_t c = sources.front().frame_size();
  const std::size_t size = std::size_t{1} << c;

  std::vector<double> acc(sources.front().masses().begin(),
                          sources.front().masses().end());
  std::vector<double> next(size);
  for (std::size_t s = 1; s < sources.size(); ++s) {
    if (sources[s].frame_size() != c) throw invalid_argument("frames differ");
    auto m = sources[s].masses();
    std::fill(next.begin(), next.end(), 0.0);
    for (Subset a = 0; a < size; ++a) {
      if (acc[a] == 0.0) continue;
      for (Subset b = 0; b < size; ++b) {
        if (m[b] == 0.0) continue;
        next[a & b] += acc[a] * m[b];
      }
    }
    acc.swap(next);
  }

  const double conflict = acc[0];
  const double norm = 1.0 - conflict;
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::kConflict, "fully conflicting evidence");
  }
  GeneralMassFunction out(c);
  for (Subset a = 1; a < size; ++a) out.set(a, acc[a] / norm);
  return out;
}

}  // namespace elp

#endif  // ELP_BELIEF_ORACLE_HPP_
