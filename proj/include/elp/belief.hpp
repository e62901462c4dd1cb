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

// Mass functions restricted to singletons plus the whole frame, and the
// operations on them: the evidence-strength mapping phi, simple (one label)
// bbas, closed-form Dempster combination, plausibility and pignistic
// probability. The unrestricted power-set form lives in belief_oracle.hpp.

#ifndef ELP_BELIEF_HPP_
#define ELP_BELIEF_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elp/error.hpp"

namespace elp {

using Label = std::uint32_t;

// Largest mass a single piece of evidence may put on a singleton, so that
// -log(1 - alpha) stays finite.
inline constexpr double kAlphaCap = 1.0 - 1e-9;
inline constexpr double kMassTolerance = 1e-9;

// alpha0 * exp(-gamma * (1 - delta) / delta), phi(0) = 0, capped at kAlphaCap.
inline double phi(double delta, double alpha0, double gamma) {
  if (delta <= 0.0) return 0.0;
  const double v = alpha0 * std::exp(-gamma * (1.0 - delta) / delta);
  return std::min(v, kAlphaCap);
}

// 1 / median{((1 - delta) / delta)^2 : 0 < delta < 1}.
inline double gamma_heuristic(std::span<const double> deltas) {
  std::vector<double> pool;
  pool.reserve(deltas.size());
  for (double d : deltas) {
    if (d > 0.0 && d < 1.0) {
      const double r = (1.0 - d) / d;
      pool.push_back(r * r);
    }
  }
  if (pool.empty()) {
    throw invalid_argument(
        "no influence value lies in (0, 1); set gamma explicitly");
  }
  const std::size_t mid = pool.size() / 2;
  std::nth_element(pool.begin(), pool.begin() + mid, pool.end());
  double median = pool[mid];
  if (pool.size() % 2 == 0) {
    const double lower = *std::max_element(pool.begin(), pool.begin() + mid);
    median = 0.5 * (lower + median);
  }
  return 1.0 / median;
}

struct SingletonMass {
  Label label;
  double mass;

  friend bool operator==(const SingletonMass&, const SingletonMass&) = default;
};

// A bba whose focal elements are singletons and the whole frame. Only
// nonzero singleton masses are stored, sorted by label.
class MassFunction {
 public:
  // Vacuous bba: all mass on the frame.
  explicit MassFunction(std::size_t frame_size)
      : frame_size_(frame_size), ignorance_(1.0) {}

  MassFunction(std::size_t frame_size, std::vector<SingletonMass> singletons,
               double ignorance)
      : frame_size_(frame_size),
        singletons_(std::move(singletons)),
        ignorance_(ignorance) {
    std::sort(singletons_.begin(), singletons_.end(),
              [](const SingletonMass& a, const SingletonMass& b) {
                return a.label < b.label;
              });
    std::erase_if(singletons_,
                  [](const SingletonMass& s) { return s.mass == 0.0; });
    validate();
  }

  static MassFunction from_dense(std::span<const double> singletons,
                                 double ignorance) {
    std::vector<SingletonMass> sparse;
    for (std::size_t k = 0; k < singletons.size(); ++k) {
      sparse.push_back({static_cast<Label>(k), singletons[k]});
    }
    return MassFunction(singletons.size(), std::move(sparse), ignorance);
  }

  std::size_t frame_size() const { return frame_size_; }
  double ignorance() const { return ignorance_; }
  std::span<const SingletonMass> focal_singletons() const {
    return singletons_;
  }

  double singleton(Label k) const {
    auto it = std::lower_bound(
        singletons_.begin(), singletons_.end(), k,
        [](const SingletonMass& s, Label l) { return s.label < l; });
    return (it != singletons_.end() && it->label == k) ? it->mass : 0.0;
  }

  // Contour function: m({k}) + m(frame).
  double pl(Label k) const { return singleton(k) + ignorance_; }

  std::vector<double> dense() const {
    std::vector<double> out(frame_size_, 0.0);
    for (const auto& s : singletons_) out[s.label] = s.mass;
    return out;
  }

  // m({k}) + m(frame) / c.
  std::vector<double> betp() const {
    std::vector<double> out(frame_size_,
                            ignorance_ / static_cast<double>(frame_size_));
    for (const auto& s : singletons_) out[s.label] += s.mass;
    return out;
  }

  double total() const {
    double t = ignorance_;
    for (const auto& s : singletons_) t += s.mass;
    return t;
  }

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  void validate() const {
    if (frame_size_ == 0) throw invalid_argument("empty frame");
    if (!(ignorance_ >= 0.0)) throw invalid_argument("negative mass");
    for (const auto& s : singletons_) {
      if (s.label >= frame_size_) throw invalid_argument("label outside frame");
      if (!(s.mass >= 0.0)) throw invalid_argument("negative mass");
    }
    for (std::size_t i = 1; i < singletons_.size(); ++i) {
      if (singletons_[i].label == singletons_[i - 1].label) {
        throw invalid_argument("duplicate singleton label");
      }
    }
    if (std::abs(total() - 1.0) > kMassTolerance) {
      throw invalid_argument("masses do not sum to 1");
    }
  }

  std::size_t frame_size_;
  std::vector<SingletonMass> singletons_;
  double ignorance_;
};

inline MassFunction simple_mass(std::size_t frame_size, Label k, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw invalid_argument("simple mass weight outside [0, 1]");
  }
  return MassFunction(frame_size, {{k, alpha}}, 1.0 - alpha);
}

inline double pl(const MassFunction& m, Label k) { return m.pl(k); }
inline std::vector<double> betp(const MassFunction& m) { return m.betp(); }

// One piece of evidence: mass alpha on {label}, the rest on the frame.
struct SimpleEvidence {
  Label label;
  double alpha;
};

// Dempster combination of simple bbas in closed form. With
// P_k = prod over sources on k of (1 - alpha), the unnormalized result is
//   m({k}) = (1 - P_k) * prod_{l != k} P_l,   m(frame) = prod_l P_l,
// evaluated through log-weights V_k = -log P_k so that many strong sources
// neither underflow nor overflow.
inline MassFunction combine_simple(std::size_t frame_size,
                                   std::span<const SimpleEvidence> evidence) {
  if (frame_size == 0) throw invalid_argument("empty frame");
  std::vector<Label> categorical;
  std::vector<std::pair<Label, double>> weights;  // (label, V_label)
  for (const auto& e : evidence) {
    if (e.label >= frame_size) throw invalid_argument("label outside frame");
    if (!(e.alpha >= 0.0 && e.alpha <= 1.0)) {
      throw invalid_argument("evidence weight outside [0, 1]");
    }
    if (e.alpha == 0.0) continue;
    if (e.alpha == 1.0) {
      categorical.push_back(e.label);
      continue;
    }
    weights.emplace_back(e.label, -std::log1p(-e.alpha));
  }

  if (!categorical.empty()) {
    const Label k = categorical.front();
    for (Label l : categorical) {
      if (l != k) throw Error(ErrorKind::kConflict, "fully conflicting evidence");
    }
    return MassFunction(frame_size, {{k, 1.0}}, 0.0);
  }
  if (weights.empty()) return MassFunction(frame_size);

  std::stable_sort(
      weights.begin(), weights.end(),
      [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Label, double>> per_label;
  for (const auto& [label, v] : weights) {
    if (!per_label.empty() && per_label.back().first == label) {
      per_label.back().second += v;
    } else {
      per_label.emplace_back(label, v);
    }
  }

  double vmax = 0.0;
  for (const auto& [label, v] : per_label) vmax = std::max(vmax, v);
  std::vector<SingletonMass> out;
  out.reserve(per_label.size());
  double ignorance = std::exp(-vmax);
  double norm = ignorance;
  for (const auto& [label, v] : per_label) {
    const double m = -std::expm1(-v) * std::exp(v - vmax);
    out.push_back({label, m});
    norm += m;
  }
  for (auto& s : out) s.mass /= norm;
  ignorance /= norm;
  return MassFunction(frame_size, std::move(out), ignorance);
}

// Same combination over MassFunction sources, each with at most one
// nonzero singleton mass.
inline MassFunction combine_simple(std::span<const MassFunction> sources) {
  if (sources.empty()) throw invalid_argument("nothing to combine");
  const std::size_t c = sources.front().frame_size();
  std::vector<SimpleEvidence> evidence;
  evidence.reserve(sources.size());
  for (const auto& m : sources) {
    if (m.frame_size() != c) throw invalid_argument("frames differ");
    auto focal = m.focal_singletons();
    if (focal.size() > 1) {
      throw invalid_argument("source has more than one singleton focal element");
    }
    if (!focal.empty()) evidence.push_back({focal[0].label, focal[0].mass});
  }
  return combine_simple(c, evidence);
}

}  // namespace elp

#endif  // ELP_BELIEF_HPP_
