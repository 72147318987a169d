// Copyright 2026 The dplqg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dplqg/rng.h"

#include <cmath>
#include <numbers>

namespace dplqg {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t agent_id,
                         StreamKind kind) {
  std::uint64_t state = master;
  std::uint64_t h = SplitMix64(state);
  state = h ^ agent_id;
  h = SplitMix64(state);
  state = h ^ static_cast<std::uint64_t>(kind);
  return SplitMix64(state);
}

double GaussianStream::NextUniform() {
  constexpr double kScale = 0x1.0p-53;
  return static_cast<double>(engine_() >> 11) * kScale;
}

double GaussianStream::Next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  constexpr double kScale = 0x1.0p-53;
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;
  const double u2 = NextUniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd GaussianStream::NextVector(Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Next();
  return v;
}

}  // namespace dplqg
