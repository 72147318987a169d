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

#ifndef DPLQG_RNG_H_
#define DPLQG_RNG_H_

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace dplqg {

// Independent random streams derived from one master seed.
enum class StreamKind : std::uint64_t {
  kProcessNoise = 1,
  kPrivacyNoise = 2,
  kInitialState = 3,
  kCostMatrix = 4,
  kReplicate = 5,
};

// One SplitMix64 output step; advances `state`.
std::uint64_t SplitMix64(std::uint64_t& state);

// Sub-seed for (agent, kind). The agent id and stream kind are mixed into the
// master seed through three SplitMix64 rounds, so neighbouring ids give
// unrelated streams.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t agent_id,
                         StreamKind kind);

// Standard normal draws from a std::mt19937_64 engine.
//
// Uniforms are taken as the top 53 bits of each 64-bit engine output, and
// pairs of uniforms go through the Box-Muller transform:
//
//   u1 = ((x1 >> 11) + 1) * 2^-53          in (0, 1]
//   u2 =  (x2 >> 11)      * 2^-53          in [0, 1)
//   z0 = sqrt(-2 ln u1) * cos(2 pi u2)
//   z1 = sqrt(-2 ln u1) * sin(2 pi u2)
//
// z0 is returned first, z1 is cached for the next call. Both the engine and
// the transform are fully specified, so sequences are reproducible across
// platforms and languages (unlike std::normal_distribution).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double Next();
  Eigen::VectorXd NextVector(Eigen::Index n);

 private:
  double NextUniform();

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace dplqg

#endif  // DPLQG_RNG_H_
