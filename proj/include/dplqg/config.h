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

#ifndef DPLQG_CONFIG_H_
#define DPLQG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dplqg/network_sim.h"

namespace dplqg {

// A cost matrix given either explicitly or as "random PD from seed".
struct MatrixSource {
  std::optional<Eigen::MatrixXd> value;
  std::optional<std::uint64_t> random_seed;

  // The explicit matrix (checked against n), or RandomPositiveDefinite(n)
  // drawn from DeriveSeed(random_seed, 0, kCostMatrix).
  Eigen::MatrixXd Resolve(Eigen::Index n) const;
};

struct SweepSettings {
  std::vector<double> epsilons;
  double delta = 0.25;
  std::int64_t steps = 2500;
  int seeds = 10;
};

// One experiment document. JSON layout:
//
//   {
//     "name": "case_study_2agent",
//     "agents": [
//       {"A": [[1, 0.1], [0, 1]], "B": [[0], [1]], "C": [[1, 0], [0, 1]],
//        "W": [[1, 0.5], [0.5, 1]],
//        "privacy": {"epsilon": 0.1, "delta": 0.01, "b": 1},
//        "x0_mean": [1, 0], "x0_cov": [[...]]},          // x0_cov optional
//       ...],
//     "cost": {"Q": {"random_pd": {"seed": 11}}, "R": [[1]]},
//     "simulation": {"steps": 200, "seed": 1},
//     "sweep": {"epsilons": [...], "delta": 0.25, "steps": 2500,
//               "seeds": 10},                              // optional
//     "output_dir": "out"
//   }
//
// Matrices are row lists, row-major.
struct ExperimentConfig {
  std::string name;
  std::vector<AgentModel> agents;
  MatrixSource q;
  MatrixSource r;
  std::int64_t steps = 200;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::optional<SweepSettings> sweep;
};

// Throws ValidationError on malformed documents.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);
std::string SerializeConfig(const ExperimentConfig& config);

struct CostMatrices {
  Eigen::MatrixXd q;
  Eigen::MatrixXd r;
};
CostMatrices ResolveCost(const ExperimentConfig& config);

// AssembleNetwork on the config's agents and resolved cost.
NetworkModel BuildNetwork(const ExperimentConfig& config);

// Copy of `agents` with every agent's (epsilon, delta) replaced.
std::vector<AgentModel> WithPrivacy(const std::vector<AgentModel>& agents,
                                    double epsilon, double delta);

}  // namespace dplqg

#endif  // DPLQG_CONFIG_H_
