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

#ifndef DPLQG_SWEEP_H_
#define DPLQG_SWEEP_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "dplqg/config.h"
#include "dplqg/lqg_pipeline.h"
#include "dplqg/network_sim.h"

namespace dplqg {

// Multi-run kernels. Each comes in a serial reference form and an OpenMP
// form; both derive every run's seed the same way and reduce in the same
// fixed order, so their outputs are bit-identical.

struct ReplicateSummary {
  std::uint64_t seed = 0;
  // Moving-average cost at the last step (mean stage cost over the run).
  double average_cost = 0.0;
  double max_state_norm = 0.0;
};

// Seed of replicate r under a master seed.
std::uint64_t ReplicateSeed(std::uint64_t master, int replicate);

std::vector<ReplicateSummary> RunReplicatesSerial(
    const NetworkModel& model, const std::vector<AgentModel>& agents,
    const LqgSynthesis& synthesis, std::int64_t horizon,
    std::uint64_t master_seed, int count);

std::vector<ReplicateSummary> RunReplicatesParallel(
    const NetworkModel& model, const std::vector<AgentModel>& agents,
    const LqgSynthesis& synthesis, std::int64_t horizon,
    std::uint64_t master_seed, int count);

struct SweepPoint {
  double epsilon = 0.0;
  // Noise scale of the first agent.
  double sigma = 0.0;
  // Mean over replicates of the per-run average stage cost.
  double mean_cost = 0.0;
  // Standard error of mean_cost across replicates.
  double cost_stderr = 0.0;
  double logdet_sigma = 0.0;
  // NaN when the bound's hypothesis fails or C is not diagonal.
  double theorem_bound = 0.0;
  double hypothesis_margin = 0.0;
  bool hypothesis_holds = false;
};

// For each epsilon in settings.epsilons: every agent gets (epsilon,
// settings.delta), the network is re-synthesized, and settings.seeds
// replicates of settings.steps rounds are averaged. Replicate r uses
// ReplicateSeed(config.seed, r) at every grid point (common random numbers).
std::vector<SweepPoint> SweepEpsilonSerial(const ExperimentConfig& config,
                                           const SweepSettings& settings);
std::vector<SweepPoint> SweepEpsilonParallel(const ExperimentConfig& config,
                                             const SweepSettings& settings);

// epsilon,sigma,mean_cost,cost_stderr,logdet_sigma,theorem_bound,
// hypothesis_margin,hypothesis_holds
void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace dplqg

#endif  // DPLQG_SWEEP_H_
