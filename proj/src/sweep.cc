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

#include "dplqg/sweep.h"

#include <cmath>
#include <exception>
#include <limits>

#include "dplqg/entropy_bounds.h"
#include "dplqg/errors.h"
#include "dplqg/linalg.h"
#include "dplqg/trace_io.h"

namespace dplqg {
namespace {

ReplicateSummary RunOne(const NetworkModel& model,
                        const std::vector<AgentModel>& agents,
                        const LqgSynthesis& synthesis, std::int64_t horizon,
                        std::uint64_t seed) {
  const SimulationTrace trace =
      RunSimulation(model, agents, synthesis, horizon, seed);
  ReplicateSummary s;
  s.seed = seed;
  if (!trace.steps.empty()) s.average_cost = trace.steps.back().average_cost;
  for (const auto& rec : trace.steps) {
    s.max_state_norm = std::max(s.max_state_norm, rec.x.norm());
  }
  return s;
}

// Per-epsilon state shared by every replicate at that grid point.
struct GridPoint {
  std::vector<AgentModel> agents;
  NetworkModel model;
  LqgSynthesis synthesis;
  SweepPoint row;
};

GridPoint PrepareGridPoint(const ExperimentConfig& config,
                           const CostMatrices& cost, double epsilon,
                           double delta) {
  GridPoint gp;
  gp.agents = WithPrivacy(config.agents, epsilon, delta);
  gp.model = AssembleNetwork(gp.agents, cost.q, cost.r);
  gp.synthesis = SynthesizeLqg(gp.model.A, gp.model.B, gp.model.C,
                               gp.model.W, gp.model.V, gp.model.Q,
                               gp.model.R);
  gp.row.epsilon = epsilon;
  gp.row.sigma = gp.model.sigmas.front();
  gp.row.logdet_sigma = LogDet(gp.synthesis.filter.Sigma);
  gp.row.theorem_bound = std::numeric_limits<double>::quiet_NaN();
  if (IsDiagonal(gp.model.C)) {
    const HypothesisCheck check =
        Lemma4Hypothesis(gp.model.A, gp.model.W, gp.model.C, gp.model.V);
    gp.row.hypothesis_holds = check.holds;
    gp.row.hypothesis_margin = check.margin();
    if (check.holds) {
      gp.row.theorem_bound =
          Theorem1Bound(gp.model.A, gp.model.W, gp.model.C, gp.model.V)
              .theorem_bound;
    }
  } else {
    gp.row.hypothesis_margin = std::numeric_limits<double>::quiet_NaN();
  }
  return gp;
}

void ReduceCosts(SweepPoint& row, const std::vector<double>& costs) {
  double sum = 0.0;
  for (double c : costs) sum += c;
  const double n = static_cast<double>(costs.size());
  row.mean_cost = sum / n;
  double sq = 0.0;
  for (double c : costs) sq += (c - row.mean_cost) * (c - row.mean_cost);
  row.cost_stderr = costs.size() > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
}

void ValidateSweep(const SweepSettings& settings) {
  if (settings.epsilons.empty()) {
    throw ValidationError("sweep: epsilon grid is empty");
  }
  if (settings.seeds < 1) throw ValidationError("sweep: seeds must be >= 1");
  if (settings.steps < 1) throw ValidationError("sweep: steps must be >= 1");
}

void RethrowFirst(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::uint64_t ReplicateSeed(std::uint64_t master, int replicate) {
  return DeriveSeed(master, static_cast<std::uint64_t>(replicate),
                    StreamKind::kReplicate);
}

std::vector<ReplicateSummary> RunReplicatesSerial(
    const NetworkModel& model, const std::vector<AgentModel>& agents,
    const LqgSynthesis& synthesis, std::int64_t horizon,
    std::uint64_t master_seed, int count) {
  std::vector<ReplicateSummary> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int r = 0; r < count; ++r) {
    out.push_back(RunOne(model, agents, synthesis, horizon,
                         ReplicateSeed(master_seed, r)));
  }
  return out;
}

std::vector<ReplicateSummary> RunReplicatesParallel(
    const NetworkModel& model, const std::vector<AgentModel>& agents,
    const LqgSynthesis& synthesis, std::int64_t horizon,
    std::uint64_t master_seed, int count) {
  std::vector<ReplicateSummary> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < count; ++r) {
    try {
      out[r] = RunOne(model, agents, synthesis, horizon,
                      ReplicateSeed(master_seed, r));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  RethrowFirst(errors);
  return out;
}

std::vector<SweepPoint> SweepEpsilonSerial(const ExperimentConfig& config,
                                           const SweepSettings& settings) {
  ValidateSweep(settings);
  const CostMatrices cost = ResolveCost(config);
  std::vector<SweepPoint> rows;
  for (double eps : settings.epsilons) {
    GridPoint gp = PrepareGridPoint(config, cost, eps, settings.delta);
    std::vector<double> costs;
    for (int r = 0; r < settings.seeds; ++r) {
      costs.push_back(RunOne(gp.model, gp.agents, gp.synthesis,
                             settings.steps, ReplicateSeed(config.seed, r))
                          .average_cost);
    }
    ReduceCosts(gp.row, costs);
    rows.push_back(gp.row);
  }
  return rows;
}

std::vector<SweepPoint> SweepEpsilonParallel(const ExperimentConfig& config,
                                             const SweepSettings& settings) {
  ValidateSweep(settings);
  const CostMatrices cost = ResolveCost(config);
  const int points = static_cast<int>(settings.epsilons.size());
  const int seeds = settings.seeds;

  std::vector<GridPoint> grid(static_cast<std::size_t>(points));
  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < points; ++p) {
    try {
      grid[p] = PrepareGridPoint(config, cost, settings.epsilons[p],
                                 settings.delta);
    } catch (...) {
      errors[p] = std::current_exception();
    }
  }
  RethrowFirst(errors);

  const int jobs = points * seeds;
  std::vector<double> costs(static_cast<std::size_t>(jobs));
  std::vector<std::exception_ptr> job_errors(costs.size());
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < jobs; ++j) {
    const GridPoint& gp = grid[j / seeds];
    try {
      costs[j] = RunOne(gp.model, gp.agents, gp.synthesis, settings.steps,
                        ReplicateSeed(config.seed, j % seeds))
                     .average_cost;
    } catch (...) {
      job_errors[j] = std::current_exception();
    }
  }
  RethrowFirst(job_errors);

  std::vector<SweepPoint> rows;
  rows.reserve(grid.size());
  for (int p = 0; p < points; ++p) {
    const std::vector<double> slice(costs.begin() + p * seeds,
                                    costs.begin() + (p + 1) * seeds);
    ReduceCosts(grid[p].row, slice);
    rows.push_back(grid[p].row);
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "epsilon,sigma,mean_cost,cost_stderr,logdet_sigma,theorem_bound,"
         "hypothesis_margin,hypothesis_holds\n";
  for (const auto& p : points) {
    out << FormatDouble(p.epsilon) << ',' << FormatDouble(p.sigma) << ','
        << FormatDouble(p.mean_cost) << ',' << FormatDouble(p.cost_stderr)
        << ',' << FormatDouble(p.logdet_sigma) << ','
        << FormatDouble(p.theorem_bound) << ','
        << FormatDouble(p.hypothesis_margin) << ','
        << (p.hypothesis_holds ? "true" : "false") << '\n';
  }
}

}  // namespace dplqg
