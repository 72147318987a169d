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

#ifndef DPLQG_NETWORK_SIM_H_
#define DPLQG_NETWORK_SIM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dplqg/lqg_pipeline.h"
#include "dplqg/privacy_mechanism.h"
#include "dplqg/rng.h"

namespace dplqg {

// Participant ids on the wire. Agent i (0-based index) is id i + 1.
inline constexpr int kCloudId = 0;
inline int AgentWireId(std::size_t index) { return static_cast<int>(index) + 1; }

// One agent: x_i(k+1) = A_i x_i(k) + B_i u_i(k) + w_i(k), w_i ~ N(0, W_i),
// reporting y_i(k) = C_i x_i(k) through the Gaussian mechanism.
struct AgentModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd W;
  PrivacySpec privacy;
  // Public prior mean of x_i(0), known to the cloud.
  Eigen::VectorXd x0_mean;
  // Covariance of the secret x_i(0) around x0_mean. Absent means the
  // true initial state equals the mean.
  std::optional<Eigen::MatrixXd> x0_cov;

  Eigen::Index state_dim() const { return A.rows(); }
  Eigen::Index input_dim() const { return B.cols(); }

  // Shapes, W_i PD, C_i square, privacy parameters.
  void Validate() const;
};

// Where agent i's blocks sit in the stacked network vectors.
struct AgentBlock {
  Eigen::Index state_offset = 0;
  Eigen::Index state_dim = 0;
  Eigen::Index input_offset = 0;
  Eigen::Index input_dim = 0;
};

// Block-diagonal network aggregate plus the cloud-private cost.
struct NetworkModel {
  Eigen::MatrixXd A, B, C, W, V;
  Eigen::MatrixXd Q, R;
  std::vector<AgentBlock> blocks;
  // Calibrated per-agent noise scale; V's block for agent i is sigma_i^2 I.
  std::vector<double> sigmas;

  Eigen::Index state_dim() const { return A.rows(); }
  Eigen::Index input_dim() const { return B.cols(); }
  std::size_t agent_count() const { return blocks.size(); }
};

// Builds the direct sums and V from CalibrateSigma, then checks Q PD, R PD,
// (A, B) controllable and (A, C) detectable. Failures throw AssumptionError
// naming the condition; shape problems throw ValidationError.
NetworkModel AssembleNetwork(const std::vector<AgentModel>& agents,
                             const Eigen::MatrixXd& q,
                             const Eigen::MatrixXd& r);

// x_i(k+1) = A x + B u + F z with z standard normal and F F^T = W (see
// PsdFactor). A zero `noise_factor` gives the noiseless update.
Eigen::VectorXd AgentStep(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          const Eigen::MatrixXd& noise_factor,
                          GaussianStream& stream);

enum class MessageKind { kMeasurement, kControl };

struct WireMessage {
  MessageKind kind = MessageKind::kMeasurement;
  int sender = 0;
  int receiver = 0;
  std::int64_t k = 0;
  // y_bar_i(k) for measurements, u*_i(k) for controls.
  Eigen::VectorXd payload;
};

// One row of the simulation: everything at time k. `x` is the secret true
// state and is only kept on the simulator side.
struct StepRecord {
  std::int64_t k = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd x_hat;
  Eigen::VectorXd u;
  Eigen::VectorXd y_bar;
  double stage_cost = 0.0;
  double average_cost = 0.0;
};

struct SimulationTrace {
  Eigen::VectorXd prior_mean;
  std::vector<StepRecord> steps;
  // Every message on the bus, in send order.
  std::vector<WireMessage> wire_log;
};

// Runs the agent/cloud protocol for `horizon` rounds. Per round k:
// each agent privatizes and sends y_bar_i(k); the cloud updates x_hat(k),
// computes u*(k) = L x_hat(k) and sends u*_i(k) to agent i alone; each agent
// then advances its dynamics. The master seed is split per agent into
// process-noise, privacy-noise and initial-state streams via DeriveSeed.
SimulationTrace RunSimulation(const NetworkModel& model,
                              const std::vector<AgentModel>& agents,
                              const LqgSynthesis& synthesis,
                              std::int64_t horizon, std::uint64_t seed);

// The passive observer's view: the wire log only.
std::vector<WireMessage> EavesdropperView(const SimulationTrace& trace);

// Re-runs an identical filter on the measurement messages of `log`.
// Returns x_hat(k) for every round present in the log.
std::vector<Eigen::VectorXd> ReplayEstimates(
    const std::vector<WireMessage>& log, const NetworkModel& model,
    const LqgSynthesis& synthesis, const Eigen::VectorXd& prior_mean);

// Network-level prior mean stacked from the agents.
Eigen::VectorXd StackedPriorMean(const std::vector<AgentModel>& agents);

}  // namespace dplqg

#endif  // DPLQG_NETWORK_SIM_H_
