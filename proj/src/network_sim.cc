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

#include "dplqg/network_sim.h"

#include <map>
#include <string>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"

namespace dplqg {
namespace {

std::string AgentLabel(std::size_t i) {
  return "agent " + std::to_string(i + 1);
}

// Synchronous in-process transport. Every Send is appended to the tap log
// before it is queued for its receiver.
class MessageBus {
 public:
  explicit MessageBus(std::vector<WireMessage>& tap) : tap_(tap) {}

  void Send(WireMessage msg) {
    tap_.push_back(msg);
    inboxes_[msg.receiver].push_back(std::move(msg));
  }

  std::vector<WireMessage> Drain(int receiver) {
    auto it = inboxes_.find(receiver);
    if (it == inboxes_.end()) return {};
    std::vector<WireMessage> out = std::move(it->second);
    inboxes_.erase(it);
    return out;
  }

 private:
  std::vector<WireMessage>& tap_;
  std::map<int, std::vector<WireMessage>> inboxes_;
};

class Agent {
 public:
  Agent(const AgentModel& model, std::size_t index, double sigma,
        std::uint64_t master_seed)
      : model_(model),
        id_(AgentWireId(index)),
        sigma_(sigma),
        noise_factor_(PsdFactor(model.W)),
        process_(DeriveSeed(master_seed, id_, StreamKind::kProcessNoise)),
        privacy_(DeriveSeed(master_seed, id_, StreamKind::kPrivacyNoise)) {
    x_ = model.x0_mean;
    if (model.x0_cov) {
      GaussianStream init(
          DeriveSeed(master_seed, id_, StreamKind::kInitialState));
      x_ += PsdFactor(*model.x0_cov) * init.NextVector(x_.size());
    }
  }

  WireMessage Report(std::int64_t k) {
    return WireMessage{MessageKind::kMeasurement, id_, kCloudId, k,
                       PrivatizeOutput(model_.C * x_, NoiseScale{sigma_},
                                       privacy_)};
  }

  void Apply(const WireMessage& control) {
    if (control.kind != MessageKind::kControl || control.receiver != id_) {
      throw ValidationError("agent received a message not addressed to it");
    }
    x_ = AgentStep(x_, control.payload, model_.A, model_.B, noise_factor_,
                   process_);
  }

  int id() const { return id_; }
  const Eigen::VectorXd& secret_state() const { return x_; }

 private:
  const AgentModel& model_;
  int id_;
  double sigma_;
  Eigen::MatrixXd noise_factor_;
  GaussianStream process_;
  GaussianStream privacy_;
  Eigen::VectorXd x_;
};

// Holds everything the cloud knows: public models, Q, R, L and the filter.
class Cloud {
 public:
  Cloud(const NetworkModel& model, const LqgSynthesis& synthesis,
        Eigen::VectorXd prior_mean)
      : model_(model),
        l_(synthesis.control.L),
        filter_(synthesis.closed_loop, model.C, synthesis.filter.kalman_gain),
        estimate_{std::move(prior_mean), 0} {}

  // Assembles y_bar(k) from one measurement per agent.
  Eigen::VectorXd Collect(const std::vector<WireMessage>& inbox,
                          std::int64_t k) const {
    Eigen::VectorXd y_bar(model_.C.rows());
    std::vector<bool> seen(model_.agent_count(), false);
    for (const auto& msg : inbox) {
      const std::size_t i = static_cast<std::size_t>(msg.sender - 1);
      if (msg.kind != MessageKind::kMeasurement || msg.k != k ||
          i >= model_.agent_count() || seen[i]) {
        throw ValidationError("cloud received an unexpected message");
      }
      const AgentBlock& blk = model_.blocks[i];
      RequireSize(msg.payload, blk.state_dim, "measurement payload");
      y_bar.segment(blk.state_offset, blk.state_dim) = msg.payload;
      seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw ValidationError("cloud missing measurement from " +
                              AgentLabel(i));
      }
    }
    return y_bar;
  }

  const EstimatorState& Update(const Eigen::VectorXd& y_bar, std::int64_t k) {
    estimate_ = k == 0 ? filter_.Initialize(estimate_.x_hat, y_bar)
                       : filter_.Step(estimate_, y_bar);
    return estimate_;
  }

  Eigen::VectorXd ComputeControl() const { return Control(estimate_, l_); }

  void Dispatch(const Eigen::VectorXd& u, std::int64_t k,
                MessageBus& bus) const {
    for (std::size_t i = 0; i < model_.agent_count(); ++i) {
      const AgentBlock& blk = model_.blocks[i];
      bus.Send(WireMessage{MessageKind::kControl, kCloudId, AgentWireId(i), k,
                           u.segment(blk.input_offset, blk.input_dim)});
    }
  }

 private:
  const NetworkModel& model_;
  Eigen::MatrixXd l_;
  SteadyStateKalmanFilter filter_;
  EstimatorState estimate_;
};

}  // namespace

void AgentModel::Validate() const {
  const Eigen::Index n = A.rows();
  if (n == 0) throw ValidationError("agent state dimension must be positive");
  RequireShape(A, n, n, "A_i");
  if (B.rows() != n || B.cols() == 0) {
    throw ValidationError("B_i must have n_i rows and at least one column");
  }
  RequireShape(C, n, n, "C_i");
  RequireShape(W, n, n, "W_i");
  RequireSize(x0_mean, n, "x0_mean");
  if (x0_cov) {
    RequireShape(*x0_cov, n, n, "x0_cov");
    if (!IsPositiveSemidefinite(*x0_cov)) {
      throw ValidationError("x0_cov must be symmetric PSD");
    }
  }
  if (!IsPositiveDefinite(W)) {
    throw AssumptionError("W_pd", "process noise covariance W_i must be PD");
  }
  privacy.Validate();
}

Eigen::VectorXd StackedPriorMean(const std::vector<AgentModel>& agents) {
  Eigen::Index n = 0;
  for (const auto& a : agents) n += a.x0_mean.size();
  Eigen::VectorXd out(n);
  Eigen::Index offset = 0;
  for (const auto& a : agents) {
    out.segment(offset, a.x0_mean.size()) = a.x0_mean;
    offset += a.x0_mean.size();
  }
  return out;
}

NetworkModel AssembleNetwork(const std::vector<AgentModel>& agents,
                             const MatrixXd& q, const MatrixXd& r) {
  if (agents.empty()) throw ValidationError("network needs at least one agent");
  std::vector<MatrixXd> as, bs, cs, ws, vs;
  NetworkModel model;
  Eigen::Index state_offset = 0;
  Eigen::Index input_offset = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const AgentModel& agent = agents[i];
    try {
      agent.Validate();
    } catch (const ValidationError& e) {
      throw ValidationError(AgentLabel(i) + ": " + e.what());
    }
    const double sigma = CalibrateSigma(agent.privacy, agent.C).sigma;
    as.push_back(agent.A);
    bs.push_back(agent.B);
    cs.push_back(agent.C);
    ws.push_back(agent.W);
    vs.push_back(sigma * sigma *
                 MatrixXd::Identity(agent.state_dim(), agent.state_dim()));
    model.sigmas.push_back(sigma);
    model.blocks.push_back(AgentBlock{state_offset, agent.state_dim(),
                                      input_offset, agent.input_dim()});
    state_offset += agent.state_dim();
    input_offset += agent.input_dim();
  }
  model.A = BlockDiagonal(as);
  model.B = BlockDiagonal(bs);
  model.C = BlockDiagonal(cs);
  model.W = BlockDiagonal(ws);
  model.V = BlockDiagonal(vs);

  RequireShape(q, state_offset, state_offset, "Q");
  RequireShape(r, input_offset, input_offset, "R");
  if (!IsPositiveDefinite(q)) {
    throw AssumptionError("Q_pd", "state cost Q must be symmetric PD");
  }
  if (!IsPositiveDefinite(r)) {
    throw AssumptionError("R_pd", "input cost R must be symmetric PD");
  }
  if (!IsControllable(model.A, model.B)) {
    throw AssumptionError("AB_controllable", "(A, B) is not controllable");
  }
  if (!IsDetectable(model.A, model.C)) {
    throw AssumptionError("AC_detectable", "(A, C) is not detectable");
  }
  model.Q = q;
  model.R = r;
  return model;
}

Eigen::VectorXd AgentStep(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                          const MatrixXd& a, const MatrixXd& b,
                          const MatrixXd& noise_factor,
                          GaussianStream& stream) {
  RequireShape(a, x.size(), x.size(), "A_i");
  RequireShape(b, x.size(), u.size(), "B_i");
  RequireShape(noise_factor, x.size(), noise_factor.cols(), "noise factor");
  return a * x + b * u + noise_factor * stream.NextVector(noise_factor.cols());
}

SimulationTrace RunSimulation(const NetworkModel& model,
                              const std::vector<AgentModel>& agents,
                              const LqgSynthesis& synthesis,
                              std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 0) throw ValidationError("horizon must be nonnegative");
  if (agents.size() != model.agent_count()) {
    throw ValidationError("agent list does not match the network model");
  }
  SimulationTrace trace;
  trace.prior_mean = StackedPriorMean(agents);
  trace.steps.reserve(static_cast<std::size_t>(horizon));
  trace.wire_log.reserve(static_cast<std::size_t>(horizon) * 2 *
                         agents.size());

  std::vector<Agent> participants;
  participants.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    participants.emplace_back(agents[i], i, model.sigmas[i], seed);
  }
  Cloud cloud(model, synthesis, trace.prior_mean);
  MessageBus bus(trace.wire_log);

  double cost_sum = 0.0;
  for (std::int64_t k = 0; k < horizon; ++k) {
    StepRecord rec;
    rec.k = k;
    rec.x.resize(model.state_dim());
    for (std::size_t i = 0; i < participants.size(); ++i) {
      const AgentBlock& blk = model.blocks[i];
      rec.x.segment(blk.state_offset, blk.state_dim) =
          participants[i].secret_state();
      bus.Send(participants[i].Report(k));
    }

    rec.y_bar = cloud.Collect(bus.Drain(kCloudId), k);
    rec.x_hat = cloud.Update(rec.y_bar, k).x_hat;
    rec.u = cloud.ComputeControl();
    cloud.Dispatch(rec.u, k, bus);

    for (auto& agent : participants) {
      for (const auto& msg : bus.Drain(agent.id())) agent.Apply(msg);
    }

    rec.stage_cost = IncrementalCost(rec.x, rec.u, model.Q, model.R);
    cost_sum += rec.stage_cost;
    rec.average_cost = cost_sum / static_cast<double>(k + 1);
    trace.steps.push_back(std::move(rec));
  }
  return trace;
}

std::vector<WireMessage> EavesdropperView(const SimulationTrace& trace) {
  return trace.wire_log;
}

std::vector<Eigen::VectorXd> ReplayEstimates(
    const std::vector<WireMessage>& log, const NetworkModel& model,
    const LqgSynthesis& synthesis, const Eigen::VectorXd& prior_mean) {
  const SteadyStateKalmanFilter filter(synthesis.closed_loop, model.C,
                                       synthesis.filter.kalman_gain);
  std::vector<Eigen::VectorXd> estimates;
  EstimatorState est{prior_mean, 0};
  Eigen::VectorXd y_bar(model.C.rows());
  std::size_t received = 0;
  std::int64_t round = 0;
  for (const auto& msg : log) {
    if (msg.kind != MessageKind::kMeasurement) continue;
    if (msg.k != round) {
      throw ValidationError("replay: measurement rounds out of order");
    }
    const AgentBlock& blk =
        model.blocks.at(static_cast<std::size_t>(msg.sender - 1));
    y_bar.segment(blk.state_offset, blk.state_dim) = msg.payload;
    if (++received == model.agent_count()) {
      est = round == 0 ? filter.Initialize(prior_mean, y_bar)
                       : filter.Step(est, y_bar);
      estimates.push_back(est.x_hat);
      received = 0;
      ++round;
    }
  }
  return estimates;
}

}  // namespace dplqg
