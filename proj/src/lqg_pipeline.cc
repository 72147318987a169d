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

#include "dplqg/lqg_pipeline.h"

#include <string>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"

namespace dplqg {

Eigen::VectorXd Control(const EstimatorState& est, const MatrixXd& l) {
  if (l.cols() != est.x_hat.size()) {
    throw ValidationError("Control: gain has " + std::to_string(l.cols()) +
                          " columns but the estimate has length " +
                          std::to_string(est.x_hat.size()));
  }
  return l * est.x_hat;
}

SteadyStateKalmanFilter::SteadyStateKalmanFilter(MatrixXd closed_loop,
                                                 MatrixXd c, MatrixXd gain)
    : closed_loop_(std::move(closed_loop)),
      c_(std::move(c)),
      gain_(std::move(gain)) {
  const Eigen::Index n = closed_loop_.rows();
  RequireShape(closed_loop_, n, n, "closed loop A + BL");
  RequireShape(c_, c_.rows(), n, "C");
  RequireShape(gain_, n, c_.rows(), "Kalman gain");
}

EstimatorState SteadyStateKalmanFilter::Initialize(
    const VectorXd& prior_mean, const VectorXd& y_bar0) const {
  RequireSize(prior_mean, closed_loop_.rows(), "prior mean");
  RequireSize(y_bar0, c_.rows(), "privatized output");
  return EstimatorState{prior_mean + gain_ * (y_bar0 - c_ * prior_mean), 0};
}

VectorXd SteadyStateKalmanFilter::Predict(const EstimatorState& est) const {
  RequireSize(est.x_hat, closed_loop_.rows(), "estimate");
  return closed_loop_ * est.x_hat;
}

VectorXd SteadyStateKalmanFilter::Innovation(
    const EstimatorState& est, const VectorXd& y_bar_next) const {
  RequireSize(y_bar_next, c_.rows(), "privatized output");
  return y_bar_next - c_ * Predict(est);
}

EstimatorState SteadyStateKalmanFilter::Step(
    const EstimatorState& est, const VectorXd& y_bar_next) const {
  const VectorXd prediction = Predict(est);
  RequireSize(y_bar_next, c_.rows(), "privatized output");
  return EstimatorState{
      prediction + gain_ * (y_bar_next - c_ * prediction), est.k + 1};
}

EstimatorState FilterStep(const EstimatorState& est,
                          const VectorXd& y_bar_next,
                          const FilterSynthesis& synthesis,
                          const MatrixXd& closed_loop, const MatrixXd& c) {
  return SteadyStateKalmanFilter(closed_loop, c, synthesis.kalman_gain)
      .Step(est, y_bar_next);
}

double IncrementalCost(const VectorXd& x, const VectorXd& u,
                       const MatrixXd& q, const MatrixXd& r) {
  RequireShape(q, x.size(), x.size(), "Q");
  RequireShape(r, u.size(), u.size(), "R");
  return x.dot(q * x) + u.dot(r * u);
}

double MovingAverageCost(std::span<const double> stage_costs, std::size_t k) {
  if (stage_costs.empty()) {
    throw ValidationError("MovingAverageCost: empty cost trace");
  }
  if (k < 1 || k > stage_costs.size()) {
    throw ValidationError("MovingAverageCost: k must lie in [1, " +
                          std::to_string(stage_costs.size()) + "]");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += stage_costs[i];
  return sum / static_cast<double>(k);
}

LqgSynthesis SynthesizeLqg(const MatrixXd& a, const MatrixXd& b,
                           const MatrixXd& c, const MatrixXd& w,
                           const MatrixXd& v, const MatrixXd& q,
                           const MatrixXd& r, const RiccatiOptions& options) {
  LqgSynthesis out;
  out.control = SolveControlDare(a, b, q, r, options);
  out.filter = SolveFilterDare(a, c, w, v, options);
  out.closed_loop = a + b * out.control.L;
  return out;
}

}  // namespace dplqg
