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

#ifndef DPLQG_LQG_PIPELINE_H_
#define DPLQG_LQG_PIPELINE_H_

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "dplqg/riccati.h"

namespace dplqg {

// The cloud's state estimate x_hat(k).
struct EstimatorState {
  Eigen::VectorXd x_hat;
  std::int64_t k = 0;
};

// u*(k) = L x_hat(k).
Eigen::VectorXd Control(const EstimatorState& est, const Eigen::MatrixXd& l);

// One step of the time-invariant predictor-corrector
//   x_hat(k+1) = F x_hat(k) + G (y_bar(k+1) - C F x_hat(k))
// with F = A + B L the closed loop and G = SigmaBar C^T V^{-1} taken from
// `synthesis.kalman_gain`.
EstimatorState FilterStep(const EstimatorState& est,
                          const Eigen::VectorXd& y_bar_next,
                          const FilterSynthesis& synthesis,
                          const Eigen::MatrixXd& closed_loop,
                          const Eigen::MatrixXd& c);

// Holds the precomputed matrices the cloud needs at run time.
class SteadyStateKalmanFilter {
 public:
  SteadyStateKalmanFilter(Eigen::MatrixXd closed_loop, Eigen::MatrixXd c,
                          Eigen::MatrixXd gain);

  // x_hat(0): the public prior mean corrected by the first measurement.
  EstimatorState Initialize(const Eigen::VectorXd& prior_mean,
                            const Eigen::VectorXd& y_bar0) const;
  EstimatorState Step(const EstimatorState& est,
                      const Eigen::VectorXd& y_bar_next) const;
  // y_bar(k+1) - C F x_hat(k).
  Eigen::VectorXd Innovation(const EstimatorState& est,
                             const Eigen::VectorXd& y_bar_next) const;
  // F x_hat(k), the prediction of x(k+1).
  Eigen::VectorXd Predict(const EstimatorState& est) const;

  const Eigen::MatrixXd& closed_loop() const { return closed_loop_; }
  const Eigen::MatrixXd& gain() const { return gain_; }

 private:
  Eigen::MatrixXd closed_loop_;
  Eigen::MatrixXd c_;
  Eigen::MatrixXd gain_;
};

// x^T Q x + u^T R u.
double IncrementalCost(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                       const Eigen::MatrixXd& q, const Eigen::MatrixXd& r);

// Mean of the first k stage costs (k >= 1).
double MovingAverageCost(std::span<const double> stage_costs, std::size_t k);

// Offline products of the cloud: control gain, filter covariances, A + BL.
struct LqgSynthesis {
  ControlSynthesis control;
  FilterSynthesis filter;
  Eigen::MatrixXd closed_loop;
};

LqgSynthesis SynthesizeLqg(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& c, const Eigen::MatrixXd& w,
                           const Eigen::MatrixXd& v, const Eigen::MatrixXd& q,
                           const Eigen::MatrixXd& r,
                           const RiccatiOptions& options = {});

}  // namespace dplqg

#endif  // DPLQG_LQG_PIPELINE_H_
