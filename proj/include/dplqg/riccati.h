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

#ifndef DPLQG_RICCATI_H_
#define DPLQG_RICCATI_H_

#include <optional>

#include <Eigen/Core>

namespace dplqg {

struct RiccatiOptions {
  int max_iterations = 100000;
  // Stop when ||X_{j+1} - X_j||_F <= tolerance * ||X_{j+1}||_F.
  double tolerance = 1e-12;
  // Largest relative residual accepted after convergence.
  double residual_limit = 1e-9;
};

// Steady-state LQ regulator: K solves
//   K = A^T K A - A^T K B (R + B^T K B)^{-1} B^T K A + Q
// and L = -(R + B^T K B)^{-1} B^T K A.
struct ControlSynthesis {
  Eigen::MatrixXd K;
  Eigen::MatrixXd L;
  int iterations = 0;
  double residual = 0.0;
};

// Steady-state Kalman filter covariances.
//   Sigma    = A Sigma A^T - A Sigma C^T (C Sigma C^T + V)^{-1} C Sigma A^T + W
//   SigmaBar = Sigma - Sigma C^T (C Sigma C^T + V)^{-1} C Sigma
//   kalman_gain = SigmaBar C^T V^{-1}
struct FilterSynthesis {
  Eigen::MatrixXd Sigma;
  Eigen::MatrixXd SigmaBar;
  Eigen::MatrixXd kalman_gain;
  int iterations = 0;
  double residual = 0.0;
};

// Fixed-point iteration of the control Riccati map from K_0 = Q, with
// symmetrization after every step.
//
// Requires Q symmetric PSD, R symmetric PD, (A, B) stabilizable and
// (A, Q^{1/2}) detectable; violations throw AssumptionError before any
// iteration. Throws ConvergenceError when the cap is reached or the final
// residual exceeds options.residual_limit.
ControlSynthesis SolveControlDare(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b,
                                  const Eigen::MatrixXd& q,
                                  const Eigen::MatrixXd& r,
                                  const RiccatiOptions& options = {});

// Filter counterpart, iterated from `initial` (default W). Requires W PD,
// V PD and (A, C) detectable.
FilterSynthesis SolveFilterDare(
    const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
    const Eigen::MatrixXd& w, const Eigen::MatrixXd& v,
    const RiccatiOptions& options = {},
    const std::optional<Eigen::MatrixXd>& initial = std::nullopt);

// ||RHS(K) - K||_F / max(||K||_F, ||Q||_F) for the control equation.
double ControlDareResidual(const Eigen::MatrixXd& k, const Eigen::MatrixXd& a,
                           const Eigen::MatrixXd& b, const Eigen::MatrixXd& q,
                           const Eigen::MatrixXd& r);

// ||RHS(Sigma) - Sigma||_F / max(||Sigma||_F, ||W||_F) for the filter
// equation.
double FilterDareResidual(const Eigen::MatrixXd& sigma,
                          const Eigen::MatrixXd& a, const Eigen::MatrixXd& c,
                          const Eigen::MatrixXd& w, const Eigen::MatrixXd& v);

// Sigma - Sigma C^T (C Sigma C^T + V)^{-1} C Sigma.
Eigen::MatrixXd PosteriorCovariance(const Eigen::MatrixXd& sigma,
                                    const Eigen::MatrixXd& c,
                                    const Eigen::MatrixXd& v);

}  // namespace dplqg

#endif  // DPLQG_RICCATI_H_
