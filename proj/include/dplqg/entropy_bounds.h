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

#ifndef DPLQG_ENTROPY_BOUNDS_H_
#define DPLQG_ENTROPY_BOUNDS_H_

#include <optional>
#include <string>

#include <Eigen/Core>

namespace dplqg {

// Privacy-utility bound on the log-determinant of the steady-state a priori
// covariance Sigma of the cloud's filter.
//
// Notation: lambda_i is the i-th largest eigenvalue, s_i the i-th largest
// singular value, sigma_i^2 = V_ii, and
//
//   gamma_i = sigma_i^2 W_ii / (sigma_i^2 + C_ii^2 W_ii)
//   eta     = s_n^2(A) max_i gamma_i + lambda_n(W)
//   rho     = min_i C_ii^2 / sigma_i^2          (= lambda_n(C^T V^-1 C))
//
// The matrix bound
//   Sigma <= lambda_1(W) / (1 + eta rho - s_1^2(A)) * A A^T + W
// holds whenever s_1^2(A) < 1 + eta rho, and taking traces gives
//   logdet Sigma < lambda_1(W) / (1 + eta rho - s_1^2(A)) * sum s_i^2(A)
//                  + tr(W).
//
// All bound operations require C and V diagonal (C square); they throw
// ValidationError otherwise.
struct EntropyBoundReport {
  Eigen::VectorXd gamma_diag;
  double eta = 0.0;
  bool hypothesis_holds = false;
  // 1 + eta rho - s_1^2(A).
  double hypothesis_margin = 0.0;
  double logdet_sigma = 0.0;
  double theorem_bound = 0.0;
  // eta * rho from the expanded per-coordinate formula.
  double privacy_term = 0.0;
  // lambda_n(C^T V^-1 C) computed from the matrix directly.
  double min_precision = 0.0;
  // lambda_1(Sigma); never below eta.
  double sigma_top_eigenvalue = 0.0;
  // Intermediate links of the chain, tightest first:
  //   logdet(bound matrix) <= n log(tr(bound)/n) < theorem_bound.
  double bound_matrix_logdet = 0.0;
  double trace_bound = 0.0;
  std::optional<double> remark_estimate;
};

// Gamma = diag(gamma_1, ..., gamma_n).
Eigen::MatrixXd GammaMatrix(const Eigen::MatrixXd& w, const Eigen::MatrixXd& c,
                            const Eigen::MatrixXd& v);

// eta as defined above.
double EtaLowerBound(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w,
                     const Eigen::MatrixXd& c, const Eigen::MatrixXd& v);

struct HypothesisCheck {
  bool holds = false;
  double lhs = 0.0;  // s_1^2(A)
  double rhs = 0.0;  // 1 + eta rho
  double margin() const { return rhs - lhs; }
};

HypothesisCheck Lemma4Hypothesis(const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& w,
                                 const Eigen::MatrixXd& c,
                                 const Eigen::MatrixXd& v);

// Throws BoundInapplicableError when the hypothesis fails.
Eigen::MatrixXd SigmaUpperBoundMatrix(const Eigen::MatrixXd& a,
                                      const Eigen::MatrixXd& w,
                                      const Eigen::MatrixXd& c,
                                      const Eigen::MatrixXd& v);

// Solves the filter Riccati equation for Sigma and fills the report. Throws
// BoundInapplicableError when the hypothesis fails.
EntropyBoundReport Theorem1Bound(const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& w,
                                 const Eigen::MatrixXd& c,
                                 const Eigen::MatrixXd& v);

// Homogeneous approximation for C = I, W = omega I, common sigma:
//   (s_n^2(A)/(sigma^2 + omega) + 1/sigma^2)^{-1} sum s_i^2(A) + n omega.
double Remark1Estimate(const Eigen::MatrixXd& a, double omega, double sigma,
                       Eigen::Index n);

// Sum of log eigenvalues via Cholesky. Throws ValidationError unless m is PD.
double LogDet(const Eigen::MatrixXd& m);

// Flat "key=value" lines, one per field, in declaration order.
std::string SerializeReport(const EntropyBoundReport& report);

}  // namespace dplqg

#endif  // DPLQG_ENTROPY_BOUNDS_H_
