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

#ifndef DPLQG_PRIVACY_MECHANISM_H_
#define DPLQG_PRIVACY_MECHANISM_H_

#include <vector>

#include <Eigen/Core>

#include "dplqg/rng.h"

namespace dplqg {

// Per-agent (epsilon, delta) target and the l2 adjacency radius b.
struct PrivacySpec {
  double epsilon = 1.0;
  double delta = 0.05;
  double adjacency_bound = 1.0;

  // Throws ValidationError unless epsilon > 0, 0 < delta < 1/2, b > 0.
  void Validate() const;
};

// Per-coordinate standard deviation of the privacy noise. The covariance of
// an agent's noise vector is sigma^2 * I.
struct NoiseScale {
  double sigma = 0.0;
};

// Standard Gaussian upper tail, 0.5 * erfc(y / sqrt(2)).
double QFunction(double y);

// Inverse of QFunction on (0, 1). Bracketed bisection until the bracket is
// narrower than 1e-12 (relative), then one Newton step.
double QInverse(double p);

// (K + sqrt(K^2 + 2 epsilon)) / (2 epsilon) with K = QInverse(delta).
// Defined for any delta in (0, 1); PrivacySpec narrows delta to (0, 1/2).
double Kappa(double delta, double epsilon);

// Largest singular value of C times b. Rejects a zero C.
double SensitivityBound(const Eigen::MatrixXd& c, double adjacency_bound);

// Minimal admissible noise: sigma = Kappa(delta, epsilon) * s1(C) * b.
NoiseScale CalibrateSigma(const PrivacySpec& spec, const Eigen::MatrixXd& c);

// y + v with v ~ N(0, sigma^2 I), drawn coordinate by coordinate from
// `stream`.
Eigen::VectorXd PrivatizeOutput(const Eigen::VectorXd& y, NoiseScale scale,
                                GaussianStream& stream);

struct DpCheck {
  bool holds = false;
  // min over thresholds of  e^eps * P[M(x~) > t] + delta - P[M(x) > t].
  double min_slack = 0.0;
  // Threshold attaining min_slack; a violating threshold when !holds.
  double worst_threshold = 0.0;
};

// Checks the (epsilon, delta) inequality for half-line events {z > t} on a
// one-dimensional Gaussian mechanism with means y = sensitivity and
// y~ = 0 (the worst-case ordering). Thresholds span [y - 10 sigma,
// y + 10 sigma] at 2001 points. Lower half-lines are covered by symmetry.
DpCheck VerifyDpInequality(double sensitivity, double sigma, double epsilon,
                           double delta);

// True iff the stacked l2 distance between the two trajectories is <= b.
bool AreAdjacent(const std::vector<Eigen::VectorXd>& v,
                 const std::vector<Eigen::VectorXd>& w,
                 double adjacency_bound);

}  // namespace dplqg

#endif  // DPLQG_PRIVACY_MECHANISM_H_
