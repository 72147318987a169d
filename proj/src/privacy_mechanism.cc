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

#include "dplqg/privacy_mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"

namespace dplqg {
namespace {

// Q(y) underflows to zero just past this magnitude.
constexpr double kTailLimit = 38.5;
constexpr int kDpGridPoints = 2001;
constexpr double kDpGridHalfWidth = 10.0;

double StandardNormalPdf(double y) {
  return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

void PrivacySpec::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("privacy epsilon must be positive and finite, got " +
                          std::to_string(epsilon));
  }
  if (!(delta > 0.0 && delta < 0.5)) {
    throw ValidationError("privacy delta must lie in (0, 1/2), got " +
                          std::to_string(delta));
  }
  if (!(adjacency_bound > 0.0) || !std::isfinite(adjacency_bound)) {
    throw ValidationError("adjacency bound b must be positive, got " +
                          std::to_string(adjacency_bound));
  }
}

double QFunction(double y) {
  if (!std::isfinite(y)) {
    throw ValidationError("QFunction: argument must be finite");
  }
  return 0.5 * std::erfc(y / std::numbers::sqrt2);
}

double QInverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("QInverse: probability must lie in (0, 1), got " +
                          std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // Q is decreasing: Q(lo) >= p >= Q(hi).
  double lo = -kTailLimit;
  double hi = kTailLimit;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(0.5 * (lo + hi)))) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (QFunction(mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  const double pdf = StandardNormalPdf(y);
  if (pdf > 0.0) {
    const double newton = y + (QFunction(y) - p) / pdf;
    if (newton >= lo && newton <= hi) y = newton;
  }
  return y;
}

double Kappa(double delta, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("Kappa: epsilon must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("Kappa: delta must lie in (0, 1)");
  }
  const double k = QInverse(delta);
  return (k + std::sqrt(k * k + 2.0 * epsilon)) / (2.0 * epsilon);
}

double SensitivityBound(const Eigen::MatrixXd& c, double adjacency_bound) {
  if (c.size() == 0 || c.isZero(0.0)) {
    throw ValidationError(
        "SensitivityBound: zero output matrix has zero sensitivity");
  }
  if (!(adjacency_bound > 0.0)) {
    throw ValidationError("SensitivityBound: b must be positive");
  }
  return SingularValues(c)[0] * adjacency_bound;
}

NoiseScale CalibrateSigma(const PrivacySpec& spec, const Eigen::MatrixXd& c) {
  spec.Validate();
  return NoiseScale{Kappa(spec.delta, spec.epsilon) *
                    SensitivityBound(c, spec.adjacency_bound)};
}

Eigen::VectorXd PrivatizeOutput(const Eigen::VectorXd& y, NoiseScale scale,
                                GaussianStream& stream) {
  if (!(scale.sigma > 0.0) || !std::isfinite(scale.sigma)) {
    throw ValidationError("PrivatizeOutput: sigma must be positive");
  }
  Eigen::VectorXd out = y;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out[i] += scale.sigma * stream.Next();
  }
  return out;
}

DpCheck VerifyDpInequality(double sensitivity, double sigma, double epsilon,
                           double delta) {
  if (!(sensitivity >= 0.0) || !(sigma > 0.0)) {
    throw ValidationError(
        "VerifyDpInequality: need sensitivity >= 0 and sigma > 0");
  }
  PrivacySpec{epsilon, delta, 1.0}.Validate();

  const double shifted_mean = sensitivity;
  const double base_mean = 0.0;
  const double lo = shifted_mean - kDpGridHalfWidth * sigma;
  const double step = 2.0 * kDpGridHalfWidth * sigma / (kDpGridPoints - 1);
  const double growth = std::exp(epsilon);

  DpCheck result;
  result.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kDpGridPoints; ++i) {
    const double t = lo + step * i;
    const double p_shifted = QFunction((t - shifted_mean) / sigma);
    const double p_base = QFunction((t - base_mean) / sigma);
    const double slack = growth * p_base + delta - p_shifted;
    if (slack < result.min_slack) {
      result.min_slack = slack;
      result.worst_threshold = t;
    }
  }
  result.holds = result.min_slack >= 0.0;
  return result;
}

bool AreAdjacent(const std::vector<Eigen::VectorXd>& v,
                 const std::vector<Eigen::VectorXd>& w,
                 double adjacency_bound) {
  if (v.size() != w.size()) {
    throw ValidationError("AreAdjacent: trajectories differ in length");
  }
  double squared = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].size() != w[k].size()) {
      throw ValidationError("AreAdjacent: dimension mismatch at step " +
                            std::to_string(k));
    }
    squared += (v[k] - w[k]).squaredNorm();
  }
  return std::sqrt(squared) <= adjacency_bound;
}

}  // namespace dplqg
