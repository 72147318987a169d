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

#include "dplqg/riccati.h"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"

namespace dplqg {
namespace {

// A^T K A - A^T K B (R + B^T K B)^{-1} B^T K A + Q.
MatrixXd ControlMap(const MatrixXd& k, const MatrixXd& a, const MatrixXd& b,
                    const MatrixXd& q, const MatrixXd& r) {
  const MatrixXd kb = k * b;
  const MatrixXd gram = r + b.transpose() * kb;
  const MatrixXd btka = kb.transpose() * a;
  Eigen::LDLT<MatrixXd> ldlt(Symmetrize(gram));
  return a.transpose() * k * a - btka.transpose() * ldlt.solve(btka) + q;
}

// The filter map is the control map on (A^T, C^T, W, V).
MatrixXd FilterMap(const MatrixXd& sigma, const MatrixXd& a,
                   const MatrixXd& c, const MatrixXd& w, const MatrixXd& v) {
  const MatrixXd sct = sigma * c.transpose();
  const MatrixXd innovation = c * sct + v;
  const MatrixXd cs_at = sct.transpose() * a.transpose();
  Eigen::LDLT<MatrixXd> ldlt(Symmetrize(innovation));
  return a * sigma * a.transpose() - cs_at.transpose() * ldlt.solve(cs_at) + w;
}

double RelativeGap(const MatrixXd& next, const MatrixXd& prev,
                   const MatrixXd& scale_hint) {
  const double scale =
      std::max({next.norm(), scale_hint.norm(), 1e-300});
  return (next - prev).norm() / scale;
}

template <typename Map>
MatrixXd Iterate(const MatrixXd& start, const RiccatiOptions& options,
                 const Map& map, int& iterations, const char* label) {
  MatrixXd x = start;
  for (int it = 1; it <= options.max_iterations; ++it) {
    MatrixXd next = Symmetrize(map(x));
    if (!next.allFinite()) {
      throw ConvergenceError(std::string(label) + ": iterate diverged", it,
                             std::numeric_limits<double>::infinity());
    }
    const double gap = (next - x).norm();
    x = std::move(next);
    if (gap <= options.tolerance * std::max(x.norm(), 1e-300)) {
      iterations = it;
      return x;
    }
  }
  iterations = options.max_iterations;
  throw ConvergenceError(std::string(label) + ": iteration cap reached",
                         options.max_iterations,
                         RelativeGap(map(x), x, x));
}

void CheckSquare(const MatrixXd& a, const char* name) {
  if (a.rows() != a.cols()) {
    throw ValidationError(std::string(name) + " must be square");
  }
}

}  // namespace

double ControlDareResidual(const MatrixXd& k, const MatrixXd& a,
                           const MatrixXd& b, const MatrixXd& q,
                           const MatrixXd& r) {
  const Eigen::Index n = a.rows();
  CheckSquare(a, "A");
  RequireShape(k, n, n, "K");
  RequireShape(q, n, n, "Q");
  RequireShape(b, n, b.cols(), "B");
  RequireShape(r, b.cols(), b.cols(), "R");
  const double scale = std::max({k.norm(), q.norm(), 1e-300});
  return (ControlMap(k, a, b, q, r) - k).norm() / scale;
}

double FilterDareResidual(const MatrixXd& sigma, const MatrixXd& a,
                          const MatrixXd& c, const MatrixXd& w,
                          const MatrixXd& v) {
  const Eigen::Index n = a.rows();
  CheckSquare(a, "A");
  RequireShape(sigma, n, n, "Sigma");
  RequireShape(w, n, n, "W");
  RequireShape(c, c.rows(), n, "C");
  RequireShape(v, c.rows(), c.rows(), "V");
  const double scale = std::max({sigma.norm(), w.norm(), 1e-300});
  return (FilterMap(sigma, a, c, w, v) - sigma).norm() / scale;
}

MatrixXd PosteriorCovariance(const MatrixXd& sigma, const MatrixXd& c,
                             const MatrixXd& v) {
  const MatrixXd sct = sigma * c.transpose();
  Eigen::LDLT<MatrixXd> ldlt(Symmetrize(c * sct + v));
  return Symmetrize(sigma - sct * ldlt.solve(sct.transpose()));
}

ControlSynthesis SolveControlDare(const MatrixXd& a, const MatrixXd& b,
                                  const MatrixXd& q, const MatrixXd& r,
                                  const RiccatiOptions& options) {
  const Eigen::Index n = a.rows();
  CheckSquare(a, "A");
  RequireShape(b, n, b.cols(), "B");
  RequireShape(q, n, n, "Q");
  RequireShape(r, b.cols(), b.cols(), "R");
  if (!IsPositiveSemidefinite(q)) {
    throw AssumptionError("Q_psd", "state cost Q must be symmetric PSD");
  }
  if (!IsPositiveDefinite(r)) {
    throw AssumptionError("R_pd", "input cost R must be symmetric PD");
  }
  if (!IsStabilizable(a, b)) {
    throw AssumptionError("AB_stabilizable", "(A, B) is not stabilizable");
  }
  if (!IsDetectable(a, PsdSqrt(q))) {
    throw AssumptionError("AF_detectable",
                          "(A, F) with Q = F^T F is not detectable");
  }

  ControlSynthesis out;
  out.K = Iterate(
      Symmetrize(q), options,
      [&](const MatrixXd& k) { return ControlMap(k, a, b, q, r); },
      out.iterations, "control DARE");
  out.residual = ControlDareResidual(out.K, a, b, q, r);
  if (out.residual > options.residual_limit) {
    throw ConvergenceError("control DARE: residual above limit",
                           out.iterations, out.residual);
  }
  const MatrixXd gram = Symmetrize(r + b.transpose() * out.K * b);
  out.L = -gram.ldlt().solve(b.transpose() * out.K * a);
  return out;
}

FilterSynthesis SolveFilterDare(const MatrixXd& a, const MatrixXd& c,
                                const MatrixXd& w, const MatrixXd& v,
                                const RiccatiOptions& options,
                                const std::optional<MatrixXd>& initial) {
  const Eigen::Index n = a.rows();
  CheckSquare(a, "A");
  RequireShape(c, c.rows(), n, "C");
  RequireShape(w, n, n, "W");
  RequireShape(v, c.rows(), c.rows(), "V");
  if (!IsPositiveDefinite(w)) {
    throw AssumptionError("W_pd", "process noise covariance W must be PD");
  }
  if (!IsPositiveDefinite(v)) {
    throw AssumptionError("V_pd", "measurement noise covariance V must be PD");
  }
  if (!IsDetectable(a, c)) {
    throw AssumptionError("AC_detectable", "(A, C) is not detectable");
  }
  MatrixXd start = Symmetrize(w);
  if (initial) {
    RequireShape(*initial, n, n, "initial Sigma");
    start = Symmetrize(*initial);
  }

  FilterSynthesis out;
  out.Sigma = Iterate(
      start, options,
      [&](const MatrixXd& s) { return FilterMap(s, a, c, w, v); },
      out.iterations, "filter DARE");
  out.residual = FilterDareResidual(out.Sigma, a, c, w, v);
  if (out.residual > options.residual_limit) {
    throw ConvergenceError("filter DARE: residual above limit",
                           out.iterations, out.residual);
  }
  out.SigmaBar = PosteriorCovariance(out.Sigma, c, v);
  out.kalman_gain =
      out.SigmaBar * c.transpose() * Symmetrize(v).ldlt().solve(
                                         MatrixXd::Identity(v.rows(), v.rows()));
  return out;
}

}  // namespace dplqg
