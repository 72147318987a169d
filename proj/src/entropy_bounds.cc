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

#include "dplqg/entropy_bounds.h"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"
#include "dplqg/riccati.h"
#include "dplqg/trace_io.h"

namespace dplqg {
namespace {

void RequireBoundInputs(const MatrixXd& a, const MatrixXd& w,
                        const MatrixXd& c, const MatrixXd& v) {
  const Eigen::Index n = a.rows();
  RequireShape(a, n, n, "A");
  RequireShape(w, n, n, "W");
  RequireShape(c, n, n, "C");
  RequireShape(v, n, n, "V");
  if (!IsDiagonal(c)) {
    throw ValidationError("entropy bound requires a square diagonal C");
  }
  if (!IsDiagonal(v) || (v.diagonal().array() <= 0.0).any()) {
    throw ValidationError("entropy bound requires a positive diagonal V");
  }
  if ((w.diagonal().array() <= 0.0).any()) {
    throw ValidationError("entropy bound requires a positive diagonal of W");
  }
}

// min_i C_ii^2 / sigma_i^2.
double MinPrecision(const MatrixXd& c, const MatrixXd& v) {
  return (c.diagonal().array().square() / v.diagonal().array()).minCoeff();
}

double SmallestSingularSquared(const MatrixXd& a) {
  const VectorXd s = SingularValues(a);
  return s[s.size() - 1] * s[s.size() - 1];
}

// True when every diagonal entry equals the first and the rest is zero.
bool IsScalarMatrix(const MatrixXd& m) {
  return IsDiagonal(m) &&
         (m.diagonal().array() == m(0, 0)).all();
}

}  // namespace

MatrixXd GammaMatrix(const MatrixXd& w, const MatrixXd& c, const MatrixXd& v) {
  const Eigen::Index n = w.rows();
  RequireBoundInputs(MatrixXd::Zero(n, n), w, c, v);
  VectorXd gamma(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s2 = v(i, i);
    const double wii = w(i, i);
    gamma[i] = s2 * wii / (s2 + c(i, i) * c(i, i) * wii);
  }
  return gamma.asDiagonal();
}

double EtaLowerBound(const MatrixXd& a, const MatrixXd& w, const MatrixXd& c,
                     const MatrixXd& v) {
  RequireBoundInputs(a, w, c, v);
  const double gamma_max = GammaMatrix(w, c, v).diagonal().maxCoeff();
  const VectorXd w_eigs = SymmetricEigenvalues(w);
  return SmallestSingularSquared(a) * gamma_max + w_eigs[w_eigs.size() - 1];
}

HypothesisCheck Lemma4Hypothesis(const MatrixXd& a, const MatrixXd& w,
                                 const MatrixXd& c, const MatrixXd& v) {
  RequireBoundInputs(a, w, c, v);
  const double s1 = SingularValues(a)[0];
  HypothesisCheck check;
  check.lhs = s1 * s1;
  check.rhs = 1.0 + EtaLowerBound(a, w, c, v) * MinPrecision(c, v);
  check.holds = check.lhs < check.rhs;
  return check;
}

MatrixXd SigmaUpperBoundMatrix(const MatrixXd& a, const MatrixXd& w,
                               const MatrixXd& c, const MatrixXd& v) {
  const HypothesisCheck check = Lemma4Hypothesis(a, w, c, v);
  if (!check.holds) {
    throw BoundInapplicableError(
        "covariance bound inapplicable: s1(A)^2 >= 1 + eta * rho",
        check.margin());
  }
  const double w_top = SymmetricEigenvalues(w)[0];
  return (w_top / check.margin()) * a * a.transpose() + w;
}

EntropyBoundReport Theorem1Bound(const MatrixXd& a, const MatrixXd& w,
                                 const MatrixXd& c, const MatrixXd& v) {
  RequireBoundInputs(a, w, c, v);
  const Eigen::Index n = a.rows();
  EntropyBoundReport report;
  report.gamma_diag = GammaMatrix(w, c, v).diagonal();
  report.eta = EtaLowerBound(a, w, c, v);
  const HypothesisCheck check = Lemma4Hypothesis(a, w, c, v);
  report.hypothesis_holds = check.holds;
  report.hypothesis_margin = check.margin();
  if (!check.holds) {
    throw BoundInapplicableError(
        "entropy bound inapplicable: hypothesis margin " +
            FormatDouble(check.margin()) + " <= 0",
        check.margin());
  }

  const double rho = MinPrecision(c, v);
  const double sn2 = SmallestSingularSquared(a);
  const double w_min = SymmetricEigenvalues(w)[n - 1];
  report.privacy_term =
      sn2 * report.gamma_diag.maxCoeff() * rho + w_min * rho;
  const MatrixXd precision =
      c.transpose() * v.diagonal().cwiseInverse().asDiagonal() * c;
  report.min_precision = SymmetricEigenvalues(precision)[n - 1];

  const FilterSynthesis filter = SolveFilterDare(a, c, w, v);
  report.logdet_sigma = LogDet(filter.Sigma);
  report.sigma_top_eigenvalue = SymmetricEigenvalues(filter.Sigma)[0];

  const double w_top = SymmetricEigenvalues(w)[0];
  const double s1 = SingularValues(a)[0];
  const double coefficient = w_top / (1.0 + report.privacy_term - s1 * s1);
  const MatrixXd bound_matrix = coefficient * a * a.transpose() + w;
  report.bound_matrix_logdet = LogDet(bound_matrix);
  report.trace_bound =
      static_cast<double>(n) *
      std::log(bound_matrix.trace() / static_cast<double>(n));
  report.theorem_bound =
      coefficient * SingularValues(a).squaredNorm() + w.trace();

  if (IsScalarMatrix(c) && c(0, 0) == 1.0 && IsScalarMatrix(w) &&
      IsScalarMatrix(v)) {
    report.remark_estimate =
        Remark1Estimate(a, w(0, 0), std::sqrt(v(0, 0)), n);
  }
  return report;
}

double Remark1Estimate(const MatrixXd& a, double omega, double sigma,
                       Eigen::Index n) {
  if (!(omega > 0.0) || !(sigma > 0.0) || n <= 0) {
    throw ValidationError("Remark1Estimate: omega, sigma and n must be > 0");
  }
  const double sn2 = SmallestSingularSquared(a);
  const double inv = sn2 / (sigma * sigma + omega) + 1.0 / (sigma * sigma);
  return SingularValues(a).squaredNorm() / inv +
         static_cast<double>(n) * omega;
}

double LogDet(const MatrixXd& m) {
  if (m.rows() != m.cols() || m.size() == 0) {
    throw ValidationError("LogDet: matrix must be square and nonempty");
  }
  if (!IsSymmetric(m)) throw ValidationError("LogDet: matrix not symmetric");
  Eigen::LLT<MatrixXd> llt(Symmetrize(m));
  if (llt.info() != Eigen::Success) {
    throw ValidationError("LogDet: matrix is not positive definite");
  }
  const MatrixXd& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i));
  return 2.0 * sum;
}

std::string SerializeReport(const EntropyBoundReport& r) {
  std::ostringstream out;
  out << "gamma_diag=" << FormatVector(r.gamma_diag) << '\n'
      << "eta=" << FormatDouble(r.eta) << '\n'
      << "hypothesis_holds=" << (r.hypothesis_holds ? "true" : "false")
      << '\n'
      << "hypothesis_margin=" << FormatDouble(r.hypothesis_margin) << '\n'
      << "logdet_sigma=" << FormatDouble(r.logdet_sigma) << '\n'
      << "theorem_bound=" << FormatDouble(r.theorem_bound) << '\n'
      << "privacy_term=" << FormatDouble(r.privacy_term) << '\n'
      << "min_precision=" << FormatDouble(r.min_precision) << '\n'
      << "sigma_top_eigenvalue=" << FormatDouble(r.sigma_top_eigenvalue)
      << '\n'
      << "bound_matrix_logdet=" << FormatDouble(r.bound_matrix_logdet) << '\n'
      << "trace_bound=" << FormatDouble(r.trace_bound) << '\n'
      << "remark_estimate="
      << (r.remark_estimate ? FormatDouble(*r.remark_estimate) : "none")
      << '\n';
  return out.str();
}

}  // namespace dplqg
