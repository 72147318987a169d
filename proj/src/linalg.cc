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

#include "dplqg/linalg.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dplqg/errors.h"

namespace dplqg {
namespace {

std::string ShapeString(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

// Numerical rank with singular values below tol * s_max treated as zero.
template <typename Matrix>
Eigen::Index NumericalRank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol * std::max(1.0, s[0])) ++rank;
  }
  return rank;
}

}  // namespace

VectorXd SingularValues(const MatrixXd& m) {
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues();
}

VectorXd SymmetricEigenvalues(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Symmetrize(m),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

double SpectralRadius(const MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<MatrixXd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

MatrixXd Symmetrize(const MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

bool IsSymmetric(const MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool IsDiagonal(const MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool IsPositiveDefinite(const MatrixXd& m) {
  if (!IsSymmetric(m)) return false;
  Eigen::LLT<MatrixXd> llt(Symmetrize(m));
  return llt.info() == Eigen::Success;
}

bool IsPositiveSemidefinite(const MatrixXd& m, double tol) {
  if (!IsSymmetric(m)) return false;
  if (m.size() == 0) return true;
  const VectorXd ev = SymmetricEigenvalues(m);
  const double scale = std::max(1.0, std::abs(ev[0]));
  return ev[ev.size() - 1] >= -tol * scale;
}

bool IsControllable(const MatrixXd& a, const MatrixXd& b, double tol) {
  const Eigen::Index n = a.rows();
  MatrixXd ctrb(n, n * b.cols());
  MatrixXd block = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    ctrb.middleCols(i * b.cols(), b.cols()) = block;
    block = a * block;
  }
  return NumericalRank(ctrb, tol) == n;
}

bool IsStabilizable(const MatrixXd& a, const MatrixXd& b, double tol) {
  using Complex = std::complex<double>;
  const Eigen::Index n = a.rows();
  if (n == 0) return true;
  Eigen::EigenSolver<MatrixXd> es(a, false);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = es.eigenvalues()[k];
    // Marginal modes count as unstable.
    if (std::abs(lambda) < 1.0 - 1e-6) continue;
    Eigen::MatrixXcd pbh(n, n + b.cols());
    pbh.leftCols(n) = lambda * Eigen::MatrixXcd::Identity(n, n) -
                      a.cast<Complex>();
    pbh.rightCols(b.cols()) = b.cast<Complex>();
    if (NumericalRank(pbh, tol) < n) return false;
  }
  return true;
}

bool IsDetectable(const MatrixXd& a, const MatrixXd& c, double tol) {
  return IsStabilizable(a.transpose(), c.transpose(), tol);
}

MatrixXd PsdFactor(const MatrixXd& m) {
  if (!IsSymmetric(m)) {
    throw ValidationError("PsdFactor: matrix is not symmetric");
  }
  const MatrixXd sym = Symmetrize(m);
  Eigen::LLT<MatrixXd> llt(sym);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
  VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -1e-12 * scale) {
      throw ValidationError("PsdFactor: matrix is not positive semidefinite");
    }
    ev[i] = std::max(ev[i], 0.0);
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
}

MatrixXd PsdSqrt(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Symmetrize(m));
  const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() *
         es.eigenvectors().transpose();
}

MatrixXd BlockDiagonal(std::span<const MatrixXd> blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  MatrixXd out = MatrixXd::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

MatrixXd RandomPositiveDefinite(Eigen::Index n, GaussianStream& stream) {
  MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = stream.Next();
  }
  MatrixXd m = g.transpose() * g + 0.1 * MatrixXd::Identity(n, n);
  return Symmetrize(m);
}

void RequireShape(const MatrixXd& m, Eigen::Index rows, Eigen::Index cols,
                  std::string_view what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ValidationError(std::string(what) + ": expected " +
                          ShapeString(rows, cols) + ", got " +
                          ShapeString(m.rows(), m.cols()));
  }
}

void RequireSize(const VectorXd& v, Eigen::Index size, std::string_view what) {
  if (v.size() != size) {
    throw ValidationError(std::string(what) + ": expected length " +
                          std::to_string(size) + ", got " +
                          std::to_string(v.size()));
  }
}

}  // namespace dplqg
