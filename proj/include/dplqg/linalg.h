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

#ifndef DPLQG_LINALG_H_
#define DPLQG_LINALG_H_

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dplqg/rng.h"

namespace dplqg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Relative tolerance on singular values for rank decisions.
inline constexpr double kRankTolerance = 1e-8;

// Singular values, largest first.
VectorXd SingularValues(const MatrixXd& m);

// Eigenvalues of the symmetric part of `m`, largest first.
VectorXd SymmetricEigenvalues(const MatrixXd& m);

double SpectralRadius(const MatrixXd& m);

MatrixXd Symmetrize(const MatrixXd& m);

bool IsSymmetric(const MatrixXd& m, double tol = 1e-10);
bool IsDiagonal(const MatrixXd& m);
bool IsPositiveDefinite(const MatrixXd& m);
// Smallest eigenvalue >= -tol * max(1, |largest|).
bool IsPositiveSemidefinite(const MatrixXd& m, double tol = 1e-10);

// Rank of [B, AB, ..., A^{n-1}B] equals n.
bool IsControllable(const MatrixXd& a, const MatrixXd& b,
                    double tol = kRankTolerance);
// PBH test on every eigenvalue with |lambda| >= 1.
bool IsStabilizable(const MatrixXd& a, const MatrixXd& b,
                    double tol = kRankTolerance);
bool IsDetectable(const MatrixXd& a, const MatrixXd& c,
                  double tol = kRankTolerance);

// Returns F with F * F^T = m. Uses Cholesky when m is PD; otherwise clips
// eigenvalues in [-1e-12 * scale, 0) to zero. Throws ValidationError when m
// is not symmetric PSD.
MatrixXd PsdFactor(const MatrixXd& m);

// Symmetric square root via eigendecomposition (m PSD).
MatrixXd PsdSqrt(const MatrixXd& m);

MatrixXd BlockDiagonal(std::span<const MatrixXd> blocks);

// G^T G + 0.1 I with G having i.i.d. standard normal entries, row-major
// draw order. Positive definite with (almost surely) nonzero off-diagonals.
MatrixXd RandomPositiveDefinite(Eigen::Index n, GaussianStream& stream);

// Throws ValidationError("<what>: expected RxC, got ...") on mismatch.
void RequireShape(const MatrixXd& m, Eigen::Index rows, Eigen::Index cols,
                  std::string_view what);
void RequireSize(const VectorXd& v, Eigen::Index size, std::string_view what);

}  // namespace dplqg

#endif  // DPLQG_LINALG_H_
