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

#include <gtest/gtest.h>

#include "dplqg/errors.h"
#include "dplqg/linalg.h"
#include "dplqg/riccati.h"
#include "test_util.h"

namespace dplqg {
namespace {

MatrixXd Scalar(double v) { return MatrixXd::Constant(1, 1, v); }

// Random instance with C, V diagonal and W dense PD.
struct BoundInstance {
  MatrixXd a, w, c, v;
};

BoundInstance MakeInstance(Eigen::Index n, GaussianStream& g) {
  BoundInstance in;
  in.a = testing::RandomMatrix(n, n, g) * (0.9 / std::sqrt(double(n)));
  in.w = RandomPositiveDefinite(n, g);
  VectorXd cd(n), vd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cd(i) = 0.2 + std::abs(g.Next());
    vd(i) = 0.05 + std::abs(g.Next());
  }
  in.c = cd.asDiagonal();
  in.v = vd.asDiagonal();
  return in;
}

double EigenLogDet(const MatrixXd& m) {
  return SymmetricEigenvalues(m).array().log().sum();
}

TEST(GammaTest, Examples) {
  EXPECT_DOUBLE_EQ(GammaMatrix(Scalar(1), Scalar(1), Scalar(1))(0, 0), 0.5);
  // gamma -> W as sigma -> inf, gamma -> 0 as sigma -> 0.
  EXPECT_NEAR(GammaMatrix(Scalar(2), Scalar(1), Scalar(1e12))(0, 0), 2.0,
              1e-9);
  EXPECT_NEAR(GammaMatrix(Scalar(2), Scalar(1), Scalar(1e-12))(0, 0), 0.0,
              1e-9);
  MatrixXd w(2, 2);
  w << 2, 0.3, 0.3, 1;
  const MatrixXd c = (VectorXd(2) << 1, 2).finished().asDiagonal();
  const MatrixXd v = (VectorXd(2) << 2, 4).finished().asDiagonal();
  const MatrixXd gamma = GammaMatrix(w, c, v);
  EXPECT_DOUBLE_EQ(gamma(0, 0), 2.0 * 2.0 / (2.0 + 2.0));
  EXPECT_DOUBLE_EQ(gamma(1, 1), 4.0 * 1.0 / (4.0 + 4.0));
  EXPECT_EQ(gamma(0, 1), 0.0);
}

TEST(HypothesisTest, Examples) {
  const HypothesisCheck ok =
      Lemma4Hypothesis(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1));
  EXPECT_TRUE(ok.holds);
  EXPECT_DOUBLE_EQ(ok.lhs, 0.25);
  EXPECT_DOUBLE_EQ(ok.rhs, 2.125);

  const HypothesisCheck bad =
      Lemma4Hypothesis(Scalar(2), Scalar(0.01), Scalar(1), Scalar(1e4));
  EXPECT_FALSE(bad.holds);
  EXPECT_LT(bad.margin(), 0.0);

  EXPECT_TRUE(Lemma4Hypothesis(MatrixXd::Zero(3, 3), MatrixXd::Identity(3, 3),
                               MatrixXd::Identity(3, 3),
                               MatrixXd::Identity(3, 3))
                  .holds);
  EXPECT_DOUBLE_EQ(EtaLowerBound(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1)),
                   1.125);
}

TEST(BoundMatrixTest, ScalarDominatesSigma) {
  const MatrixXd bound =
      SigmaUpperBoundMatrix(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1));
  EXPECT_NEAR(bound(0, 0), 0.25 / 1.875 + 1.0, 1e-15);
  EXPECT_NEAR(bound(0, 0), 1.1333, 1e-4);
  const double sigma =
      SolveFilterDare(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1)).Sigma(0, 0);
  EXPECT_LE(sigma, bound(0, 0));
  EXPECT_THROW(
      SigmaUpperBoundMatrix(Scalar(2), Scalar(0.01), Scalar(1), Scalar(1e4)),
      BoundInapplicableError);
}

TEST(TheoremTest, ScalarReport) {
  const EntropyBoundReport r =
      Theorem1Bound(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1));
  EXPECT_NEAR(r.theorem_bound, 1.1333, 1e-4);
  EXPECT_NEAR(r.logdet_sigma, 0.1247, 1e-4);
  EXPECT_NEAR(r.logdet_sigma,
              std::log((0.25 + std::sqrt(0.0625 + 4.0)) / 2.0), 1e-10);
  EXPECT_LT(r.logdet_sigma, r.theorem_bound);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_DOUBLE_EQ(r.hypothesis_margin, 1.875);
  EXPECT_GE(r.sigma_top_eigenvalue, r.eta);
  EXPECT_FALSE(r.remark_estimate.has_value() &&
               !std::isfinite(*r.remark_estimate));
}

TEST(TheoremTest, ZeroDynamics) {
  MatrixXd w(2, 2);
  w << 2, 0.5, 0.5, 1;
  const MatrixXd i2 = MatrixXd::Identity(2, 2);
  const EntropyBoundReport r = Theorem1Bound(MatrixXd::Zero(2, 2), w, i2, i2);
  EXPECT_NEAR(r.theorem_bound, 3.0, 1e-12);
  EXPECT_NEAR(r.logdet_sigma, EigenLogDet(w), 1e-10);
}

TEST(TheoremTest, MoreNoiseRaisesEntropyAndBound) {
  MatrixXd a(2, 2);
  a << 0.6, 0.2, -0.1, 0.5;
  MatrixXd w(2, 2);
  w << 1, 0.2, 0.2, 0.5;
  const MatrixXd c = MatrixXd::Identity(2, 2);
  const EntropyBoundReport lo = Theorem1Bound(a, w, c, c);
  const EntropyBoundReport hi = Theorem1Bound(a, w, c, 100.0 * c);
  EXPECT_GT(hi.logdet_sigma, lo.logdet_sigma);
  EXPECT_GT(hi.theorem_bound, lo.theorem_bound);
  EXPECT_LT(hi.privacy_term, lo.privacy_term);
}

TEST(TheoremTest, InapplicableWhenHypothesisFails) {
  try {
    Theorem1Bound(Scalar(2), Scalar(0.01), Scalar(1), Scalar(1e4));
    FAIL();
  } catch (const BoundInapplicableError& e) {
    EXPECT_LT(e.margin(), 0.0);
  }
}

TEST(TheoremTest, RejectsNonDiagonalInputs) {
  MatrixXd c(2, 2);
  c << 1, 0.1, 0, 1;
  const MatrixXd i2 = MatrixXd::Identity(2, 2);
  EXPECT_THROW(Theorem1Bound(0.5 * i2, i2, c, i2), ValidationError);
  EXPECT_THROW(Theorem1Bound(0.5 * i2, i2, i2, c), ValidationError);
  EXPECT_THROW(GammaMatrix(i2, c, i2), ValidationError);
}

TEST(RemarkTest, Examples) {
  EXPECT_DOUBLE_EQ(Remark1Estimate(Scalar(1), 1.0, 1.0, 1), 5.0 / 3.0);
  // sigma -> 0 leaves n omega.
  EXPECT_NEAR(Remark1Estimate(MatrixXd::Identity(3, 3), 0.5, 1e-8, 3), 1.5,
              1e-12);
  EXPECT_THROW(Remark1Estimate(Scalar(1), 0.0, 1.0, 1), ValidationError);
}

TEST(LogDetTest, MatchesEigenvalueOracle) {
  GaussianStream g(4);
  for (int n = 1; n <= 8; ++n) {
    const MatrixXd m = RandomPositiveDefinite(n, g);
    EXPECT_NEAR(LogDet(m), EigenLogDet(m), 1e-10 * (1.0 + std::abs(LogDet(m))));
  }
  EXPECT_THROW(LogDet(MatrixXd::Zero(2, 2)), ValidationError);
  EXPECT_THROW(LogDet((MatrixXd(2, 2) << 1, 2, 0, 1).finished()),
               ValidationError);
}

TEST(PropertyTest, TheoremHoldsOnRandomInstances) {
  GaussianStream g(77);
  int checked = 0;
  for (int trial = 0; checked < 200; ++trial) {
    ASSERT_LT(trial, 5000);
    const BoundInstance in = MakeInstance(1 + trial % 6, g);
    // lambda_1(Sigma) >= eta needs no hypothesis.
    const MatrixXd sigma = SolveFilterDare(in.a, in.c, in.w, in.v).Sigma;
    EXPECT_GE(SymmetricEigenvalues(sigma)[0],
              EtaLowerBound(in.a, in.w, in.c, in.v) * (1 - 1e-12));
    if (!Lemma4Hypothesis(in.a, in.w, in.c, in.v).holds) continue;
    const EntropyBoundReport r = Theorem1Bound(in.a, in.w, in.c, in.v);
    EXPECT_LT(r.logdet_sigma, r.theorem_bound) << "trial " << trial;
    EXPECT_LE(r.logdet_sigma, r.bound_matrix_logdet + 1e-9);
    EXPECT_TRUE(testing::Dominates(SigmaUpperBoundMatrix(in.a, in.w, in.c,
                                                          in.v),
                                   sigma));
    EXPECT_NEAR(r.privacy_term, r.eta * r.min_precision,
                1e-12 * std::max(1.0, r.privacy_term));
    ++checked;
  }
}

TEST(PropertyTest, LoewnerOrderPreservesDeterminant) {
  GaussianStream g(88);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const MatrixXd small = RandomPositiveDefinite(n, g);
    const MatrixXd gap = testing::RandomMatrix(n, n, g);
    const MatrixXd big = small + gap * gap.transpose();
    EXPECT_LE(LogDet(small), LogDet(big) + 1e-12);
  }
}

TEST(PropertyTest, DeterminantBelowTraceMeanPower) {
  GaussianStream g(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const MatrixXd m = RandomPositiveDefinite(n, g);
    const double nd = static_cast<double>(n);
    EXPECT_LE(LogDet(m), nd * std::log(m.trace() / nd) + 1e-12);
  }
}

TEST(ReportTest, SerializesKeyValueLines) {
  const std::string text = SerializeReport(
      Theorem1Bound(Scalar(0.5), Scalar(1), Scalar(1), Scalar(1)));
  EXPECT_NE(text.find("theorem_bound="), std::string::npos);
  EXPECT_NE(text.find("hypothesis_holds=true"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

}  // namespace
}  // namespace dplqg
