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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dplqg/config.h"
#include "dplqg/entropy_bounds.h"
#include "dplqg/linalg.h"
#include "dplqg/lqg_pipeline.h"
#include "dplqg/network_sim.h"
#include "dplqg/privacy_mechanism.h"
#include "dplqg/riccati.h"
#include "dplqg/rng.h"
#include "dplqg/sweep.h"

namespace dplqg {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string ConfigPath(const char* name) {
  return std::string(DPLQG_CONFIG_DIR) + "/" + name;
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

MatrixXd Scalar(double v) { return MatrixXd::Constant(1, 1, v); }

MatrixXd RandomMatrix(Eigen::Index rows, Eigen::Index cols, GaussianStream& s) {
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = s.Next();
  }
  return m;
}

Outcome PrivacyCalibration() {
  const auto start = Clock::now();
  const double k1 = Kappa(0.01, 0.1);
  const double k2 = Kappa(0.5, 1.0);
  const double us =
      std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  const bool ok = std::abs(k1 - 23.48) <= 0.005 &&
                  std::abs(k2 - 0.71) <= 0.005 && us < 1000.0;
  return {ok, Fmt("kappa(0.01,0.1)=%.6f kappa(0.5,1)=%.6f in %.0f us", k1, k2,
                  us)};
}

Outcome AnalyticDpCheck() {
  const auto start = Clock::now();
  const std::vector<double> epsilons = {0.1, 0.35, 0.6, 0.85, std::log(3.0)};
  const std::vector<double> deltas = {0.0125, 0.025, 0.0375, 0.05};
  int held = 0, broken = 0, pairs = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (double eps : epsilons) {
    for (double delta : deltas) {
      ++pairs;
      const double sigma = Kappa(delta, eps);
      const DpCheck ok = VerifyDpInequality(1.0, sigma, eps, delta);
      const DpCheck weak = VerifyDpInequality(1.0, 0.1 * sigma, eps, delta);
      held += ok.holds;
      broken += !weak.holds;
      worst = std::min(worst, ok.min_slack);
    }
  }
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = pairs == 20 && held == 20 && broken == 20 && s < 1.0;
  return {ok, Fmt("20 pairs: calibrated hold %.0f/20, 0.1x noise fails %.0f/20,"
                  " min slack %.3g",
                  held, broken, worst) +
                  Fmt(", %.3f s", s)};
}

Outcome DareCorrectness() {
  const auto start = Clock::now();
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const MatrixXd one = Scalar(1);
  const double k = SolveControlDare(one, one, one, one).K(0, 0);
  const double sg = SolveFilterDare(one, one, one, one).Sigma(0, 0);
  bool ok = std::abs(k - golden) <= 1e-9 && std::abs(sg - golden) <= 1e-9;

  GaussianStream g(DeriveSeed(3, 0, StreamKind::kCostMatrix));
  int solved = 0;
  double worst_residual = 0.0, worst_duality = 0.0;
  for (int trial = 0; solved < 100 && trial < 2000; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const Eigen::Index m = 1 + (trial / 6) % n;
    const MatrixXd a = RandomMatrix(n, n, g) * (1.2 / std::sqrt(double(n)));
    const MatrixXd b = RandomMatrix(n, m, g);
    const MatrixXd c = RandomMatrix(n, n, g);
    const MatrixXd q = RandomPositiveDefinite(n, g);
    const MatrixXd r = RandomPositiveDefinite(m, g);
    const MatrixXd w = RandomPositiveDefinite(n, g);
    const MatrixXd v = RandomPositiveDefinite(n, g);
    if (!IsControllable(a, b) || !IsDetectable(a, c)) continue;
    const ControlSynthesis ctl = SolveControlDare(a, b, q, r);
    const FilterSynthesis flt = SolveFilterDare(a, c, w, v);
    const ControlSynthesis dual =
        SolveControlDare(a.transpose(), c.transpose(), w, v);
    worst_residual = std::max({worst_residual, ctl.residual, flt.residual});
    worst_duality = std::max(worst_duality, (flt.Sigma - dual.K).norm() /
                                                std::max(1.0, flt.Sigma.norm()));
    ++solved;
  }
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  ok = ok && solved == 100 && worst_residual < 1e-9 && worst_duality <= 1e-8 &&
       s < 10.0;
  return {ok, Fmt("golden |dK|=%.2g |dSigma|=%.2g", std::abs(k - golden),
                  std::abs(sg - golden)) +
                  Fmt(", 100 systems max residual %.2g, duality %.2g",
                      worst_residual, worst_duality) +
                  Fmt(", %.2f s", s)};
}

Outcome KalmanConsistency() {
  const auto start = Clock::now();
  const MatrixXd a = Scalar(1.0), b = Scalar(1.0), c = Scalar(1.0);
  const double wvar = 1.0, vvar = 4.0;
  const LqgSynthesis s = SynthesizeLqg(a, b, c, Scalar(wvar), Scalar(vvar),
                                       Scalar(1.0), Scalar(1.0));
  const SteadyStateKalmanFilter kf(s.closed_loop, c, s.filter.kalman_gain);
  GaussianStream proc(DeriveSeed(4, 0, StreamKind::kProcessNoise));
  GaussianStream meas(DeriveSeed(4, 0, StreamKind::kPrivacyNoise));
  VectorXd x = VectorXd::Zero(1);
  EstimatorState est =
      kf.Initialize(x, x + VectorXd::Constant(1, std::sqrt(vvar) * meas.Next()));
  constexpr int kBurn = 1000;
  constexpr int kSteps = 100000;
  double err2 = 0.0, innov2 = 0.0;
  for (int k = 0; k < kBurn + kSteps; ++k) {
    const VectorXd u = Control(est, s.control.L);
    x = a * x + b * u + VectorXd::Constant(1, std::sqrt(wvar) * proc.Next());
    const VectorXd y = c * x + VectorXd::Constant(1, std::sqrt(vvar) * meas.Next());
    if (k >= kBurn) {
      err2 += std::pow((x - kf.Predict(est))(0), 2);
      innov2 += std::pow(kf.Innovation(est, y)(0), 2);
    }
    est = kf.Step(est, y);
  }
  const double sigma = s.filter.Sigma(0, 0);
  const double err_rel = std::abs(err2 / kSteps / sigma - 1.0);
  const double innov_rel = std::abs(innov2 / kSteps / (sigma + vvar) - 1.0);
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = err_rel <= 0.05 && innov_rel <= 0.05 && secs < 30.0;
  return {ok, Fmt("1e5 steps: error var rel dev %.4f, innovation var rel dev "
                  "%.4f, %.2f s",
                  err_rel, innov_rel, secs)};
}

Outcome TheoremBound() {
  const auto start = Clock::now();
  GaussianStream g(DeriveSeed(5, 0, StreamKind::kCostMatrix));
  int checked = 0, violations = 0, eta_violations = 0, tried = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  while (checked < 200 && tried < 10000) {
    const Eigen::Index n = 1 + tried % 6;
    ++tried;
    const MatrixXd a = RandomMatrix(n, n, g) * (0.9 / std::sqrt(double(n)));
    const MatrixXd w = RandomPositiveDefinite(n, g);
    VectorXd cd(n), vd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      cd(i) = 0.2 + std::abs(g.Next());
      vd(i) = 0.05 + std::abs(g.Next());
    }
    const MatrixXd c = cd.asDiagonal();
    const MatrixXd v = vd.asDiagonal();
    if (!Lemma4Hypothesis(a, w, c, v).holds) continue;
    const EntropyBoundReport r = Theorem1Bound(a, w, c, v);
    violations += !(r.logdet_sigma < r.theorem_bound);
    eta_violations += !(r.sigma_top_eigenvalue >= r.eta);
    min_gap = std::min(min_gap, r.theorem_bound - r.logdet_sigma);
    ++checked;
  }
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = checked == 200 && violations == 0 && eta_violations == 0 &&
                  s < 60.0;
  return {ok, Fmt("%.0f instances: bound violations %.0f, lambda1<eta %.0f",
                  checked, violations, eta_violations) +
                  Fmt(", min gap %.4f, %.2f s", min_gap, s)};
}

Outcome DeterminantLemmas() {
  const auto start = Clock::now();
  GaussianStream g(DeriveSeed(6, 0, StreamKind::kCostMatrix));
  int order_violations = 0, amgm_violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const MatrixXd g1 = RandomMatrix(n, n, g);
    const MatrixXd small = g1 * g1.transpose();
    const MatrixXd g2 = RandomMatrix(n, 1 + trial % n, g);
    const MatrixXd big = small + g2 * g2.transpose();
    const double det_small = SymmetricEigenvalues(small).prod();
    const double det_big = SymmetricEigenvalues(big).prod();
    order_violations += det_small > det_big * (1 + 1e-10) + 1e-300;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + trial % 6;
    const MatrixXd f = RandomMatrix(n, 1 + trial % n, g);
    const MatrixXd m = f * f.transpose();
    const VectorXd ev = SymmetricEigenvalues(m).cwiseMax(0.0);
    const double nd = static_cast<double>(n);
    amgm_violations += ev.prod() > std::pow(m.trace() / nd, nd) * (1 + 1e-10);
  }
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = order_violations == 0 && amgm_violations == 0 && s < 10.0;
  return {ok, Fmt("1000+1000 PSD instances: det order violations %.0f, "
                  "det<=(tr/n)^n violations %.0f, %.2f s",
                  order_violations, amgm_violations, s)};
}

Outcome CertaintyEquivalence() {
  const NetworkModel m = BuildNetwork(LoadConfig(ConfigPath("case_study_2agent.json")));
  const LqgSynthesis base = SynthesizeLqg(m.A, m.B, m.C, m.W, m.V, m.Q, m.R);
  const LqgSynthesis noisy =
      SynthesizeLqg(m.A, m.B, m.C, m.W, 100.0 * m.V, m.Q, m.R);
  const bool same = base.control.L == noisy.control.L;
  const bool sigma_moved =
      noisy.filter.Sigma.trace() > base.filter.Sigma.trace();
  return {same && sigma_moved,
          std::string("L under V and 100V ") +
              (same ? "bit-identical" : "DIFFERS") +
              Fmt(", tr Sigma %.4f -> %.4f", base.filter.Sigma.trace(),
                  noisy.filter.Sigma.trace())};
}

Outcome CaseStudy() {
  const auto start = Clock::now();
  const ExperimentConfig cfg = LoadConfig(ConfigPath("case_study_2agent.json"));
  const NetworkModel m = BuildNetwork(cfg);
  const LqgSynthesis s = SynthesizeLqg(m.A, m.B, m.C, m.W, m.V, m.Q, m.R);
  const auto runs = RunReplicatesSerial(m, cfg.agents, s, 200, cfg.seed, 10);
  double max_norm = 0.0, lo = INFINITY, hi = 0.0;
  bool finite = true;
  for (const auto& r : runs) {
    max_norm = std::max(max_norm, r.max_state_norm);
    finite = finite && std::isfinite(r.average_cost);
    lo = std::min(lo, r.average_cost);
    hi = std::max(hi, r.average_cost);
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = runs.size() == 10 && finite && max_norm < 1e3 && secs < 5.0;
  return {ok, Fmt("sigmas %.2f/%.2f", m.sigmas[0], m.sigmas[1]) +
                  Fmt(", 10 seeds T=200: avg cost in [%.1f, %.1f], max |x| "
                      "%.2f",
                      lo, hi, max_norm) +
                  Fmt(", %.2f s", secs)};
}

Outcome EpsilonSweep() {
  const auto start = Clock::now();
  const ExperimentConfig cfg = LoadConfig(ConfigPath("sweep_4agent.json"));
  SweepSettings settings = *cfg.sweep;
  settings.delta = 0.25;
  settings.steps = std::max<std::int64_t>(settings.steps, 2500);
  settings.seeds = std::max(settings.seeds, 10);
  const auto points = SweepEpsilonParallel(cfg, settings);
  int logdet_breaks = 0, cost_breaks = 0;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    logdet_breaks += !(points[i].logdet_sigma < points[i - 1].logdet_sigma);
    const double rise = points[i].mean_cost / points[i - 1].mean_cost - 1.0;
    worst_rise = std::max(worst_rise, rise);
    cost_breaks += rise > 0.02;
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = points.size() >= 2 && logdet_breaks == 0 &&
                  cost_breaks == 0 && secs < 300.0;
  return {ok, Fmt("%.0f eps points: logdet %.3f -> %.3f", points.size(),
                  points.front().logdet_sigma, points.back().logdet_sigma) +
                  Fmt(", cost %.1f -> %.1f", points.front().mean_cost,
                      points.back().mean_cost) +
                  Fmt(", logdet breaks %.0f, worst cost rise %.2f%%",
                      logdet_breaks, 100.0 * worst_rise) +
                  Fmt(", %.1f s", secs)};
}

Outcome ProtocolInvariants() {
  const auto start = Clock::now();
  const ExperimentConfig cfg = LoadConfig(ConfigPath("case_study_2agent.json"));
  const NetworkModel m = BuildNetwork(cfg);
  const LqgSynthesis s = SynthesizeLqg(m.A, m.B, m.C, m.W, m.V, m.Q, m.R);
  constexpr std::int64_t kHorizon = 200;
  const SimulationTrace t = RunSimulation(m, cfg.agents, s, kHorizon, 17);
  const auto log = EavesdropperView(t);
  const std::size_t n = cfg.agents.size();
  const bool count_ok = log.size() == 2 * n * kHorizon;

  int leaks = 0, misrouted = 0;
  for (const auto& msg : log) {
    const StepRecord& rec = t.steps[static_cast<std::size_t>(msg.k)];
    if (msg.kind == MessageKind::kMeasurement) {
      misrouted += msg.receiver != kCloudId;
      for (Eigen::Index i = 0; i < msg.payload.size(); ++i) {
        for (Eigen::Index j = 0; j < rec.x.size(); ++j) {
          leaks += msg.payload(i) == rec.x(j);
        }
      }
    } else {
      const bool to_agent = msg.sender == kCloudId && msg.receiver >= 1 &&
                            msg.receiver <= static_cast<int>(n);
      misrouted += !to_agent;
      if (to_agent) {
        const AgentBlock& blk = m.blocks[msg.receiver - 1];
        misrouted +=
            msg.payload != rec.u.segment(blk.input_offset, blk.input_dim);
      }
    }
  }
  const auto replay = ReplayEstimates(log, m, s, t.prior_mean);
  int replay_mismatch = replay.size() == t.steps.size() ? 0 : 1;
  for (std::size_t k = 0; k < std::min(replay.size(), t.steps.size()); ++k) {
    replay_mismatch += replay[k] != t.steps[k].x_hat;
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool ok = count_ok && leaks == 0 && misrouted == 0 &&
                  replay_mismatch == 0 && secs < 5.0;
  std::ostringstream d;
  d << log.size() << " messages (2NT=" << 2 * n * kHorizon << "), true-state "
    << "leaks " << leaks << ", misrouted " << misrouted
    << ", replay mismatches " << replay_mismatch << ", " << secs << " s";
  return {ok, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace dplqg

int main() {
  using namespace dplqg;
  const std::vector<Criterion> criteria = {
      {1, "privacy calibration", PrivacyCalibration},
      {2, "analytic DP check", AnalyticDpCheck},
      {3, "DARE correctness", DareCorrectness},
      {4, "Kalman consistency", KalmanConsistency},
      {5, "entropy bound", TheoremBound},
      {6, "determinant lemmas", DeterminantLemmas},
      {7, "certainty equivalence", CertaintyEquivalence},
      {8, "case study", CaseStudy},
      {9, "epsilon sweep monotonicity", EpsilonSweep},
      {10, "protocol invariants", ProtocolInvariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
