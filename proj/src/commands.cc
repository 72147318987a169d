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

#include "dplqg/commands.h"

#include <functional>
#include <sstream>
#include <string>

#include "dplqg/config.h"
#include "dplqg/entropy_bounds.h"
#include "dplqg/errors.h"
#include "dplqg/linalg.h"
#include "dplqg/lqg_pipeline.h"
#include "dplqg/network_sim.h"
#include "dplqg/sweep.h"
#include "dplqg/trace_io.h"

namespace dplqg {
namespace {

std::filesystem::path OutputDir(const CommandOptions& opts,
                                const ExperimentConfig& cfg) {
  return opts.out ? *opts.out : std::filesystem::path(cfg.output_dir);
}

LqgSynthesis Synthesize(const NetworkModel& m) {
  return SynthesizeLqg(m.A, m.B, m.C, m.W, m.V, m.Q, m.R);
}

std::string VectorOf(const std::vector<double>& values) {
  return FormatVector(Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size())));
}

// Maps the error hierarchy onto exit codes.
int Guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const AssumptionError& e) {
    err << "assumption failed [" << e.condition() << "]: " << e.what()
        << '\n';
    return kExitAssumption;
  } catch (const ConvergenceError& e) {
    err << "solver did not converge: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const BoundInapplicableError& e) {
    err << e.what() << '\n';
    return kExitBoundInapplicable;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace

int RunSynthesize(const CommandOptions& opts, std::ostream& out,
                  std::ostream& err) {
  return Guard(err, [&] {
    const ExperimentConfig cfg = LoadConfig(opts.config);
    const NetworkModel model = BuildNetwork(cfg);
    const LqgSynthesis syn = Synthesize(model);

    std::ostringstream doc;
    doc << "name=" << cfg.name << '\n'
        << "K=" << FormatMatrix(syn.control.K) << '\n'
        << "L=" << FormatMatrix(syn.control.L) << '\n'
        << "Sigma=" << FormatMatrix(syn.filter.Sigma) << '\n'
        << "SigmaBar=" << FormatMatrix(syn.filter.SigmaBar) << '\n'
        << "kalman_gain=" << FormatMatrix(syn.filter.kalman_gain) << '\n'
        << "V=" << FormatMatrix(model.V) << '\n'
        << "sigmas=" << VectorOf(model.sigmas) << '\n'
        << "control_residual=" << FormatDouble(syn.control.residual) << '\n'
        << "filter_residual=" << FormatDouble(syn.filter.residual) << '\n'
        << "control_iterations=" << syn.control.iterations << '\n'
        << "filter_iterations=" << syn.filter.iterations << '\n'
        << "closed_loop_spectral_radius="
        << FormatDouble(SpectralRadius(syn.closed_loop)) << '\n';
    const auto path = OutputDir(opts, cfg) / "synthesis.txt";
    WriteFileAtomically(path, doc.str());
    out << "wrote " << path.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int RunSimulate(const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  return Guard(err, [&] {
    const ExperimentConfig cfg = LoadConfig(opts.config);
    const std::int64_t steps = opts.steps.value_or(cfg.steps);
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    if (steps < 0) throw ValidationError("--steps must be >= 0");
    const NetworkModel model = BuildNetwork(cfg);
    const LqgSynthesis syn = Synthesize(model);
    const SimulationTrace trace =
        RunSimulation(model, cfg.agents, syn, steps, seed);

    const auto dir = OutputDir(opts, cfg);
    std::ostringstream trace_csv;
    WriteTraceCsv(trace_csv, trace, model);
    WriteFileAtomically(dir / "trace.csv", trace_csv.str());
    std::ostringstream wire_csv;
    WriteWireLogCsv(wire_csv, EavesdropperView(trace));
    WriteFileAtomically(dir / "wire_log.csv", wire_csv.str());

    double max_norm = 0.0;
    for (const auto& rec : trace.steps) {
      max_norm = std::max(max_norm, rec.x.norm());
    }
    std::ostringstream summary;
    summary << "name=" << cfg.name << '\n'
            << "steps=" << steps << '\n'
            << "seed=" << seed << '\n'
            << "final_average_cost="
            << (trace.steps.empty()
                    ? std::string("none")
                    : FormatDouble(trace.steps.back().average_cost))
            << '\n'
            << "max_state_norm=" << FormatDouble(max_norm) << '\n'
            << "logdet_sigma=" << FormatDouble(LogDet(syn.filter.Sigma))
            << '\n'
            << "sigmas=" << VectorOf(model.sigmas) << '\n'
            << "messages=" << trace.wire_log.size() << '\n';
    WriteFileAtomically(dir / "summary.txt", summary.str());
    out << summary.str();
    return static_cast<int>(kExitOk);
  });
}

int RunSweepEpsilon(const CommandOptions& opts, std::ostream& out,
                    std::ostream& err) {
  return Guard(err, [&] {
    ExperimentConfig cfg = LoadConfig(opts.config);
    SweepSettings settings = cfg.sweep.value_or(SweepSettings{});
    if (opts.grid) settings.epsilons = *opts.grid;
    if (opts.seeds) settings.seeds = *opts.seeds;
    if (opts.steps) settings.steps = *opts.steps;
    if (opts.seed) cfg.seed = *opts.seed;
    const std::vector<SweepPoint> rows =
        opts.serial ? SweepEpsilonSerial(cfg, settings)
                    : SweepEpsilonParallel(cfg, settings);
    std::ostringstream csv;
    WriteSweepCsv(csv, rows);
    const auto path = OutputDir(opts, cfg) / "sweep.csv";
    WriteFileAtomically(path, csv.str());
    out << "wrote " << rows.size() << " rows to " << path.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int RunBound(const CommandOptions& opts, std::ostream& out,
             std::ostream& err) {
  return Guard(err, [&] {
    const ExperimentConfig cfg = LoadConfig(opts.config);
    const NetworkModel model = BuildNetwork(cfg);
    const auto path = OutputDir(opts, cfg) / "bound.txt";
    const HypothesisCheck check =
        Lemma4Hypothesis(model.A, model.W, model.C, model.V);
    if (!check.holds) {
      std::ostringstream doc;
      doc << "status=inapplicable\n"
          << "hypothesis_holds=false\n"
          << "hypothesis_lhs=" << FormatDouble(check.lhs) << '\n'
          << "hypothesis_rhs=" << FormatDouble(check.rhs) << '\n'
          << "hypothesis_margin=" << FormatDouble(check.margin()) << '\n';
      WriteFileAtomically(path, doc.str());
      out << doc.str();
      err << "bound inapplicable: hypothesis margin "
          << FormatDouble(check.margin()) << '\n';
      return static_cast<int>(kExitBoundInapplicable);
    }
    const EntropyBoundReport report =
        Theorem1Bound(model.A, model.W, model.C, model.V);
    const std::string doc = "status=applicable\n" + SerializeReport(report);
    WriteFileAtomically(path, doc);
    out << doc;
    return static_cast<int>(kExitOk);
  });
}

}  // namespace dplqg
