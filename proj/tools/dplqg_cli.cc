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

// Command-line front end: synthesize, simulate, sweep-epsilon, bound.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dplqg/commands.h"

namespace {

struct Flags {
  std::string config;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<double> grid;
  int seeds = 0;
  bool serial = false;
};

CLI::App* AddVerb(CLI::App& app, const std::string& name,
                  const std::string& help, Flags& f) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--config", f.config, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", f.out, "output directory (default: config's)");
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private cloud LQG: synthesis, simulation, "
               "epsilon sweeps and entropy bounds"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* synth =
      AddVerb(app, "synthesize", "solve both Riccati equations", f);
  CLI::App* sim = AddVerb(app, "simulate", "run the agent/cloud protocol", f);
  sim->add_option("--steps", f.steps, "horizon T");
  sim->add_option("--seed", f.seed, "master seed");
  CLI::App* sweep =
      AddVerb(app, "sweep-epsilon", "sweep a common epsilon over agents", f);
  sweep->add_option("--grid", f.grid, "epsilon values, comma separated")
      ->delimiter(',');
  sweep->add_option("--steps", f.steps, "horizon per run");
  sweep->add_option("--seed", f.seed, "master seed");
  sweep->add_option("--seeds", f.seeds, "replicates per epsilon")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--serial", f.serial, "use the serial reference kernel");
  CLI::App* bound = AddVerb(app, "bound", "entropy bound report", f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dplqg::kExitValidation;
  }

  dplqg::CommandOptions opts;
  opts.config = f.config;
  if (!f.out.empty()) opts.out = f.out;
  opts.serial = f.serial;

  if (synth->parsed()) return dplqg::RunSynthesize(opts, std::cout, std::cerr);
  if (bound->parsed()) return dplqg::RunBound(opts, std::cout, std::cerr);
  if (sim->parsed()) {
    if (sim->count("--steps")) opts.steps = f.steps;
    if (sim->count("--seed")) opts.seed = f.seed;
    return dplqg::RunSimulate(opts, std::cout, std::cerr);
  }
  if (sweep->count("--steps")) opts.steps = f.steps;
  if (sweep->count("--seed")) opts.seed = f.seed;
  if (sweep->count("--seeds")) opts.seeds = f.seeds;
  if (sweep->count("--grid")) opts.grid = f.grid;
  return dplqg::RunSweepEpsilon(opts, std::cout, std::cerr);
}
