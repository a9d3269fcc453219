// Copyright 2026 The mbsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>

#include "mbsynth/cli.hpp"

int main(int argc, char** argv) {
  mbsynth::CliConfig cfg;
  CLI::App app{"Decompose unitaries into linear-optical circuits"};
  app.require_subcommand(1);

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input_path, "matrix JSON file");
    sub->add_option("--random", cfg.random_n, "use a Haar-random NxN matrix")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for --random (default 1)");
    sub->add_option("--tolerance", cfg.tolerance,
                    "reconstruction tolerance (default 1e-8)");
  };

  auto* dec = app.add_subcommand("decompose", "decompose a unitary");
  dec->add_option("--scheme", cfg.scheme, "reck|clements|u2|mbs3|bwc")
      ->required();
  add_input(dec);
  dec->add_option("--output", cfg.output_path, "write circuit JSON here");
  dec->add_option("--save-input", cfg.save_input_path,
                  "write the input matrix JSON here");

  auto* ver = app.add_subcommand("verify", "compare a circuit with a matrix");
  ver->add_option("--circuit", cfg.circuit_path, "circuit JSON file")
      ->required();
  add_input(ver);

  auto* rep = app.add_subcommand("report", "component counts per scheme");
  rep->add_option("--min", cfg.n_min, "smallest N (default 2)");
  rep->add_option("--max", cfg.n_max, "largest N (default 8)");
  rep->add_option("--seed", cfg.seed, "base seed (default 1)");
  rep->add_option("--tolerance", cfg.tolerance, "reconstruction tolerance");
  rep->add_option("--csv", cfg.csv_path, "also write the CSV here");

  auto* usd = app.add_subcommand("usd", "state-discrimination example");
  usd->add_option("--delta", cfg.delta, "b/a, in (0, 1)")->required();
  usd->add_option("--tolerance", cfg.tolerance, "residual tolerance");
  usd->add_option("--output", cfg.output_path, "write circuit JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mbsynth::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return mbsynth::run_command(cfg, std::cout, std::cerr);
}
