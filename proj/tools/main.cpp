/* Copyright 2026 The spatialcv Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace spatialcv::cli;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatialcv: continuous-variable gates on the transverse field of a photon"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
  run_cmd->add_option("--scenario", run.scenario_path, "scenario JSON file")->required();
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();
  std::size_t grid_n = 0;
  auto* grid_opt = run_cmd->add_option("--grid-n", grid_n, "override the grid size");
  std::uint64_t seed = 0;
  auto* seed_opt = run_cmd->add_option("--seed", seed, "override the sampling seed");
  run_cmd->add_flag("--trace", run.trace, "write per-step trace.csv");

  CompileOptions compile;
  std::vector<double> matrix;
  std::vector<double> displacement;
  double d = 0.0;
  double f_ref = 0.0;
  auto* compile_cmd = app.add_subcommand("compile", "lower a phase-space map to optics");
  compile_cmd->add_option("--matrix", matrix, "dimensionless a,b,c,d (row-major)")
      ->required()
      ->delimiter(',')
      ->expected(4);
  compile_cmd->add_option("--displace", displacement, "displacement t,s")
      ->delimiter(',')
      ->expected(2);
  compile_cmd->add_option("--k", compile.k, "wavenumber [1/m]")->required();
  auto* d_opt = compile_cmd->add_option("--d", d, "scale length d [m]");
  auto* f_opt = compile_cmd->add_option("--f-ref", f_ref,
                                        "reference focal length pinning d = sqrt(f/k) [m]");
  d_opt->excludes(f_opt);
  compile_cmd->add_option("--out", compile.out_dir, "output directory")->required();

  ValidateOptions validate;
  std::string profile = "fast";
  std::string mutate;
  auto* validate_cmd = app.add_subcommand("validate", "cross-check against dense references");
  validate_cmd->add_option("--profile", profile, "fast (N=256) or full (N=1024)")
      ->check(CLI::IsMember({"fast", "full"}));
  validate_cmd->add_option("--mutate", mutate, "inject a known defect (frft-chirp-sign)")
      ->check(CLI::IsMember({"frft-chirp-sign"}));
  validate_cmd->add_option("--out", validate.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*run_cmd) {
    if (*grid_opt) run.grid_n = grid_n;
    if (*seed_opt) run.seed = seed;
    return run_command(run, std::cerr);
  }
  if (*compile_cmd) {
    compile.matrix << matrix[0], matrix[1], matrix[2], matrix[3];
    if (!displacement.empty()) compile.displacement << displacement[0], displacement[1];
    if (*d_opt) compile.d = d;
    if (*f_opt) compile.f_ref = f_ref;
    return compile_command(compile, std::cerr);
  }
  validate.profile = profile == "full" ? ValidateProfile::full : ValidateProfile::fast;
  validate.mutate_frft_chirp_sign = mutate == "frft-chirp-sign";
  return validate_command(validate, std::cerr);
}
