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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>

namespace spatialcv::cli {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,          // schema, argument or execution error
  kExitCheckFailed = 2,    // a tolerance check was breached
};

struct RunOptions {
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::size_t> grid_n;
  std::optional<std::uint64_t> seed;
  bool trace = false;
};

// Executes a scenario file and writes report.json plus the requested data
// files into out_dir. Diagnostics go to `log`.
int run_command(const RunOptions& options, std::ostream& log);

struct CompileOptions {
  Eigen::Matrix2d matrix = Eigen::Matrix2d::Identity();
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();
  double k = 0.0;
  std::optional<double> d;
  std::optional<double> f_ref;
  std::string out_dir;
};

// Default reference focal length used to pin d when neither --d nor --f-ref
// is given [m].
inline constexpr double kDefaultReferenceFocal = 0.5;

// Decomposes a dimensionless target map into gates, lowers it to an optical
// layout and writes layout.tsv and compile_report.json.
int compile_command(const CompileOptions& options, std::ostream& log);

enum class ValidateProfile { fast, full };

struct ValidateOptions {
  ValidateProfile profile = ValidateProfile::fast;
  // Mutation test: flip the chirp sign inside the fast FRFT. The suite is
  // expected to fail.
  bool mutate_frft_chirp_sign = false;
  std::string out_dir = ".";
};

// Cross-checks the fast transforms against the dense references and writes
// validate_report.json.
int validate_command(const ValidateOptions& options, std::ostream& log);

}  // namespace spatialcv::cli
