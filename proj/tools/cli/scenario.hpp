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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spatialcv/bipartite.hpp"
#include "spatialcv/entangle.hpp"
#include "spatialcv/gates.hpp"

namespace spatialcv::cli {

// Scenario problems (bad schema, failed execution). `field` is the JSON path
// of the responsible entry, e.g. "program[2].theta".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct GridSpec {
  std::size_t n = 512;
  std::optional<double> half_extent;  // absent: self-dual grid

  Grid1D build() const;
};

struct ScaleSpec {
  std::optional<double> k;
  std::optional<double> wavelength;
  std::optional<double> d;
  std::optional<double> f_ref;

  ScaleContext build() const;
};

struct StateSpec {
  enum class Kind { gaussian, hermite_gauss, epr, spdc, cluster };
  Kind kind = Kind::gaussian;
  // gaussian
  double center_x = 0.0;
  double center_p = 0.0;
  double width = 1.0;
  // hermite_gauss: either one order or a coefficient list
  unsigned order = 0;
  std::vector<Complex> coefficients;
  // epr
  double q_total = 0.0;
  double sigma_corr = RegularizationDefaults::sigma_corr;
  double sigma_env = RegularizationDefaults::sigma_env;
  // spdc
  PumpProfile::Kind pump_kind = PumpProfile::Kind::plane_wave;
  double pump_width = RegularizationDefaults::sigma_pump;
  std::optional<double> envelope_width;
  // epr / spdc DOF labels
  std::array<DofLabel, 2> labels{DofLabel::photon1_x, DofLabel::photon2_x};
  // cluster
  ClusterSpec cluster;
};

struct ProgramStep {
  GateDescriptor gate;
  std::optional<DofLabel> dof;  // required for two-DOF states
};

struct MeasurementSpec {
  std::optional<DofLabel> dof;
  bool quadrature = false;
  double theta = 0.0;
  std::optional<double> outcome;       // absent: sample
  std::optional<std::uint64_t> seed;   // absent: derived from the scenario seed
};

struct OutputSpec {
  enum class Kind { state, marginal, moments, phase_surface, nullifiers, fidelity_vs };
  Kind kind = Kind::moments;
  Representation representation = Representation::position;
  std::optional<DofLabel> dof;
  std::vector<double> w_p;                // nullifiers: squeezing ladder
  bool require_decreasing = false;        // nullifiers: tolerance check
  std::optional<StateSpec> reference;     // fidelity_vs: absent = initial state
  std::optional<double> min_fidelity;     // fidelity_vs: tolerance check
  std::string name;                       // file stem
};

struct Scenario {
  int version = 1;
  GridSpec grid;
  ScaleSpec scale;
  std::optional<std::uint64_t> seed;
  StateSpec state;
  std::vector<ProgramStep> program;
  std::map<std::string, PhaseMask> masks;
  ExecutionOptions execution;
  std::vector<MeasurementSpec> measurements;
  std::vector<OutputSpec> outputs;
  double norm_tolerance = Tolerances::norm_drift;
};

// Parses and validates a scenario document. Unknown fields are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::string_view to_string(StateSpec::Kind kind);
std::string_view to_string(OutputSpec::Kind kind);

}  // namespace spatialcv::cli
