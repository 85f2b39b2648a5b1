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

#include <cmath>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "commands.hpp"
#include "io.hpp"
#include "spatialcv/error.hpp"
#include "spatialcv/symplectic.hpp"

namespace spatialcv::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kResidualLimit = 1e-9;

json gate_json(const GateDescriptor& g) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::Frft>) {
          return {{"gate", "frft"}, {"theta", v.theta}};
        } else if constexpr (std::is_same_v<T, gate::Squeeze>) {
          return {{"gate", "squeeze"}, {"f1", v.f1}, {"f2", v.f2}, {"r", v.f2 / v.f1}};
        } else if constexpr (std::is_same_v<T, gate::PauliX>) {
          return {{"gate", "pauli_x"}, {"t", v.t}};
        } else if constexpr (std::is_same_v<T, gate::PauliZ>) {
          return {{"gate", "pauli_z"}, {"s", v.s}};
        } else {
          return {{"gate", gate_name(GateDescriptor(v))}};
        }
      },
      g);
}

}  // namespace

int compile_command(const CompileOptions& options, std::ostream& log) {
  try {
    if (!(options.k > 0.0) || !std::isfinite(options.k)) {
      fail(ErrorCode::invalid_argument, "--k must be a positive wavenumber");
    }
    if (options.d && options.f_ref) {
      fail(ErrorCode::invalid_argument, "give at most one of --d and --f-ref");
    }
    for (double v : options.matrix.reshaped()) {
      if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "--matrix must be finite");
    }
    for (double v : options.displacement) {
      if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "--displace must be finite");
    }
    const ScaleContext scale =
        options.d ? ScaleContext(options.k, *options.d)
                  : ScaleContext::for_focal_length(
                        options.k, options.f_ref.value_or(kDefaultReferenceFocal));

    const RayMatrix target{options.matrix, options.displacement};
    const GateProgram program = decompose_to_gates(target, scale);
    const double residual = recomposition_residual(program, target);
    const OpticalLayout layout = layout_of(program);

    const fs::path out(options.out_dir);
    fs::create_directories(out);
    write_file(out / "layout.tsv", layout_table(layout));

    json gates = json::array();
    for (const auto& g : program.gates) gates.push_back(gate_json(g));
    const bool passed = residual <= kResidualLimit;
    json report = {
        {"version", 1},
        {"target",
         {{"matrix",
           {{options.matrix(0, 0), options.matrix(0, 1)},
            {options.matrix(1, 0), options.matrix(1, 1)}}},
          {"displacement", {options.displacement(0), options.displacement(1)}},
          {"determinant", options.matrix.determinant()}}},
        {"scale", {{"k", scale.wavenumber()}, {"d", scale.scale_d()}, {"kappa", scale.kappa()}}},
        {"gates", gates},
        {"elements", layout.elements.size()},
        {"total_length_m", layout.total_length},
        {"residual", residual},
        {"residual_limit", kResidualLimit},
        {"status", passed ? "ok" : "check_failed"},
        {"files", {"layout.tsv", "compile_report.json"}}};
    write_json(out / "compile_report.json", report);
    log << "layout: " << layout.elements.size() << " elements, "
        << program.gates.size() << " gates, residual " << residual << "\n";
    if (!passed) {
      log << "FAIL recomposition residual " << residual << " > " << kResidualLimit << "\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace spatialcv::cli
