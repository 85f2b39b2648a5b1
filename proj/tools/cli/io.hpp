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

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spatialcv/wavefield.hpp"

namespace spatialcv::cli {

// A NaN or infinity was about to be written. Nothing non-finite leaves the
// process; callers turn this into exit code 1.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& where)
      : std::runtime_error(where + ": non-finite value") {}
};

// %.17g, enough to round-trip every double. Throws NonFiniteError.
std::string format_number(double value, const std::string& where);

// Recursively rejects non-finite numbers in a JSON tree.
void require_finite(const nlohmann::json& value, const std::string& where);

// Writes `content` to `path`, replacing any existing file.
void write_file(const std::filesystem::path& path, const std::string& content);

// Writes JSON with a stable two-space layout and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

// "coordinate,real,imag,abs2" rows for a sampled state in its current
// representation.
std::string state_csv(const SampledWaveFunction1D& psi);

// "coordinate,density" rows.
std::string density_csv(std::span<const double> coordinates, std::span<const double> density);

// A matrix with a header row of column coordinates and a leading column of
// row coordinates; `corner` labels the top-left cell.
std::string matrix_csv(const std::string& corner, std::span<const double> rows,
                       std::span<const double> columns,
                       const std::vector<std::vector<double>>& values);

}  // namespace spatialcv::cli
