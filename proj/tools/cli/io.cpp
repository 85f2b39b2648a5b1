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

#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace spatialcv::cli {

std::string format_number(double value, const std::string& where) {
  if (!std::isfinite(value)) throw NonFiniteError(where);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void require_finite(const nlohmann::json& value, const std::string& where) {
  if (value.is_number_float()) {
    if (!std::isfinite(value.get<double>())) throw NonFiniteError(where);
  } else if (value.is_object()) {
    for (const auto& item : value.items()) {
      require_finite(item.value(), where + "." + item.key());
    }
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      require_finite(value[i], where + "[" + std::to_string(i) + "]");
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  require_finite(value, path.filename().string());
  write_file(path, value.dump(2) + "\n");
}

std::string state_csv(const SampledWaveFunction1D& psi) {
  std::string out = "coordinate,real,imag,abs2\n";
  const auto& a = psi.amplitudes();
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::string where = "state row " + std::to_string(j);
    out += format_number(psi.coordinate(j), where) + "," +
           format_number(a[j].real(), where) + "," + format_number(a[j].imag(), where) +
           "," + format_number(std::norm(a[j]), where) + "\n";
  }
  return out;
}

std::string density_csv(std::span<const double> coordinates, std::span<const double> density) {
  std::string out = "coordinate,density\n";
  for (std::size_t j = 0; j < coordinates.size(); ++j) {
    const std::string where = "marginal row " + std::to_string(j);
    out += format_number(coordinates[j], where) + "," + format_number(density[j], where) +
           "\n";
  }
  return out;
}

std::string matrix_csv(const std::string& corner, std::span<const double> rows,
                       std::span<const double> columns,
                       const std::vector<std::vector<double>>& values) {
  std::string out = corner;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += "," + format_number(columns[c], "matrix header");
  }
  out += "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "matrix row " + std::to_string(r);
    out += format_number(rows[r], where);
    for (double v : values[r]) out += "," + format_number(v, where);
    out += "\n";
  }
  return out;
}

}  // namespace spatialcv::cli
