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

#include "spatialcv/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spatialcv/error.hpp"

namespace spatialcv {

ScaleContext::ScaleContext(double wavenumber_k, double scale_d)
    : k_(wavenumber_k), d_(scale_d) {
  if (!(wavenumber_k > 0.0) || !std::isfinite(wavenumber_k)) {
    fail(ErrorCode::invalid_argument, "wavenumber must be positive and finite");
  }
  if (!(scale_d > 0.0) || !std::isfinite(scale_d)) {
    fail(ErrorCode::invalid_argument, "scale d must be positive and finite");
  }
}

ScaleContext ScaleContext::from_wavelength(double wavelength, double scale_d) {
  if (!(wavelength > 0.0)) {
    fail(ErrorCode::invalid_argument, "wavelength must be positive");
  }
  return ScaleContext(2.0 * std::numbers::pi / wavelength, scale_d);
}

ScaleContext ScaleContext::for_focal_length(double wavenumber_k, double focal) {
  if (!(focal > 0.0)) {
    fail(ErrorCode::invalid_argument, "focal length must be positive");
  }
  return ScaleContext(wavenumber_k, std::sqrt(focal / wavenumber_k));
}

ScaleContext ScaleContext::unit() { return ScaleContext(1.0, 1.0); }

Grid1D::Grid1D(std::size_t num_samples, double half_extent)
    : n_(num_samples), half_extent_(half_extent) {
  if (num_samples < kMinSamples || num_samples % 2 != 0) {
    fail(ErrorCode::invalid_argument,
         "grid needs an even sample count >= 8, got " +
             std::to_string(num_samples));
  }
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
    fail(ErrorCode::invalid_argument, "grid half extent must be positive");
  }
  dx_ = 2.0 * half_extent / static_cast<double>(n_);
  dp_ = 2.0 * std::numbers::pi / (static_cast<double>(n_) * dx_);
}

Grid1D Grid1D::self_dual(std::size_t num_samples) {
  const double n = static_cast<double>(num_samples);
  return Grid1D(num_samples, 0.5 * n * std::sqrt(2.0 * std::numbers::pi / n));
}

double Grid1D::conjugate_half_extent() const noexcept {
  return 0.5 * static_cast<double>(n_) * dp_;
}

double Grid1D::position(std::size_t j) const noexcept {
  return (static_cast<double>(j) - 0.5 * static_cast<double>(n_)) * dx_;
}

double Grid1D::wavevector(std::size_t m) const noexcept {
  return (static_cast<double>(m) - 0.5 * static_cast<double>(n_)) * dp_;
}

bool Grid1D::is_self_dual(double rel_tol) const noexcept {
  return std::abs(dx_ - dp_) <= rel_tol * dx_;
}

std::size_t Grid1D::nearest_index(double x) const noexcept {
  const double idx = std::round(x / dx_ + 0.5 * static_cast<double>(n_));
  if (!(idx > 0.0)) return 0;
  if (idx >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(idx);
}

}  // namespace spatialcv
