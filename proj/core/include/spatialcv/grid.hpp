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

#include <cstddef>

namespace spatialcv {

// Optical wavenumber k and the length scale d that makes transverse
// coordinates dimensionless: x = x_d / d, p = p_d * d.
class ScaleContext {
 public:
  ScaleContext(double wavenumber_k, double scale_d);

  static ScaleContext from_wavelength(double wavelength, double scale_d);
  // d = sqrt(focal / k), the choice that turns a focal-plane lens system
  // with focal length `focal` into the unit Fourier gate.
  static ScaleContext for_focal_length(double wavenumber_k, double focal);
  // Dimensionless default used when no optics are involved: k = 1, d = 1.
  static ScaleContext unit();

  double wavenumber() const noexcept { return k_; }
  double scale_d() const noexcept { return d_; }
  // k d^2, the length that converts propagation distances and focal
  // lengths to their dimensionless counterparts.
  double kappa() const noexcept { return k_ * d_ * d_; }

  double position_to_dimensionless(double x_d) const noexcept { return x_d / d_; }
  double position_to_dimensional(double x) const noexcept { return x * d_; }
  double wavevector_to_dimensionless(double p_d) const noexcept { return p_d * d_; }
  double wavevector_to_dimensional(double p) const noexcept { return p / d_; }

  friend bool operator==(const ScaleContext&, const ScaleContext&) = default;

 private:
  double k_;
  double d_;
};

// Uniform, centered sampling of one transverse coordinate. Samples sit at
// x_j = (j - N/2) dx for j = 0..N-1, so x = 0 is always a sample and the
// grid is symmetric up to the lone point at -half_extent. The conjugate
// (wave-vector) grid uses the same index convention with dp = 2 pi / (N dx),
// which puts p = 0 at index N/2 as well; storage is centered, and the FFT
// ordering shuffle is confined to the spectral backend.
class Grid1D {
 public:
  static constexpr std::size_t kMinSamples = 8;

  Grid1D(std::size_t num_samples, double half_extent);

  // A grid whose position and wave-vector spacings coincide
  // (dx = dp = sqrt(2 pi / N)); on such grids the Fourier gate is an exact
  // relabeling of the discrete transform.
  static Grid1D self_dual(std::size_t num_samples);

  std::size_t size() const noexcept { return n_; }
  double half_extent() const noexcept { return half_extent_; }
  double spacing() const noexcept { return dx_; }
  double conjugate_spacing() const noexcept { return dp_; }
  double conjugate_half_extent() const noexcept;

  double position(std::size_t j) const noexcept;
  double wavevector(std::size_t m) const noexcept;

  bool is_self_dual(double rel_tol = 1e-12) const noexcept;

  // Index of the sample closest to x (clamped to the grid).
  std::size_t nearest_index(double x) const noexcept;

  friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
    return a.n_ == b.n_ && a.half_extent_ == b.half_extent_;
  }

 private:
  std::size_t n_;
  double half_extent_;
  double dx_;
  double dp_;
};

}  // namespace spatialcv
