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
#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "spatialcv/wavefield.hpp"

namespace spatialcv {

// Transverse degrees of freedom of a photon pair.
enum class DofLabel { photon1_x, photon1_y, photon2_x, photon2_y };

std::string_view to_string(DofLabel label);
// Accepts the names produced by to_string; label_error otherwise.
DofLabel dof_label_from_string(std::string_view name);

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Joint pure state of two DOF. amplitudes(i, j) is sampled at coordinate i
// of axis 0 and coordinate j of axis 1, each in its own representation;
// sum |amplitudes|^2 * spacing_0 * spacing_1 = 1.
class BipartiteWaveFunction {
 public:
  BipartiteWaveFunction(std::array<Grid1D, 2> grids, ComplexMatrix amplitudes,
                        std::array<DofLabel, 2> labels,
                        std::array<Representation, 2> representations,
                        ScaleContext scale = ScaleContext::unit());

  static BipartiteWaveFunction normalized(std::array<Grid1D, 2> grids,
                                          ComplexMatrix amplitudes,
                                          std::array<DofLabel, 2> labels,
                                          std::array<Representation, 2> representations,
                                          ScaleContext scale = ScaleContext::unit());

  const Grid1D& grid(int axis) const { return grids_.at(static_cast<std::size_t>(axis)); }
  const ComplexMatrix& amplitudes() const noexcept { return amps_; }
  DofLabel label(int axis) const { return labels_.at(static_cast<std::size_t>(axis)); }
  const std::array<DofLabel, 2>& labels() const noexcept { return labels_; }
  Representation representation(int axis) const {
    return reps_.at(static_cast<std::size_t>(axis));
  }
  const ScaleContext& scale() const noexcept { return scale_; }

  double spacing(int axis) const;
  double coordinate(int axis, std::size_t index) const;
  double norm() const;
  bool has(DofLabel label) const noexcept;
  // Axis holding `label`; label_error if absent.
  int axis_of(DofLabel label) const;

 private:
  std::array<Grid1D, 2> grids_;
  ComplexMatrix amps_;
  std::array<DofLabel, 2> labels_;
  std::array<Representation, 2> reps_;
  ScaleContext scale_;
};

// psi_a(x) psi_b(y).
BipartiteWaveFunction product(const SampledWaveFunction1D& a, DofLabel label_a,
                              const SampledWaveFunction1D& b, DofLabel label_b);

// Converts one axis to the requested representation.
BipartiteWaveFunction in_representation(const BipartiteWaveFunction& psi, int axis,
                                        Representation rep);
BipartiteWaveFunction in_position(const BipartiteWaveFunction& psi);

// Applies a single-DOF linear map to every fibre along `axis`. The callback
// sees position-representation samples and must act in place; the axis keeps
// its original representation afterwards.
BipartiteWaveFunction apply_along(
    const BipartiteWaveFunction& psi, int axis,
    const std::function<void(std::span<Complex>, const Grid1D&)>& op,
    const char* operation);

// |psi|^2 of one DOF integrated over the partner, in that axis's
// representation (or the requested one).
std::vector<double> marginal(const BipartiteWaveFunction& psi, int axis);
std::vector<double> marginal(const BipartiteWaveFunction& psi, int axis,
                             Representation rep);

// Discrete mutual information (nats) between the two axes of |psi|^2 in the
// current representations.
double mutual_information(const BipartiteWaveFunction& psi);

}  // namespace spatialcv
