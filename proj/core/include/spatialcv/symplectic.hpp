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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spatialcv/gates.hpp"

namespace spatialcv {

// Affine phase-space map (x, p) -> m (x, p) + displacement. Matrices from
// abcd_of_single_lens act on dimensional (x_d, p_d); everything produced
// from gate descriptors acts on dimensionless (x, p). Convert with
// to_dimensionless / to_dimensional.
struct RayMatrix {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();

  static RayMatrix identity() { return {}; }
  bool is_symplectic(double tol = 1e-12) const;
};

// The affine map that applies `first` and then `second`.
RayMatrix then(const RayMatrix& first, const RayMatrix& second);

RayMatrix to_dimensionless(const RayMatrix& dimensional, const ScaleContext& scale);
RayMatrix to_dimensional(const RayMatrix& dimensionless, const ScaleContext& scale);

// Free space z, thin lens f, free space z, acting on (x_d, p_d):
// [[1 - z/f, (z/k)(2 - z/f)], [-k/f, 1 - z/f]].
RayMatrix abcd_of_single_lens(double z, double f, double k);

// Dimensionless Heisenberg image of one Gaussian-preserving gate.
// PhasePoly with n >= 3 and SlmMask are rejected as non-Gaussian.
RayMatrix abcd_of_gate(const GateDescriptor& g, const ScaleContext& scale);

// Ordered composition of every gate; errors carry the step index.
RayMatrix abcd_of_program(const GateProgram& program);

// mean -> m mean + displacement, covariance -> m S m^T.
MomentSummary predict_moments(const RayMatrix& map, const MomentSummary& in);

// Factors a dimensionless unimodular target into
// [FRFT(beta), Squeeze(kappa, r kappa), FRFT(alpha)] followed by PauliX and
// PauliZ for the displacement. Rotation angles are canonical in [0, 2 pi);
// no-op stages are omitted, so the identity yields an empty program and an
// orthogonal target a single FRFT.
GateProgram decompose_to_gates(const RayMatrix& target,
                               const ScaleContext& scale = ScaleContext::unit());

// Frobenius distance between the program's composed map and the target,
// linear and affine parts together.
double recomposition_residual(const GateProgram& program, const RayMatrix& target);

enum class ElementKind { free_space, lens, lps, slm };

struct LayoutElement {
  ElementKind kind = ElementKind::free_space;
  double z_position = 0.0;  // plane of the element, or start of a free segment [m]
  double length = 0.0;      // free_space only [m]
  double focal = 0.0;       // lens only [m]
  double slope = 0.0;       // lps only: phase s x in dimensionless x
  std::string mask_id;      // slm only
  PhaseMask mask;           // slm only: phase polynomial in dimensionless x
};

struct OpticalLayout {
  std::vector<LayoutElement> elements;
  double total_length = 0.0;
  ScaleContext scale = ScaleContext::unit();
};

// Lowers a program to lenses, free space, linear phase shifters and SLMs at
// the program's scale. Elements landing on the same plane are merged.
OpticalLayout layout_of(const GateProgram& program);

// Line-oriented table: a commented header, then "kind<TAB>z_m<TAB>parameter"
// per element, numbers printed with 17 significant digits.
void write_layout_table(std::ostream& os, const OpticalLayout& layout);
std::string layout_table(const OpticalLayout& layout);

// Runs the layout element by element through the gates module.
SampledWaveFunction1D simulate_layout(const SampledWaveFunction1D& psi,
                                      const OpticalLayout& layout);

}  // namespace spatialcv
