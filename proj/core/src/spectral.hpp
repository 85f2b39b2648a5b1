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

// Raw-buffer spectral kernels shared by the single-DOF gates and the
// along-axis operations on joint amplitudes. Buffers are centered sample
// arrays in the layout described on Grid1D.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "spatialcv/grid.hpp"

namespace spatialcv::detail {

using Complex = std::complex<double>;

// Position -> wave-vector with kernel exp(-i x p) / sqrt(2 pi), as a
// Riemann sum over the samples. inverse_transform is its exact inverse.
void forward_transform(std::span<const Complex> in, std::span<Complex> out,
                       const Grid1D& grid);
void inverse_transform(std::span<const Complex> in, std::span<Complex> out,
                       const Grid1D& grid);

// psi(x) -> psi(-x), with the unpaired sample at -half_extent treated
// periodically.
void parity_inplace(std::span<Complex> psi);

// Multiply by exp(i phase(x_j)) (position samples).
void position_phase_inplace(std::span<Complex> psi, const Grid1D& grid,
                            const std::function<double(double)>& phase);

// Multiply the wave-vector amplitudes by exp(i phase(p_m)); the buffer holds
// position samples before and after.
void wavevector_phase_inplace(std::span<Complex> psi, const Grid1D& grid,
                              const std::function<double(double)>& phase);

// exp(-i (a/2) x^2) and exp(-i (b/2) p^2), the dimensionless lens and
// free-propagation operators.
void lens_inplace(std::span<Complex> psi, const Grid1D& grid, double a);
void propagate_inplace(std::span<Complex> psi, const Grid1D& grid, double b);

struct RotationOptions {
  // +1 for the physical chirp sign. -1 flips the lens chirp inside each
  // shear stage; only used to check that the validation suite notices.
  int chirp_sign = +1;
};

// Phase-space rotation F_theta = exp(i theta/2) exp(-i theta (x^2+p^2)/2)
// applied to position samples. Angles are reduced modulo 2 pi; multiples of
// pi dispatch to identity/parity, self-dual grids use the exact discrete
// Fourier transform for quarter turns, and the remainder is realized as
// lens-propagation-lens (or propagation-lens-propagation) shears of at most
// pi/4 each, with the metaplectic global phase fixed so that the
// ground-state Gaussian is invariant.
void rotate_inplace(std::span<Complex> psi, const Grid1D& grid, double theta,
                    RotationOptions options = {});

// Evaluate the band-limited interpolant of the position samples at
// arbitrary points (direct O(N M) sum over the wave-vector amplitudes).
std::vector<Complex> evaluate_bandlimited(std::span<const Complex> psi,
                                          const Grid1D& grid,
                                          std::span<const double> points);

double norm_squared(std::span<const Complex> psi, double spacing);

}  // namespace spatialcv::detail
