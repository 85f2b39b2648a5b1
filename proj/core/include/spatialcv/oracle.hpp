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

#include <span>

#include "spatialcv/bipartite.hpp"
#include "spatialcv/wavefield.hpp"

// Slow reference transforms. Everything here is written directly from the
// integral kernels with O(N^2) quadrature and shares no code with the fast
// gate implementations; it exists to check them.
namespace spatialcv::oracle {

struct DenseKernel {
  enum class Source { frft, fresnel, fourier_integral };

  ComplexMatrix matrix;  // out_j = sum_k matrix(j, k) psi_k
  Source source;
  double parameter;  // theta for frft, z / (k d^2) for fresnel, 0 otherwise
  Grid1D grid;

  // Applies the kernel to a position-representation state and normalizes.
  SampledWaveFunction1D apply(const SampledWaveFunction1D& psi) const;

  // max |<K a|K b> - <a|b>| over all pairs of the given states: unitarity
  // restricted to states the grid resolves.
  double unitarity_defect(std::span<const SampledWaveFunction1D> states) const;
};

// Trapezoid discretization of the FRFT kernel
//   A exp(i cot(theta) (x^2 + x'^2) / 2) exp(-i x x' / sin(theta)),
//   A = exp(i (theta_r / 2 - pi / 4)) / sqrt(2 pi |sin(theta)|),
// theta_r = theta mod pi. Rejects |sin(theta)| < 1e-6 (singular_angle).
DenseKernel frft_kernel(const Grid1D& grid, double theta);

// Fresnel propagation over a = z / (k d^2) for band-limited samples: the
// convolution kernel is the free-space propagator integrated over the
// grid's wave-vector band,
//   K(x - x') = dx / (2 pi) int_{-P}^{P} exp(-i a p^2 / 2 + i p (x - x')) dp,
// evaluated with composite Gauss-Legendre quadrature. Rejects a <= 0.
DenseKernel fresnel_kernel(const Grid1D& grid, double a);

// exp(-i x p) / sqrt(2 pi) sampled on position rows and wave-vector columns
// (the position -> wave-vector integral, transposed roles).
DenseKernel fourier_kernel(const Grid1D& grid);

SampledWaveFunction1D frft_dense(const SampledWaveFunction1D& psi, double theta);

// Uses the state's ScaleContext for k d^2; the overload replaces k.
SampledWaveFunction1D fresnel_dense(const SampledWaveFunction1D& psi, double z);
SampledWaveFunction1D fresnel_dense(const SampledWaveFunction1D& psi, double z, double k);

}  // namespace spatialcv::oracle
