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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "spatialcv/grid.hpp"

namespace spatialcv {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

enum class Representation { position, wavevector };

// Numerical tolerances shared by every module.
struct Tolerances {
  static constexpr double exact = 1e-12;
  static constexpr double norm_drift = 1e-9;
  static constexpr double transform = 1e-6;
};

// Sampled pure state of one transverse degree of freedom. Immutable: every
// operation returns a new value. Amplitudes are normalized so that
// sum |psi_j|^2 * spacing = 1 in the active representation.
class SampledWaveFunction1D {
 public:
  // Rejects amplitudes whose norm deviates from 1 by more than the norm
  // drift tolerance.
  SampledWaveFunction1D(Grid1D grid, ComplexVector amplitudes,
                        Representation representation, ScaleContext scale);

  // Normalizes arbitrary nonzero amplitudes.
  static SampledWaveFunction1D normalized(Grid1D grid, ComplexVector amplitudes,
                                          Representation representation,
                                          ScaleContext scale);

  const Grid1D& grid() const noexcept { return grid_; }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Representation representation() const noexcept { return rep_; }
  const ScaleContext& scale() const noexcept { return scale_; }

  // Sample spacing of the active representation.
  double spacing() const noexcept;
  // Coordinate of sample j in the active representation.
  double coordinate(std::size_t j) const noexcept;
  double norm() const noexcept;

  SampledWaveFunction1D with_scale(ScaleContext scale) const;

 private:
  struct Unchecked {};
  SampledWaveFunction1D(Unchecked, Grid1D grid, ComplexVector amplitudes,
                        Representation representation, ScaleContext scale);
  friend SampledWaveFunction1D renormalized(SampledWaveFunction1D,
                                            const char*);
  friend SampledWaveFunction1D renormalized(Grid1D, ComplexVector, Representation,
                                            ScaleContext, const char*);

  Grid1D grid_;
  ComplexVector amps_;
  Representation rep_;
  ScaleContext scale_;
};

// Re-normalize after a gate; warns when the drift exceeded the tolerance.
SampledWaveFunction1D renormalized(SampledWaveFunction1D state,
                                   const char* operation);
// Same, from raw gate output; amplitudes within tolerance are kept bit-exact.
SampledWaveFunction1D renormalized(Grid1D grid, ComplexVector amplitudes,
                                   Representation representation, ScaleContext scale,
                                   const char* operation);

struct MomentSummary {
  Eigen::Vector2d mean;        // (<x>, <p>)
  Eigen::Matrix2d covariance;  // symmetrized, [x, p] = i

  double uncertainty_product() const { return covariance.determinant(); }
};

// psi(x) ~ exp(-(x - center_x)^2 / (2 w^2) + i center_p x). Var(x) = w^2/2.
SampledWaveFunction1D make_gaussian(const Grid1D& grid, double center_x,
                                    double center_p, double width,
                                    const ScaleContext& scale = ScaleContext::unit());

// n-th Hermite-Gauss function with unit natural width (n = 0 is the w = 1
// Gaussian). Orders above N/8, or whose classical turning point plus a
// five-unit tail does not fit the grid in both representations, are
// rejected.
SampledWaveFunction1D make_hermite_gauss(const Grid1D& grid, unsigned order,
                                         const ScaleContext& scale = ScaleContext::unit());

// Normalized superposition sum_n c_n HG_n.
SampledWaveFunction1D make_hermite_superposition(
    const Grid1D& grid, std::span<const Complex> coefficients,
    const ScaleContext& scale = ScaleContext::unit());

// Position <-> wave-vector. The position-to-wave-vector kernel is
// exp(-i x p) / sqrt(2 pi); applying the function twice returns the input.
SampledWaveFunction1D to_conjugate_representation(const SampledWaveFunction1D& psi);
SampledWaveFunction1D in_representation(const SampledWaveFunction1D& psi,
                                        Representation rep);

MomentSummary moments(const SampledWaveFunction1D& psi);

// |psi|^2 sampled in the requested representation.
std::vector<double> marginal(const SampledWaveFunction1D& psi, Representation rep);

// sum conj(psi_j) phi_j spacing; grids and representations must match.
Complex overlap(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi);

// |<psi|phi>|^2
double fidelity(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi);

// sqrt(sum |psi_j - phi_j|^2 spacing), same grid and representation.
double l2_distance(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi);

// Probability carried by samples with |coordinate| > limit in the given
// representation.
double tail_probability(const SampledWaveFunction1D& psi, Representation rep,
                        double limit);

}  // namespace spatialcv
