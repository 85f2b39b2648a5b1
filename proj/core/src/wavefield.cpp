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

#include "spatialcv/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spatialcv/error.hpp"
#include "spectral.hpp"

namespace spatialcv {

SampledWaveFunction1D::SampledWaveFunction1D(Grid1D grid, ComplexVector amplitudes,
                                             Representation representation,
                                             ScaleContext scale)
    : SampledWaveFunction1D(Unchecked{}, std::move(grid), std::move(amplitudes),
                            representation, std::move(scale)) {
  const double n = norm();
  if (!(std::abs(n - 1.0) <= Tolerances::norm_drift)) {
    fail(ErrorCode::unnormalized,
         "wavefunction norm " + std::to_string(n) + " differs from 1");
  }
}

SampledWaveFunction1D::SampledWaveFunction1D(Unchecked, Grid1D grid,
                                             ComplexVector amplitudes,
                                             Representation representation,
                                             ScaleContext scale)
    : grid_(std::move(grid)),
      amps_(std::move(amplitudes)),
      rep_(representation),
      scale_(std::move(scale)) {
  if (amps_.size() != grid_.size()) {
    fail(ErrorCode::grid_mismatch, "amplitude count " +
                                       std::to_string(amps_.size()) +
                                       " does not match grid size " +
                                       std::to_string(grid_.size()));
  }
}

SampledWaveFunction1D SampledWaveFunction1D::normalized(Grid1D grid,
                                                        ComplexVector amplitudes,
                                                        Representation representation,
                                                        ScaleContext scale) {
  SampledWaveFunction1D raw(Unchecked{}, std::move(grid), std::move(amplitudes),
                            representation, std::move(scale));
  const double n = raw.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::unnormalized, "cannot normalize a zero or non-finite state");
  }
  const double inv = 1.0 / std::sqrt(n);
  for (auto& v : raw.amps_) v *= inv;
  return raw;
}

double SampledWaveFunction1D::spacing() const noexcept {
  return rep_ == Representation::position ? grid_.spacing()
                                          : grid_.conjugate_spacing();
}

double SampledWaveFunction1D::coordinate(std::size_t j) const noexcept {
  return rep_ == Representation::position ? grid_.position(j)
                                          : grid_.wavevector(j);
}

double SampledWaveFunction1D::norm() const noexcept {
  return detail::norm_squared(amps_, spacing());
}

SampledWaveFunction1D SampledWaveFunction1D::with_scale(ScaleContext scale) const {
  return SampledWaveFunction1D(Unchecked{}, grid_, amps_, rep_, std::move(scale));
}

SampledWaveFunction1D renormalized(SampledWaveFunction1D state,
                                   const char* operation) {
  const double n = state.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::unnormalized,
         std::string(operation) + " produced a zero or non-finite state");
  }
  if (std::abs(n - 1.0) > Tolerances::norm_drift) {
    warn(std::string(operation) + ": norm drifted to " + std::to_string(n) +
         ", renormalizing");
    const double inv = 1.0 / std::sqrt(n);
    for (auto& v : state.amps_) v *= inv;
  }
  return state;
}

SampledWaveFunction1D renormalized(Grid1D grid, ComplexVector amplitudes,
                                   Representation representation, ScaleContext scale,
                                   const char* operation) {
  return renormalized(
      SampledWaveFunction1D(SampledWaveFunction1D::Unchecked{}, std::move(grid),
                            std::move(amplitudes), representation, std::move(scale)),
      operation);
}

namespace {

void require_width_fits(const Grid1D& grid, double center_x, double center_p,
                        double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    fail(ErrorCode::invalid_argument, "gaussian width must be positive");
  }
  if (std::abs(center_x) + 5.0 * width >= grid.half_extent()) {
    fail(ErrorCode::support_overflow,
         "gaussian 5-sigma footprint exceeds the position grid");
  }
  if (std::abs(center_p) + 5.0 / width >= grid.conjugate_half_extent()) {
    fail(ErrorCode::support_overflow,
         "gaussian 5-sigma footprint exceeds the wave-vector grid");
  }
}

// Normalized Hermite functions h_0..h_max at x via the stable three-term
// recurrence.
std::vector<double> hermite_functions(unsigned max_order, double x) {
  std::vector<double> h(max_order + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (max_order >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (unsigned n = 1; n < max_order; ++n) {
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * x * h[n] -
               std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1];
  }
  return h;
}

void require_order_fits(const Grid1D& grid, unsigned order) {
  if (order > grid.size() / 8) {
    fail(ErrorCode::order_too_large,
         "Hermite-Gauss order " + std::to_string(order) + " exceeds N/8");
  }
  const double reach = std::sqrt(2.0 * order + 1.0) + 4.0;
  if (reach >= std::min(grid.half_extent(), grid.conjugate_half_extent())) {
    fail(ErrorCode::order_too_large,
         "Hermite-Gauss order " + std::to_string(order) +
             " does not fit the grid");
  }
}

}  // namespace

SampledWaveFunction1D make_gaussian(const Grid1D& grid, double center_x,
                                    double center_p, double width,
                                    const ScaleContext& scale) {
  require_width_fits(grid, center_x, center_p, width);
  ComplexVector amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.position(j);
    const double u = (x - center_x) / width;
    amps[j] = std::polar(std::exp(-0.5 * u * u), center_p * x);
  }
  return SampledWaveFunction1D::normalized(grid, std::move(amps),
                                           Representation::position, scale);
}

SampledWaveFunction1D make_hermite_gauss(const Grid1D& grid, unsigned order,
                                         const ScaleContext& scale) {
  require_order_fits(grid, order);
  ComplexVector amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    amps[j] = hermite_functions(order, grid.position(j))[order];
  }
  return SampledWaveFunction1D::normalized(grid, std::move(amps),
                                           Representation::position, scale);
}

SampledWaveFunction1D make_hermite_superposition(const Grid1D& grid,
                                                 std::span<const Complex> coefficients,
                                                 const ScaleContext& scale) {
  if (coefficients.empty()) {
    fail(ErrorCode::invalid_argument, "empty Hermite-Gauss superposition");
  }
  const auto max_order = static_cast<unsigned>(coefficients.size() - 1);
  require_order_fits(grid, max_order);
  ComplexVector amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto h = hermite_functions(max_order, grid.position(j));
    Complex acc{0.0, 0.0};
    for (unsigned n = 0; n <= max_order; ++n) acc += coefficients[n] * h[n];
    amps[j] = acc;
  }
  return SampledWaveFunction1D::normalized(grid, std::move(amps),
                                           Representation::position, scale);
}

SampledWaveFunction1D to_conjugate_representation(const SampledWaveFunction1D& psi) {
  ComplexVector out(psi.grid().size());
  if (psi.representation() == Representation::position) {
    detail::forward_transform(psi.amplitudes(), out, psi.grid());
    return SampledWaveFunction1D(psi.grid(), std::move(out),
                                 Representation::wavevector, psi.scale());
  }
  detail::inverse_transform(psi.amplitudes(), out, psi.grid());
  return SampledWaveFunction1D(psi.grid(), std::move(out),
                               Representation::position, psi.scale());
}

SampledWaveFunction1D in_representation(const SampledWaveFunction1D& psi,
                                        Representation rep) {
  if (psi.representation() == rep) return psi;
  return to_conjugate_representation(psi);
}

std::vector<double> marginal(const SampledWaveFunction1D& psi, Representation rep) {
  const auto state = in_representation(psi, rep);
  std::vector<double> out(state.amplitudes().size());
  std::transform(state.amplitudes().begin(), state.amplitudes().end(),
                 out.begin(), [](const Complex& v) { return std::norm(v); });
  return out;
}

MomentSummary moments(const SampledWaveFunction1D& psi) {
  const auto pos = in_representation(psi, Representation::position);
  const Grid1D& g = pos.grid();
  const std::size_t n = g.size();
  const double dx = g.spacing();
  const double dp = g.conjugate_spacing();
  const auto& w = pos.amplitudes();

  ComplexVector v(n);
  detail::forward_transform(w, v, g);

  double mx = 0.0, mxx = 0.0, mp = 0.0, mpp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = g.position(j);
    const double rho = std::norm(w[j]) * dx;
    mx += x * rho;
    mxx += x * x * rho;
    const double p = g.wavevector(j);
    const double sigma = std::norm(v[j]) * dp;
    mp += p * sigma;
    mpp += p * p * sigma;
  }

  // Symmetrized cross term Re <x psi | p psi>, with p psi formed spectrally.
  ComplexVector pv(n), ppsi(n);
  for (std::size_t m = 0; m < n; ++m) pv[m] = g.wavevector(m) * v[m];
  detail::inverse_transform(pv, ppsi, g);
  double xp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    xp += std::real(std::conj(g.position(j) * w[j]) * ppsi[j]);
  }
  xp *= dx;

  MomentSummary out;
  out.mean << mx, mp;
  const double cov = xp - mx * mp;
  out.covariance << mxx - mx * mx, cov, cov, mpp - mp * mp;
  return out;
}

namespace {

void require_compatible(const SampledWaveFunction1D& psi,
                        const SampledWaveFunction1D& phi) {
  if (!(psi.grid() == phi.grid())) {
    fail(ErrorCode::grid_mismatch, "states live on different grids");
  }
  if (psi.representation() != phi.representation()) {
    fail(ErrorCode::representation, "states are in different representations");
  }
}

}  // namespace

Complex overlap(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi) {
  require_compatible(psi, phi);
  Complex acc{0.0, 0.0};
  const auto& a = psi.amplitudes();
  const auto& b = phi.amplitudes();
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc * psi.spacing();
}

double fidelity(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi) {
  return std::norm(overlap(psi, phi));
}

double l2_distance(const SampledWaveFunction1D& psi, const SampledWaveFunction1D& phi) {
  require_compatible(psi, phi);
  double acc = 0.0;
  const auto& a = psi.amplitudes();
  const auto& b = phi.amplitudes();
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
  return std::sqrt(acc * psi.spacing());
}

double tail_probability(const SampledWaveFunction1D& psi, Representation rep,
                        double limit) {
  const auto state = in_representation(psi, rep);
  double acc = 0.0;
  for (std::size_t j = 0; j < state.amplitudes().size(); ++j) {
    if (std::abs(state.coordinate(j)) > limit) {
      acc += std::norm(state.amplitudes()[j]);
    }
  }
  return acc * state.spacing();
}

}  // namespace spatialcv
