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

#include "spatialcv/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spatialcv/error.hpp"

namespace spatialcv::oracle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussOrder = 12;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// int_{-P}^{P} exp(-i a p^2 / 2) cos(p delta) dp = 2 int_0^P ...
Complex band_limited_propagator(double a, double delta, double band,
                                const GaussRule& rule) {
  const double phase_span = 0.5 * a * band * band + band * std::abs(delta);
  const int panels = static_cast<int>(std::ceil(phase_span / kPi)) + 16;
  const double h = band / panels;
  Complex acc{0.0, 0.0};
  for (int s = 0; s < panels; ++s) {
    const double mid = (s + 0.5) * h;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double p = mid + 0.5 * h * rule.nodes[q];
      acc += rule.weights[q] * std::polar(std::cos(p * delta), -0.5 * a * p * p);
    }
  }
  return acc * h;  // 2 * (h / 2) from the panel map and the symmetric half
}

SampledWaveFunction1D position_state(const SampledWaveFunction1D& psi) {
  return in_representation(psi, Representation::position);
}

}  // namespace

SampledWaveFunction1D DenseKernel::apply(const SampledWaveFunction1D& psi) const {
  if (!(psi.grid() == grid)) {
    fail(ErrorCode::grid_mismatch, "state and dense kernel use different grids");
  }
  const auto pos = position_state(psi);
  const auto& in = pos.amplitudes();
  const auto n = static_cast<Eigen::Index>(in.size());
  ComplexVector out(in.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k) acc += matrix(j, k) * in[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  const auto rep = source == Source::fourier_integral ? Representation::wavevector
                                                      : Representation::position;
  return SampledWaveFunction1D::normalized(grid, std::move(out), rep, psi.scale());
}

double DenseKernel::unitarity_defect(std::span<const SampledWaveFunction1D> states) const {
  std::vector<ComplexVector> images;
  std::vector<ComplexVector> inputs;
  for (const auto& s : states) {
    const auto pos = position_state(s);
    const auto& in = pos.amplitudes();
    ComplexVector out(in.size());
    for (std::size_t j = 0; j < in.size(); ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < in.size(); ++k) {
        acc += matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * in[k];
      }
      out[j] = acc;
    }
    inputs.push_back(in);
    images.push_back(std::move(out));
  }
  const double out_spacing = source == Source::fourier_integral ? grid.conjugate_spacing()
                                                                : grid.spacing();
  double worst = 0.0;
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a; b < images.size(); ++b) {
      Complex before{0.0, 0.0}, after{0.0, 0.0};
      for (std::size_t j = 0; j < grid.size(); ++j) {
        before += std::conj(inputs[a][j]) * inputs[b][j];
        after += std::conj(images[a][j]) * images[b][j];
      }
      worst = std::max(worst, std::abs(after * out_spacing - before * grid.spacing()));
    }
  }
  return worst;
}

DenseKernel frft_kernel(const Grid1D& grid, double theta) {
  if (!std::isfinite(theta)) fail(ErrorCode::invalid_argument, "theta must be finite");
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-6) {
    fail(ErrorCode::singular_angle,
         "dense FRFT kernel is singular at theta = " + std::to_string(theta) +
             "; dispatch identity or parity instead");
  }
  const double c = std::cos(theta) / s;
  double reduced = std::fmod(theta, kPi);
  if (reduced < 0.0) reduced += kPi;
  const Complex amplitude =
      std::polar(1.0 / std::sqrt(2.0 * kPi * std::abs(s)), 0.5 * reduced - 0.25 * kPi);
  const std::size_t n = grid.size();
  const double dx = grid.spacing();
  DenseKernel k{ComplexMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                DenseKernel::Source::frft, theta, grid};
  for (std::size_t col = 0; col < n; ++col) {
    const double xp = grid.position(col);
    for (std::size_t row = 0; row < n; ++row) {
      const double x = grid.position(row);
      const double phase = 0.5 * c * (x * x + xp * xp) - x * xp / s;
      k.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          amplitude * std::polar(dx, phase);
    }
  }
  return k;
}

DenseKernel fresnel_kernel(const Grid1D& grid, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    fail(ErrorCode::invalid_argument, "dense Fresnel propagation needs z > 0");
  }
  const std::size_t n = grid.size();
  const double dx = grid.spacing();
  const double band = grid.conjugate_half_extent();
  const GaussRule rule = gauss_legendre(kGaussOrder);
  // The kernel depends on |x - x'| = m dx only.
  std::vector<Complex> by_offset(n);
  for (std::size_t m = 0; m < n; ++m) {
    by_offset[m] = dx / (2.0 * kPi) *
                   band_limited_propagator(a, static_cast<double>(m) * dx, band, rule);
  }
  DenseKernel k{ComplexMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                DenseKernel::Source::fresnel, a, grid};
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      const std::size_t m = row > col ? row - col : col - row;
      k.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = by_offset[m];
    }
  }
  return k;
}

DenseKernel fourier_kernel(const Grid1D& grid) {
  const std::size_t n = grid.size();
  const double w = grid.spacing() / std::sqrt(2.0 * kPi);
  DenseKernel k{ComplexMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)),
                DenseKernel::Source::fourier_integral, 0.0, grid};
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      k.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          std::polar(w, -grid.wavevector(row) * grid.position(col));
    }
  }
  return k;
}

SampledWaveFunction1D frft_dense(const SampledWaveFunction1D& psi, double theta) {
  return frft_kernel(psi.grid(), theta).apply(psi);
}

SampledWaveFunction1D fresnel_dense(const SampledWaveFunction1D& psi, double z) {
  if (!(z > 0.0)) fail(ErrorCode::invalid_argument, "dense Fresnel propagation needs z > 0");
  return fresnel_kernel(psi.grid(), z / psi.scale().kappa()).apply(psi);
}

SampledWaveFunction1D fresnel_dense(const SampledWaveFunction1D& psi, double z, double k) {
  const ScaleContext scale(k, psi.scale().scale_d());
  if (!(z > 0.0)) fail(ErrorCode::invalid_argument, "dense Fresnel propagation needs z > 0");
  return fresnel_kernel(psi.grid(), z / scale.kappa()).apply(psi.with_scale(scale));
}

}  // namespace spatialcv::oracle
