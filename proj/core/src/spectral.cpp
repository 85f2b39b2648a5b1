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

#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace spatialcv::detail {
namespace {

constexpr double kPi = std::numbers::pi;

// FFTW planning is not thread safe; execution with the new-array interface
// is. Plans are created once per (size, direction) and kept for the process
// lifetime.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

// Shared body of the two centered transforms. With x_j = (j - N/2) dx and
// p_m = (m - N/2) dp, exp(-/+ i x_j p_m) factors into the plain DFT kernel
// times (-1)^j (-1)^m (-1)^(N/2), so the centering is a sign flip on both
// sides of an unshifted FFT.
void centered_dft(std::span<const Complex> in, std::span<Complex> out,
                  int sign, double weight) {
  const std::size_t n = in.size();
  std::vector<Complex> buf(n);
  for (std::size_t j = 0; j < n; ++j) buf[j] = (j % 2 == 0) ? in[j] : -in[j];
  std::vector<Complex> res(n);
  fftw_execute_dft(PlanCache::instance().get(n, sign),
                   reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(res.data()));
  const double global = ((n / 2) % 2 == 0) ? weight : -weight;
  for (std::size_t m = 0; m < n; ++m) {
    out[m] = (m % 2 == 0 ? global : -global) * res[m];
  }
}

void exact_quarter_turn(std::span<Complex> psi, const Grid1D& grid) {
  std::vector<Complex> out(psi.size());
  forward_transform(psi, out, grid);
  std::copy(out.begin(), out.end(), psi.begin());
}

// Gaussian c exp(-A x^2 / 2) pushed through the same chirp sequence as the
// wavefunction; used to pin the metaplectic global phase.
struct GaussianProbe {
  Complex c{1.0, 0.0};
  Complex a{1.0, 0.0};

  void lens(double s) { a += Complex(0.0, s); }
  void propagate(double t) {
    const Complex b = 1.0 / a + Complex(0.0, t);
    c /= std::sqrt(a) * std::sqrt(b);
    a = 1.0 / b;
  }
};

void shear_rotation(std::span<Complex> psi, const Grid1D& grid, double phi,
                    const RotationOptions& options) {
  const double half_tan = std::tan(0.5 * phi);
  const double sine = std::sin(phi);
  const double flip = static_cast<double>(options.chirp_sign);
  GaussianProbe probe;
  if (grid.conjugate_half_extent() >= grid.half_extent()) {
    // Lens-propagation-lens: the intermediate spread lands in p.
    lens_inplace(psi, grid, flip * half_tan);
    propagate_inplace(psi, grid, sine);
    lens_inplace(psi, grid, flip * half_tan);
    probe.lens(half_tan);
    probe.propagate(sine);
    probe.lens(half_tan);
  } else {
    propagate_inplace(psi, grid, half_tan);
    lens_inplace(psi, grid, flip * sine);
    propagate_inplace(psi, grid, half_tan);
    probe.propagate(half_tan);
    probe.lens(sine);
    probe.propagate(half_tan);
  }
  const Complex fix = std::conj(probe.c) / std::abs(probe.c);
  for (auto& v : psi) v *= fix;
}

}  // namespace

void forward_transform(std::span<const Complex> in, std::span<Complex> out,
                       const Grid1D& grid) {
  centered_dft(in, out, FFTW_FORWARD,
               grid.spacing() / std::sqrt(2.0 * kPi));
}

void inverse_transform(std::span<const Complex> in, std::span<Complex> out,
                       const Grid1D& grid) {
  centered_dft(in, out, FFTW_BACKWARD,
               grid.conjugate_spacing() / std::sqrt(2.0 * kPi));
}

void parity_inplace(std::span<Complex> psi) {
  const std::size_t n = psi.size();
  // j <-> N - j for j = 1..N-1; j = 0 and j = N/2 are fixed points.
  for (std::size_t j = 1; j < n / 2; ++j) std::swap(psi[j], psi[n - j]);
}

void position_phase_inplace(std::span<Complex> psi, const Grid1D& grid,
                            const std::function<double(double)>& phase) {
  for (std::size_t j = 0; j < psi.size(); ++j) {
    psi[j] *= std::polar(1.0, phase(grid.position(j)));
  }
}

void wavevector_phase_inplace(std::span<Complex> psi, const Grid1D& grid,
                              const std::function<double(double)>& phase) {
  std::vector<Complex> spec(psi.size());
  forward_transform(psi, spec, grid);
  for (std::size_t m = 0; m < spec.size(); ++m) {
    spec[m] *= std::polar(1.0, phase(grid.wavevector(m)));
  }
  inverse_transform(spec, psi, grid);
}

void lens_inplace(std::span<Complex> psi, const Grid1D& grid, double a) {
  if (a == 0.0) return;
  position_phase_inplace(psi, grid,
                         [a](double x) { return -0.5 * a * x * x; });
}

void propagate_inplace(std::span<Complex> psi, const Grid1D& grid, double b) {
  if (b == 0.0) return;
  wavevector_phase_inplace(psi, grid,
                           [b](double p) { return -0.5 * b * p * p; });
}

void rotate_inplace(std::span<Complex> psi, const Grid1D& grid, double theta,
                    RotationOptions options) {
  const double t = std::remainder(theta, 2.0 * kPi);  // (-pi, pi]
  if (std::abs(std::sin(t)) < 1e-6) {
    if (std::abs(t) > 0.5 * kPi) parity_inplace(psi);
    return;
  }
  if (grid.is_self_dual()) {
    const double quarters = std::round(t / (0.5 * kPi));
    const double residual = t - quarters * 0.5 * kPi;
    const int q = ((static_cast<int>(quarters) % 4) + 4) % 4;
    if (q == 1 || q == 3) exact_quarter_turn(psi, grid);
    if (q == 2 || q == 3) parity_inplace(psi);
    if (residual != 0.0) shear_rotation(psi, grid, residual, options);
    return;
  }
  const int stages =
      static_cast<int>(std::ceil(std::abs(t) / (0.25 * kPi) - 1e-12));
  const double phi = t / stages;
  for (int s = 0; s < stages; ++s) shear_rotation(psi, grid, phi, options);
}

std::vector<Complex> evaluate_bandlimited(std::span<const Complex> psi,
                                          const Grid1D& grid,
                                          std::span<const double> points) {
  std::vector<Complex> spec(psi.size());
  forward_transform(psi, spec, grid);
  const double w = grid.conjugate_spacing() / std::sqrt(2.0 * kPi);
  std::vector<Complex> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < spec.size(); ++m) {
      acc += spec[m] * std::polar(1.0, grid.wavevector(m) * points[i]);
    }
    out[i] = w * acc;
  }
  return out;
}

double norm_squared(std::span<const Complex> psi, double spacing) {
  double acc = 0.0;
  for (const auto& v : psi) acc += std::norm(v);
  return acc * spacing;
}

}  // namespace spatialcv::detail
