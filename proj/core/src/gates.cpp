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

#include "spatialcv/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spatialcv/error.hpp"
#include "spectral.hpp"

namespace spatialcv {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSupportTail = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Runs `op` on a position-representation copy of the amplitudes and returns
// the result in the caller's representation.
template <class Op>
SampledWaveFunction1D in_position(const SampledWaveFunction1D& psi,
                                  const char* name, Op&& op) {
  const auto pos = in_representation(psi, Representation::position);
  ComplexVector amps = pos.amplitudes();
  op(std::span<Complex>(amps), pos.grid());
  auto out = renormalized(pos.grid(), std::move(amps), Representation::position,
                          pos.scale(), name);
  return in_representation(out, psi.representation());
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    fail(ErrorCode::invalid_argument, std::string(what) + " must be finite");
  }
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string gate_name(const GateDescriptor& g) {
  return std::visit(
      overloaded{
          [](const gate::Propagate&) { return std::string("propagate"); },
          [](const gate::Lens&) { return std::string("lens"); },
          [](const gate::Fourier&) { return std::string("fourier"); },
          [](const gate::Frft&) { return std::string("frft"); },
          [](const gate::Squeeze&) { return std::string("squeeze"); },
          [](const gate::PauliX&) { return std::string("pauli_x"); },
          [](const gate::PauliZ&) { return std::string("pauli_z"); },
          [](const gate::PhasePoly&) { return std::string("phase_poly"); },
          [](const gate::SlmMask&) { return std::string("slm_mask"); },
      },
      g);
}

void validate(const GateDescriptor& g) {
  std::visit(
      overloaded{
          [](const gate::Propagate& p) {
            require_finite(p.z, "propagation distance");
            if (p.z < 0.0) {
              fail(ErrorCode::invalid_argument, "propagation distance must be >= 0");
            }
          },
          [](const gate::Lens& l) {
            if (l.f == 0.0 || std::isnan(l.f)) {
              fail(ErrorCode::invalid_argument, "lens focal length must be nonzero");
            }
          },
          [](const gate::Fourier& f) {
            if (f.f && !(*f.f > 0.0)) {
              fail(ErrorCode::invalid_argument, "Fourier focal length must be > 0");
            }
          },
          [](const gate::Frft& r) {
            require_finite(r.theta, "rotation angle");
            if (r.f && !(*r.f > 0.0)) {
              fail(ErrorCode::invalid_argument, "FRFT focal length must be > 0");
            }
          },
          [](const gate::Squeeze& s) {
            if (!(s.f1 > 0.0) || !(s.f2 > 0.0) || !std::isfinite(s.f1) ||
                !std::isfinite(s.f2)) {
              fail(ErrorCode::invalid_argument,
                   "squeezer focal lengths must be positive and finite");
            }
          },
          [](const gate::PauliX& x) { require_finite(x.t, "displacement t"); },
          [](const gate::PauliZ& z) { require_finite(z.s, "displacement s"); },
          [](const gate::PhasePoly& b) {
            if (b.n < 1) fail(ErrorCode::invalid_argument, "phase order n must be >= 1");
            require_finite(b.alpha, "phase strength alpha");
          },
          [](const gate::SlmMask& m) {
            if (m.mask_id.empty()) {
              fail(ErrorCode::invalid_argument, "mask id must not be empty");
            }
          },
      },
      g);
}

double PhaseMask::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

SampledWaveFunction1D propagate(const SampledWaveFunction1D& psi, double z) {
  validate(gate::Propagate{z});
  if (z == 0.0) return psi;
  const double b = z / psi.scale().kappa();
  return in_position(psi, "propagate", [b](std::span<Complex> a, const Grid1D& g) {
    detail::propagate_inplace(a, g, b);
  });
}

SampledWaveFunction1D lens(const SampledWaveFunction1D& psi, double f) {
  validate(gate::Lens{f});
  const double a = psi.scale().kappa() / f;
  if (a == 0.0) return psi;
  return in_position(psi, "lens", [a](std::span<Complex> v, const Grid1D& g) {
    detail::lens_inplace(v, g, a);
  });
}

SampledWaveFunction1D single_lens_system(const SampledWaveFunction1D& psi,
                                         double z, double f) {
  validate(gate::Propagate{z});
  validate(gate::Lens{f});
  return propagate(lens(propagate(psi, z), f), z);
}

SampledWaveFunction1D fourier(const SampledWaveFunction1D& psi) {
  return frft(psi, 0.5 * kPi);
}

SampledWaveFunction1D fourier(const SampledWaveFunction1D& psi, double f) {
  validate(gate::Fourier{f});
  if (!close_rel(f, psi.scale().kappa(), 1e-9)) {
    std::ostringstream msg;
    msg << "Fourier gate with f = " << f << " needs d = sqrt(f/k) = "
        << std::sqrt(f / psi.scale().wavenumber()) << ", state pins d = "
        << psi.scale().scale_d();
    fail(ErrorCode::scale_mismatch, msg.str());
  }
  return fourier(psi);
}

SampledWaveFunction1D frft(const SampledWaveFunction1D& psi, double theta,
                           FrftOptions options) {
  validate(gate::Frft{theta, std::nullopt});
  return in_position(psi, "frft", [&](std::span<Complex> v, const Grid1D& g) {
    detail::rotate_inplace(v, g, theta, {options.chirp_sign});
  });
}

SampledWaveFunction1D frft(const SampledWaveFunction1D& psi, double theta,
                           double f) {
  validate(gate::Frft{theta, f});
  const auto stages = frft_stage_angles(theta);
  if (!stages.empty()) {
    const double fractional = f * std::sin(stages.front());
    if (!close_rel(fractional, psi.scale().kappa(), 1e-9)) {
      std::ostringstream msg;
      msg << "FRFT stage needs f sin(theta) = k d^2 = " << psi.scale().kappa()
          << ", got " << fractional;
      fail(ErrorCode::scale_mismatch, msg.str());
    }
  }
  return frft(psi, theta);
}

std::vector<double> frft_stage_angles(double theta) {
  require_finite(theta, "rotation angle");
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t < 1e-12 || 2.0 * kPi - t < 1e-12) return {};
  const int m = static_cast<int>(std::ceil(t / (0.5 * kPi) - 1e-12));
  return std::vector<double>(static_cast<std::size_t>(m), t / m);
}

SampledWaveFunction1D squeeze(const SampledWaveFunction1D& psi, double f1,
                              double f2, SqueezeOptions options) {
  validate(gate::Squeeze{f1, f2});
  const double r = f2 / f1;
  const auto pos = in_representation(psi, Representation::position);
  const Grid1D& g = pos.grid();

  if (tail_probability(pos, Representation::position, 0.98 * g.half_extent() / r) >
          kSupportTail ||
      tail_probability(pos, Representation::wavevector,
                       0.98 * g.conjugate_half_extent() * r) > kSupportTail) {
    fail(ErrorCode::support_overflow,
         "squeezed state with r = " + std::to_string(r) + " exceeds the grid");
  }

  SampledWaveFunction1D out = pos;
  if (options.mode == SqueezeMode::ideal) {
    if (r == 1.0) {
      out = parity(pos);
    } else {
      std::vector<double> points(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) points[j] = -g.position(j) / r;
      auto amps = detail::evaluate_bandlimited(pos.amplitudes(), g, points);
      const double scale = 1.0 / std::sqrt(r);
      // The interpolant is periodic; samples that map outside the input
      // window would pick up a wrapped copy of the state, so they are zero.
      for (std::size_t j = 0; j < amps.size(); ++j) {
        const bool inside = points[j] >= -g.half_extent() && points[j] < g.half_extent();
        amps[j] = inside ? amps[j] * scale : Complex{0.0, 0.0};
      }
      out = renormalized(g, std::move(amps), Representation::position, pos.scale(),
                         "squeeze");
    }
  } else {
    const double kappa = pos.scale().kappa();
    ComplexVector amps = pos.amplitudes();
    // Two focal-plane stages in dimensionless form, then the global phase
    // that makes the Gaussian probe match psi(-x/r)/sqrt(r).
    Complex c{1.0, 0.0};
    Complex a{1.0, 0.0};
    auto probe_prop = [&](double t) {
      const Complex b = 1.0 / a + Complex(0.0, t);
      c /= std::sqrt(a) * std::sqrt(b);
      a = 1.0 / b;
    };
    for (double f : {f1, f2}) {
      detail::propagate_inplace(amps, g, f / kappa);
      detail::lens_inplace(amps, g, kappa / f);
      detail::propagate_inplace(amps, g, f / kappa);
      probe_prop(f / kappa);
      a += Complex(0.0, kappa / f);
      probe_prop(f / kappa);
    }
    const Complex fix = std::conj(c) / std::abs(c);
    for (auto& v : amps) v *= fix;
    out = renormalized(g, std::move(amps), Representation::position, pos.scale(),
                       "squeeze");
  }
  if (options.compensate_inversion) out = parity(out);
  return in_representation(out, psi.representation());
}

SampledWaveFunction1D pauli_z(const SampledWaveFunction1D& psi, double s) {
  validate(gate::PauliZ{s});
  const double nyquist = kPi / psi.grid().spacing();
  if (std::abs(s) >= nyquist) {
    fail(ErrorCode::nyquist_violation,
         "Z(s) with |s| = " + std::to_string(std::abs(s)) +
             " exceeds the Nyquist limit " + std::to_string(nyquist));
  }
  if (s == 0.0) return psi;
  return in_position(psi, "pauli_z", [s](std::span<Complex> v, const Grid1D& g) {
    detail::position_phase_inplace(v, g, [s](double x) { return s * x; });
  });
}

SampledWaveFunction1D pauli_x(const SampledWaveFunction1D& psi, double t,
                              PauliXMethod method) {
  validate(gate::PauliX{t});
  if (t == 0.0) return psi;
  {
    const auto pos = in_representation(psi, Representation::position);
    const Grid1D& g = pos.grid();
    double lost = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double moved = g.position(j) + t;
      if (moved >= g.half_extent() || moved < -g.half_extent()) {
        lost += std::norm(pos.amplitudes()[j]);
      }
    }
    if (lost * g.spacing() > kSupportTail) {
      fail(ErrorCode::support_overflow,
           "X(t) with t = " + std::to_string(t) + " shifts the state off the grid");
    }
  }
  if (method == PauliXMethod::composed) {
    auto out = fourier(psi);
    out = pauli_z(out, -t);
    for (int i = 0; i < 3; ++i) out = fourier(out);
    return out;
  }
  return in_position(psi, "pauli_x", [t](std::span<Complex> v, const Grid1D& g) {
    detail::wavevector_phase_inplace(v, g, [t](double p) { return -t * p; });
  });
}

SampledWaveFunction1D phase_poly(const SampledWaveFunction1D& psi, int n,
                                 double alpha) {
  validate(gate::PhasePoly{n, alpha});
  const auto pos = in_representation(psi, Representation::position);
  const Grid1D& g = pos.grid();
  double peak = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (std::norm(pos.amplitudes()[j]) * g.spacing() > 1e-14) {
      const double x = g.position(j);
      peak = std::max(peak, std::abs(n * alpha * std::pow(x, n - 1)));
    }
  }
  if (peak >= kPi / g.spacing()) {
    warn("phase_poly: local phase gradient " + std::to_string(peak) +
         " exceeds the Nyquist limit; output is aliased");
  }
  return in_position(psi, "phase_poly", [&](std::span<Complex> v, const Grid1D& gg) {
    detail::position_phase_inplace(
        v, gg, [n, alpha](double x) { return alpha * std::pow(x, n); });
  });
}

SampledWaveFunction1D apply_mask(const SampledWaveFunction1D& psi,
                                 const PhaseMask& mask) {
  return in_position(psi, "slm_mask", [&](std::span<Complex> v, const Grid1D& g) {
    detail::position_phase_inplace(v, g, [&mask](double x) { return mask(x); });
  });
}

SampledWaveFunction1D parity(const SampledWaveFunction1D& psi) {
  ComplexVector amps = psi.amplitudes();
  detail::parity_inplace(amps);
  return SampledWaveFunction1D(psi.grid(), std::move(amps), psi.representation(),
                               psi.scale());
}

SampledWaveFunction1D apply_gate(const SampledWaveFunction1D& psi,
                                 const GateDescriptor& g,
                                 const std::map<std::string, PhaseMask>& masks,
                                 const ExecutionOptions& options) {
  validate(g);
  return std::visit(
      overloaded{
          [&](const gate::Propagate& p) { return propagate(psi, p.z); },
          [&](const gate::Lens& l) { return lens(psi, l.f); },
          [&](const gate::Fourier& f) {
            return f.f ? fourier(psi, *f.f) : fourier(psi);
          },
          [&](const gate::Frft& r) {
            return r.f ? frft(psi, r.theta, *r.f) : frft(psi, r.theta);
          },
          [&](const gate::Squeeze& s) {
            return squeeze(psi, s.f1, s.f2, {options.squeeze_mode, false});
          },
          [&](const gate::PauliX& x) {
            return pauli_x(psi, x.t, options.pauli_x_method);
          },
          [&](const gate::PauliZ& z) { return pauli_z(psi, z.s); },
          [&](const gate::PhasePoly& b) { return phase_poly(psi, b.n, b.alpha); },
          [&](const gate::SlmMask& m) {
            auto it = masks.find(m.mask_id);
            if (it == masks.end()) {
              fail(ErrorCode::unknown_mask, "no phase mask named '" + m.mask_id + "'");
            }
            return apply_mask(psi, it->second);
          },
      },
      g);
}

ProgramResult apply_program(const SampledWaveFunction1D& psi,
                            const GateProgram& program,
                            const ExecutionOptions& options) {
  if (program.gates.empty()) {
    fail(ErrorCode::invalid_argument, "cannot execute an empty gate program");
  }
  ProgramResult result{psi.with_scale(program.scale), {}};
  for (std::size_t i = 0; i < program.gates.size(); ++i) {
    try {
      result.state = apply_gate(result.state, program.gates[i], program.masks, options);
    } catch (const ProgramError&) {
      throw;
    } catch (const Error& e) {
      throw ProgramError(i, e);
    }
    if (options.trace) {
      result.trace.push_back({i, gate_name(program.gates[i]), result.state.norm(),
                              moments(result.state)});
    }
  }
  return result;
}

}  // namespace spatialcv
