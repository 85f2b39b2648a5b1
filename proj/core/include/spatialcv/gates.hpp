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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spatialcv/wavefield.hpp"

namespace spatialcv {

// Gate descriptors. Lengths (z, f, f1, f2) are physical and converted with
// the program's ScaleContext; angles are radians; t, s, alpha dimensionless.
namespace gate {

struct Propagate { double z; };
struct Lens { double f; };
// Focal-plane Fourier gate. When f is given it must satisfy d = sqrt(f/k).
struct Fourier { std::optional<double> f; };
// Phase-space rotation by theta. When f is given, the first stage must
// satisfy f sin(theta_stage) = k d^2.
struct Frft { double theta; std::optional<double> f; };
struct Squeeze { double f1; double f2; };
struct PauliX { double t; };
struct PauliZ { double s; };
struct PhasePoly { int n; double alpha; };
struct SlmMask { std::string mask_id; };

}  // namespace gate

using GateDescriptor =
    std::variant<gate::Propagate, gate::Lens, gate::Fourier, gate::Frft,
                 gate::Squeeze, gate::PauliX, gate::PauliZ, gate::PhasePoly,
                 gate::SlmMask>;

std::string gate_name(const GateDescriptor& g);

// Throws if the descriptor's parameters are out of range.
void validate(const GateDescriptor& g);

// Phase profile an SLM can imprint: phase(x) = sum_n coefficients[n] x^n
// in dimensionless position.
struct PhaseMask {
  std::vector<double> coefficients;

  double operator()(double x) const;
};

struct GateProgram {
  std::vector<GateDescriptor> gates;
  ScaleContext scale = ScaleContext::unit();
  std::map<std::string, PhaseMask> masks;
};

enum class SqueezeMode {
  ideal,     // exact coordinate rescaling psi(x) -> psi(-x/r)/sqrt(r)
  physical,  // the two confocal lens stages, simulated with d pinned
};

struct SqueezeOptions {
  SqueezeMode mode = SqueezeMode::ideal;
  // Apply a parity (F^2) afterwards to undo the image inversion.
  bool compensate_inversion = false;
};

enum class PauliXMethod {
  direct,    // band-limited shift: multiply the wave-vector amplitudes by e^{-itp}
  composed,  // F^3 Z(-t) F, the focal-plane linear phase shifter layout
};

// Free-space propagation over z >= 0: exp(-i z p_d^2 / (2k)).
SampledWaveFunction1D propagate(const SampledWaveFunction1D& psi, double z);

// Thin lens exp(-i k x_d^2 / (2f)); negative f is a diverging lens.
SampledWaveFunction1D lens(const SampledWaveFunction1D& psi, double f);

// P_z L_f P_z, the single-lens system. No global phase adjustment.
SampledWaveFunction1D single_lens_system(const SampledWaveFunction1D& psi,
                                         double z, double f);

// F = F_{pi/2}: the output position wavefunction equals the input
// wave-vector wavefunction, HG_n -> (-i)^n HG_n.
SampledWaveFunction1D fourier(const SampledWaveFunction1D& psi);
SampledWaveFunction1D fourier(const SampledWaveFunction1D& psi, double f);

struct FrftOptions {
  // Mutation knob for the validation suite: -1 flips the lens chirp in the
  // fast path. Never set outside of that check.
  int chirp_sign = +1;
};

// F_theta = e^{i theta/2} exp(-i theta (x^2 + p^2)/2); periodic in 2 pi.
SampledWaveFunction1D frft(const SampledWaveFunction1D& psi, double theta,
                           FrftOptions options = {});
SampledWaveFunction1D frft(const SampledWaveFunction1D& psi, double theta,
                           double f);

// Stage angles used when a rotation is built from focal-plane systems, each
// in (0, pi/2] for the optical layout. Empty for multiples of 2 pi.
std::vector<double> frft_stage_angles(double theta);

// Confocal squeezer with magnification r = f2/f1: x -> -r x, p -> -p/r.
SampledWaveFunction1D squeeze(const SampledWaveFunction1D& psi, double f1,
                              double f2, SqueezeOptions options = {});

// Z(s) = exp(i s x). |s| must stay below the wave-vector Nyquist limit.
SampledWaveFunction1D pauli_z(const SampledWaveFunction1D& psi, double s);

// X(t) = exp(-i t p): W(x) -> W(x - t).
SampledWaveFunction1D pauli_x(const SampledWaveFunction1D& psi, double t,
                              PauliXMethod method = PauliXMethod::direct);

// B(n, alpha) = exp(i alpha x^n). Warns when the local phase gradient over
// the state's support exceeds the wave-vector Nyquist limit.
SampledWaveFunction1D phase_poly(const SampledWaveFunction1D& psi, int n,
                                 double alpha);

SampledWaveFunction1D apply_mask(const SampledWaveFunction1D& psi,
                                 const PhaseMask& mask);

// psi(x) -> psi(-x)
SampledWaveFunction1D parity(const SampledWaveFunction1D& psi);

struct ExecutionOptions {
  SqueezeMode squeeze_mode = SqueezeMode::ideal;
  PauliXMethod pauli_x_method = PauliXMethod::direct;
  bool trace = false;
};

struct TraceEntry {
  std::size_t step;
  std::string gate;
  double norm;
  MomentSummary moments;
};

struct ProgramResult {
  SampledWaveFunction1D state;
  std::vector<TraceEntry> trace;  // filled when tracing
};

// Applies the gates left to right. Errors are rethrown as ProgramError
// carrying the failing step index.
ProgramResult apply_program(const SampledWaveFunction1D& psi,
                            const GateProgram& program,
                            const ExecutionOptions& options = {});

SampledWaveFunction1D apply_gate(const SampledWaveFunction1D& psi,
                                 const GateDescriptor& g,
                                 const std::map<std::string, PhaseMask>& masks = {},
                                 const ExecutionOptions& options = {});

}  // namespace spatialcv
