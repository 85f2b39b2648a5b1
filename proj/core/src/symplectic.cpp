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

#include "spatialcv/symplectic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>

#include "spatialcv/error.hpp"

namespace spatialcv {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

double canonical_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

bool is_null_rotation(double theta) {
  return theta < 1e-14 || kTwoPi - theta < 1e-14;
}

RayMatrix linear(const Eigen::Matrix2d& m) {
  RayMatrix r;
  r.m = m;
  return r;
}

RayMatrix shift(double dx, double dp) {
  RayMatrix r;
  r.displacement << dx, dp;
  return r;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_fourier_scale(std::optional<double> f, double kappa) {
  if (f && std::abs(*f - kappa) > 1e-9 * std::max(*f, kappa)) {
    std::ostringstream msg;
    msg << "Fourier focal length " << *f << " differs from k d^2 = " << kappa;
    fail(ErrorCode::scale_mismatch, msg.str());
  }
}

void require_frft_scale(double theta, std::optional<double> f, double kappa) {
  if (!f) return;
  const auto stages = frft_stage_angles(theta);
  if (stages.empty()) return;
  const double fractional = *f * std::sin(stages.front());
  if (std::abs(fractional - kappa) > 1e-9 * std::max(fractional, kappa)) {
    std::ostringstream msg;
    msg << "FRFT stage needs f sin(theta) = k d^2 = " << kappa << ", got "
        << fractional;
    fail(ErrorCode::scale_mismatch, msg.str());
  }
}

}  // namespace

bool RayMatrix::is_symplectic(double tol) const {
  return std::abs(m.determinant() - 1.0) <= tol;
}

RayMatrix then(const RayMatrix& first, const RayMatrix& second) {
  RayMatrix out;
  out.m = second.m * first.m;
  out.displacement = second.m * first.displacement + second.displacement;
  return out;
}

RayMatrix to_dimensionless(const RayMatrix& dimensional, const ScaleContext& scale) {
  const double d = scale.scale_d();
  RayMatrix out = dimensional;
  out.m(0, 1) = dimensional.m(0, 1) / (d * d);
  out.m(1, 0) = dimensional.m(1, 0) * (d * d);
  out.displacement << dimensional.displacement(0) / d,
      dimensional.displacement(1) * d;
  return out;
}

RayMatrix to_dimensional(const RayMatrix& dimensionless, const ScaleContext& scale) {
  const double d = scale.scale_d();
  RayMatrix out = dimensionless;
  out.m(0, 1) = dimensionless.m(0, 1) * (d * d);
  out.m(1, 0) = dimensionless.m(1, 0) / (d * d);
  out.displacement << dimensionless.displacement(0) * d,
      dimensionless.displacement(1) / d;
  return out;
}

RayMatrix abcd_of_single_lens(double z, double f, double k) {
  if (f == 0.0 || std::isnan(f)) {
    fail(ErrorCode::invalid_argument, "lens focal length must be nonzero");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    fail(ErrorCode::invalid_argument, "propagation distance must be >= 0");
  }
  if (!(k > 0.0)) fail(ErrorCode::invalid_argument, "wavenumber must be > 0");
  const double u = z / f;  // 0 for an infinite focal length
  Eigen::Matrix2d m;
  m << 1.0 - u, (z / k) * (2.0 - u), -k / f, 1.0 - u;
  return linear(m);
}

RayMatrix abcd_of_gate(const GateDescriptor& g, const ScaleContext& scale) {
  validate(g);
  const double kappa = scale.kappa();
  return std::visit(
      overloaded{
          [&](const gate::Propagate& p) {
            Eigen::Matrix2d m;
            m << 1.0, p.z / kappa, 0.0, 1.0;
            return linear(m);
          },
          [&](const gate::Lens& l) {
            Eigen::Matrix2d m;
            m << 1.0, 0.0, -kappa / l.f, 1.0;
            return linear(m);
          },
          [&](const gate::Fourier& f) {
            require_fourier_scale(f.f, kappa);
            return linear(rotation(0.5 * kPi));
          },
          [&](const gate::Frft& r) {
            require_frft_scale(r.theta, r.f, kappa);
            return linear(rotation(r.theta));
          },
          [&](const gate::Squeeze& s) {
            const double ratio = s.f2 / s.f1;
            Eigen::Matrix2d m;
            m << -ratio, 0.0, 0.0, -1.0 / ratio;
            return linear(m);
          },
          [&](const gate::PauliX& x) { return shift(x.t, 0.0); },
          [&](const gate::PauliZ& z) { return shift(0.0, z.s); },
          [&](const gate::PhasePoly& b) {
            if (b.n == 1) return shift(0.0, b.alpha);
            if (b.n == 2) {
              Eigen::Matrix2d m;
              m << 1.0, 0.0, 2.0 * b.alpha, 1.0;
              return linear(m);
            }
            fail(ErrorCode::non_gaussian_gate,
                 "phase_poly of order " + std::to_string(b.n) +
                     " has no ray-matrix image");
          },
          [&](const gate::SlmMask& m) -> RayMatrix {
            fail(ErrorCode::non_gaussian_gate,
                 "slm_mask '" + m.mask_id + "' has no ray-matrix image");
          },
      },
      g);
}

RayMatrix abcd_of_program(const GateProgram& program) {
  RayMatrix total;
  for (std::size_t i = 0; i < program.gates.size(); ++i) {
    try {
      total = then(total, abcd_of_gate(program.gates[i], program.scale));
    } catch (const ProgramError&) {
      throw;
    } catch (const Error& e) {
      throw ProgramError(i, e);
    }
  }
  return total;
}

MomentSummary predict_moments(const RayMatrix& map, const MomentSummary& in) {
  MomentSummary out;
  out.mean = map.m * in.mean + map.displacement;
  out.covariance = map.m * in.covariance * map.m.transpose();
  return out;
}

GateProgram decompose_to_gates(const RayMatrix& target, const ScaleContext& scale) {
  const double det = target.m.determinant();
  if (!target.m.allFinite() || !target.displacement.allFinite() ||
      std::abs(det - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "target determinant " << det << " differs from 1";
    fail(ErrorCode::not_symplectic, msg.str());
  }

  GateProgram program;
  program.scale = scale;

  Eigen::JacobiSVD<Eigen::Matrix2d> svd(target.m,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double sigma = svd.singularValues()(0);

  if (sigma - 1.0 <= 1e-12) {
    const double theta = canonical_angle(std::atan2(target.m(0, 1), target.m(0, 0)));
    if (!is_null_rotation(theta)) program.gates.push_back(gate::Frft{theta, {}});
  } else {
    Eigen::Matrix2d u = svd.matrixU();
    Eigen::Matrix2d vt = svd.matrixV().transpose();
    if (u.determinant() < 0.0) {
      // det(target) > 0 so both factors are reflections; flipping the second
      // column of U and second row of V^T leaves U S V^T unchanged.
      u.col(1) *= -1.0;
      vt.row(1) *= -1.0;
    }
    double alpha = std::atan2(u(0, 1), u(0, 0));
    double beta = canonical_angle(std::atan2(vt(0, 1), vt(0, 0)));
    // R(a) S R(b) = R(a + pi) S R(b + pi): pick the representative with
    // beta in [0, pi).
    if (beta >= kPi) {
      beta -= kPi;
      alpha += kPi;
    }
    // The confocal squeezer contributes R(pi) diag(r, 1/r).
    const double last = canonical_angle(alpha - kPi);
    if (!is_null_rotation(beta)) program.gates.push_back(gate::Frft{beta, {}});
    program.gates.push_back(gate::Squeeze{scale.kappa(), sigma * scale.kappa()});
    if (!is_null_rotation(last)) program.gates.push_back(gate::Frft{last, {}});
  }

  if (target.displacement(0) != 0.0) {
    program.gates.push_back(gate::PauliX{target.displacement(0)});
  }
  if (target.displacement(1) != 0.0) {
    program.gates.push_back(gate::PauliZ{target.displacement(1)});
  }
  return program;
}

double recomposition_residual(const GateProgram& program, const RayMatrix& target) {
  const RayMatrix got = abcd_of_program(program);
  const double dm = (got.m - target.m).squaredNorm();
  const double dd = (got.displacement - target.displacement).squaredNorm();
  return std::sqrt(dm + dd);
}

namespace {

// Intermediate lowering: free-space runs and phase polynomials at planes.
struct PhaseItem {
  std::vector<double> coefficients;  // in dimensionless x
  std::vector<double> magnitude;     // largest contribution per order
  std::vector<std::string> mask_ids;
};

class LayoutBuilder {
 public:
  explicit LayoutBuilder(const ScaleContext& scale) : scale_(scale) {}

  void free(double length) {
    if (length < 0.0 || !std::isfinite(length)) {
      fail(ErrorCode::realizability, "free-space segment must be >= 0");
    }
    if (length == 0.0) return;
    flush();
    if (!out_.elements.empty() && out_.elements.back().kind == ElementKind::free_space) {
      out_.elements.back().length += length;
    } else {
      LayoutElement e;
      e.kind = ElementKind::free_space;
      e.z_position = z_;
      e.length = length;
      out_.elements.push_back(e);
    }
    z_ += length;
  }

  void phase(const std::vector<double>& coefficients, const std::string& id = {}) {
    if (!pending_) pending_.emplace();
    auto& item = *pending_;
    if (item.coefficients.size() < coefficients.size()) {
      item.coefficients.resize(coefficients.size(), 0.0);
      item.magnitude.resize(coefficients.size(), 0.0);
    }
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
      item.coefficients[n] += coefficients[n];
      item.magnitude[n] = std::max(item.magnitude[n], std::abs(coefficients[n]));
    }
    if (!id.empty()) item.mask_ids.push_back(id);
  }

  void lens(double f) {
    if (f == 0.0 || std::isnan(f)) {
      fail(ErrorCode::realizability, "lens focal length must be nonzero");
    }
    if (std::isinf(f)) return;
    phase({0.0, 0.0, -0.5 * scale_.kappa() / f});
  }

  void lps(double slope) { phase({0.0, slope}); }

  // One focal-plane stage of a phase-space rotation.
  void rotation_stage(double theta) {
    const double f = scale_.kappa() / std::sin(theta);
    // f (1 - cos theta), written to stay accurate at both small and
    // quarter-turn angles.
    const double s = std::sin(0.5 * theta);
    double z = theta < 0.5 ? 2.0 * f * s * s : f * (1.0 - std::cos(theta));
    if (theta == 0.5 * kPi) z = f;  // cos(pi/2) rounds to 6e-17
    free(z);
    lens(f);
    free(z);
  }

  OpticalLayout finish() {
    flush();
    out_.total_length = z_;
    out_.scale = scale_;
    return std::move(out_);
  }

 private:
  void flush() {
    if (!pending_) return;
    PhaseItem item = std::move(*pending_);
    pending_.reset();
    // Constant terms are global phases; orders that cancelled down to
    // rounding noise are dropped.
    int highest = -1;
    int nonzero = 0;
    for (std::size_t n = 1; n < item.coefficients.size(); ++n) {
      if (std::abs(item.coefficients[n]) <= 1e-14 * item.magnitude[n]) {
        item.coefficients[n] = 0.0;
      }
      if (item.coefficients[n] != 0.0) {
        highest = static_cast<int>(n);
        ++nonzero;
      }
    }
    if (!item.coefficients.empty()) item.coefficients[0] = 0.0;
    if (highest < 0) return;

    LayoutElement e;
    e.kind = ElementKind::slm;
    e.z_position = z_;
    if (!out_.elements.empty() && out_.elements.back().kind != ElementKind::free_space) {
      fail(ErrorCode::realizability, "two elements share one plane");
    }
    if (nonzero == 1 && highest == 2 && item.mask_ids.empty()) {
      e.kind = ElementKind::lens;
      e.focal = -0.5 * scale_.kappa() / item.coefficients[2];
    } else if (nonzero == 1 && highest == 1 && item.mask_ids.empty()) {
      e.kind = ElementKind::lps;
      e.slope = item.coefficients[1];
    } else {
      item.coefficients.resize(static_cast<std::size_t>(highest) + 1);
      e.mask.coefficients = item.coefficients;
      if (item.mask_ids.size() == 1) {
        e.mask_id = item.mask_ids.front();
      } else {
        e.mask_id = "slm" + std::to_string(slm_count_);
      }
      ++slm_count_;
    }
    out_.elements.push_back(std::move(e));
  }

  ScaleContext scale_;
  OpticalLayout out_;
  double z_ = 0.0;
  std::optional<PhaseItem> pending_;
  int slm_count_ = 0;
};

}  // namespace

OpticalLayout layout_of(const GateProgram& program) {
  LayoutBuilder b(program.scale);
  const double kappa = program.scale.kappa();
  for (std::size_t i = 0; i < program.gates.size(); ++i) {
    try {
      const auto& g = program.gates[i];
      validate(g);
      std::visit(
          overloaded{
              [&](const gate::Propagate& p) { b.free(p.z); },
              [&](const gate::Lens& l) { b.lens(l.f); },
              [&](const gate::Fourier& f) {
                require_fourier_scale(f.f, kappa);
                b.rotation_stage(0.5 * kPi);
              },
              [&](const gate::Frft& r) {
                require_frft_scale(r.theta, r.f, kappa);
                for (double stage : frft_stage_angles(r.theta)) b.rotation_stage(stage);
              },
              [&](const gate::Squeeze& s) {
                b.free(s.f1);
                b.lens(s.f1);
                b.free(s.f1 + s.f2);
                b.lens(s.f2);
                b.free(s.f2);
              },
              [&](const gate::PauliX& x) {
                b.rotation_stage(0.5 * kPi);
                b.lps(-x.t);
                for (int k = 0; k < 3; ++k) b.rotation_stage(0.5 * kPi);
              },
              [&](const gate::PauliZ& z) { b.lps(z.s); },
              [&](const gate::PhasePoly& p) {
                std::vector<double> c(static_cast<std::size_t>(p.n) + 1, 0.0);
                c.back() = p.alpha;
                // Linear and quadratic phases stay mergeable into LPS and
                // lens elements; higher orders need an SLM.
                b.phase(c, p.n > 2 ? "phase_poly" + std::to_string(p.n) : std::string{});
              },
              [&](const gate::SlmMask& m) {
                auto it = program.masks.find(m.mask_id);
                if (it == program.masks.end()) {
                  fail(ErrorCode::unknown_mask, "no phase mask named '" + m.mask_id + "'");
                }
                b.phase(it->second.coefficients, m.mask_id);
              },
          },
          g);
    } catch (const ProgramError&) {
      throw;
    } catch (const Error& e) {
      throw ProgramError(i, e);
    }
  }
  return b.finish();
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::free_space: return "free_space";
    case ElementKind::lens: return "lens";
    case ElementKind::lps: return "lps";
    case ElementKind::slm: return "slm";
  }
  return "unknown";
}

}  // namespace

void write_layout_table(std::ostream& os, const OpticalLayout& layout) {
  os << "# spatialcv optical layout v1\n";
  os << "# wavenumber_k\t" << format_number(layout.scale.wavenumber()) << '\n';
  os << "# scale_d\t" << format_number(layout.scale.scale_d()) << '\n';
  os << "# total_length_m\t" << format_number(layout.total_length) << '\n';
  os << "kind\tz_m\tparameter\n";
  for (const auto& e : layout.elements) {
    os << kind_name(e.kind) << '\t' << format_number(e.z_position) << '\t';
    switch (e.kind) {
      case ElementKind::free_space: os << format_number(e.length); break;
      case ElementKind::lens: os << format_number(e.focal); break;
      case ElementKind::lps: os << format_number(e.slope); break;
      case ElementKind::slm: {
        os << e.mask_id << ':';
        for (std::size_t n = 0; n < e.mask.coefficients.size(); ++n) {
          if (n) os << ';';
          os << format_number(e.mask.coefficients[n]);
        }
        break;
      }
    }
    os << '\n';
  }
}

std::string layout_table(const OpticalLayout& layout) {
  std::ostringstream os;
  write_layout_table(os, layout);
  return os.str();
}

SampledWaveFunction1D simulate_layout(const SampledWaveFunction1D& psi,
                                      const OpticalLayout& layout) {
  SampledWaveFunction1D state = psi.with_scale(layout.scale);
  for (const auto& e : layout.elements) {
    switch (e.kind) {
      case ElementKind::free_space: state = propagate(state, e.length); break;
      case ElementKind::lens: state = lens(state, e.focal); break;
      case ElementKind::lps: state = pauli_z(state, e.slope); break;
      case ElementKind::slm: state = apply_mask(state, e.mask); break;
    }
  }
  return state;
}

}  // namespace spatialcv
