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

#include "spatialcv/bipartite.hpp"

#include <cmath>
#include <string>

#include "spatialcv/error.hpp"
#include "spectral.hpp"

namespace spatialcv {
namespace {

using FibreOp = std::function<void(std::span<Complex>, const Grid1D&)>;

// Runs `op` on every fibre along `axis` in place.
void for_each_fibre(ComplexMatrix& amps, int axis, const Grid1D& grid,
                    const FibreOp& op) {
  if (axis == 0) {
    for (Eigen::Index j = 0; j < amps.cols(); ++j) {
      op(std::span<Complex>(amps.col(j).data(), static_cast<std::size_t>(amps.rows())),
         grid);
    }
    return;
  }
  std::vector<Complex> buf(static_cast<std::size_t>(amps.cols()));
  for (Eigen::Index i = 0; i < amps.rows(); ++i) {
    for (Eigen::Index j = 0; j < amps.cols(); ++j) buf[static_cast<std::size_t>(j)] = amps(i, j);
    op(buf, grid);
    for (Eigen::Index j = 0; j < amps.cols(); ++j) amps(i, j) = buf[static_cast<std::size_t>(j)];
  }
}

void to_position_fibres(ComplexMatrix& amps, int axis, const Grid1D& grid) {
  for_each_fibre(amps, axis, grid, [](std::span<Complex> v, const Grid1D& g) {
    std::vector<Complex> out(v.size());
    detail::inverse_transform(v, out, g);
    std::copy(out.begin(), out.end(), v.begin());
  });
}

void to_wavevector_fibres(ComplexMatrix& amps, int axis, const Grid1D& grid) {
  for_each_fibre(amps, axis, grid, [](std::span<Complex> v, const Grid1D& g) {
    std::vector<Complex> out(v.size());
    detail::forward_transform(v, out, g);
    std::copy(out.begin(), out.end(), v.begin());
  });
}

void require_axis(int axis) {
  if (axis != 0 && axis != 1) {
    fail(ErrorCode::invalid_argument, "axis must be 0 or 1");
  }
}

}  // namespace

std::string_view to_string(DofLabel label) {
  switch (label) {
    case DofLabel::photon1_x: return "photon1_x";
    case DofLabel::photon1_y: return "photon1_y";
    case DofLabel::photon2_x: return "photon2_x";
    case DofLabel::photon2_y: return "photon2_y";
  }
  return "unknown";
}

DofLabel dof_label_from_string(std::string_view name) {
  for (auto l : {DofLabel::photon1_x, DofLabel::photon1_y, DofLabel::photon2_x,
                 DofLabel::photon2_y}) {
    if (to_string(l) == name) return l;
  }
  fail(ErrorCode::label_error, "unknown DOF label '" + std::string(name) + "'");
}

BipartiteWaveFunction::BipartiteWaveFunction(std::array<Grid1D, 2> grids,
                                             ComplexMatrix amplitudes,
                                             std::array<DofLabel, 2> labels,
                                             std::array<Representation, 2> representations,
                                             ScaleContext scale)
    : grids_(std::move(grids)),
      amps_(std::move(amplitudes)),
      labels_(labels),
      reps_(representations),
      scale_(std::move(scale)) {
  if (static_cast<std::size_t>(amps_.rows()) != grids_[0].size() ||
      static_cast<std::size_t>(amps_.cols()) != grids_[1].size()) {
    fail(ErrorCode::grid_mismatch, "joint amplitude shape does not match the grids");
  }
  if (labels_[0] == labels_[1]) {
    fail(ErrorCode::label_error, "the two DOF labels must differ");
  }
  const double n = norm();
  if (!(std::abs(n - 1.0) <= Tolerances::norm_drift)) {
    fail(ErrorCode::unnormalized,
         "joint wavefunction norm " + std::to_string(n) + " differs from 1");
  }
}

BipartiteWaveFunction BipartiteWaveFunction::normalized(
    std::array<Grid1D, 2> grids, ComplexMatrix amplitudes,
    std::array<DofLabel, 2> labels, std::array<Representation, 2> representations,
    ScaleContext scale) {
  const auto s0 = representations[0] == Representation::position
                      ? grids[0].spacing()
                      : grids[0].conjugate_spacing();
  const auto s1 = representations[1] == Representation::position
                      ? grids[1].spacing()
                      : grids[1].conjugate_spacing();
  const double n = amplitudes.squaredNorm() * s0 * s1;
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::unnormalized, "cannot normalize a zero or non-finite joint state");
  }
  amplitudes /= std::sqrt(n);
  return BipartiteWaveFunction(std::move(grids), std::move(amplitudes), labels,
                               representations, std::move(scale));
}

double BipartiteWaveFunction::spacing(int axis) const {
  require_axis(axis);
  return representation(axis) == Representation::position ? grid(axis).spacing()
                                                          : grid(axis).conjugate_spacing();
}

double BipartiteWaveFunction::coordinate(int axis, std::size_t index) const {
  require_axis(axis);
  return representation(axis) == Representation::position ? grid(axis).position(index)
                                                          : grid(axis).wavevector(index);
}

double BipartiteWaveFunction::norm() const {
  return amps_.squaredNorm() * spacing(0) * spacing(1);
}

bool BipartiteWaveFunction::has(DofLabel label) const noexcept {
  return labels_[0] == label || labels_[1] == label;
}

int BipartiteWaveFunction::axis_of(DofLabel label) const {
  if (labels_[0] == label) return 0;
  if (labels_[1] == label) return 1;
  fail(ErrorCode::label_error,
       "DOF " + std::string(to_string(label)) + " is not part of this state");
}

BipartiteWaveFunction product(const SampledWaveFunction1D& a, DofLabel label_a,
                              const SampledWaveFunction1D& b, DofLabel label_b) {
  if (!(a.scale() == b.scale())) {
    fail(ErrorCode::scale_mismatch, "factors carry different scale contexts");
  }
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  ComplexMatrix amps(static_cast<Eigen::Index>(va.size()),
                     static_cast<Eigen::Index>(vb.size()));
  for (std::size_t j = 0; j < vb.size(); ++j) {
    for (std::size_t i = 0; i < va.size(); ++i) {
      amps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = va[i] * vb[j];
    }
  }
  return BipartiteWaveFunction::normalized({a.grid(), b.grid()}, std::move(amps),
                                           {label_a, label_b},
                                           {a.representation(), b.representation()},
                                           a.scale());
}

BipartiteWaveFunction in_representation(const BipartiteWaveFunction& psi, int axis,
                                        Representation rep) {
  require_axis(axis);
  if (psi.representation(axis) == rep) return psi;
  ComplexMatrix amps = psi.amplitudes();
  if (rep == Representation::position) {
    to_position_fibres(amps, axis, psi.grid(axis));
  } else {
    to_wavevector_fibres(amps, axis, psi.grid(axis));
  }
  auto reps = std::array{psi.representation(0), psi.representation(1)};
  reps[static_cast<std::size_t>(axis)] = rep;
  return BipartiteWaveFunction({psi.grid(0), psi.grid(1)}, std::move(amps),
                               psi.labels(), reps, psi.scale());
}

BipartiteWaveFunction in_position(const BipartiteWaveFunction& psi) {
  return in_representation(in_representation(psi, 0, Representation::position), 1,
                           Representation::position);
}

BipartiteWaveFunction apply_along(const BipartiteWaveFunction& psi, int axis,
                                  const FibreOp& op, const char* operation) {
  require_axis(axis);
  const Representation original = psi.representation(axis);
  ComplexMatrix amps = psi.amplitudes();
  const Grid1D& g = psi.grid(axis);
  if (original == Representation::wavevector) to_position_fibres(amps, axis, g);
  for_each_fibre(amps, axis, g, op);
  if (original == Representation::wavevector) to_wavevector_fibres(amps, axis, g);

  auto reps = std::array{psi.representation(0), psi.representation(1)};
  auto out = BipartiteWaveFunction::normalized({psi.grid(0), psi.grid(1)}, amps,
                                               psi.labels(), reps, psi.scale());
  const double drift = amps.squaredNorm() * psi.spacing(0) * psi.spacing(1);
  if (std::abs(drift - 1.0) > Tolerances::norm_drift) {
    warn(std::string(operation) + ": norm drifted to " + std::to_string(drift) +
         ", renormalizing");
  }
  return out;
}

std::vector<double> marginal(const BipartiteWaveFunction& psi, int axis) {
  require_axis(axis);
  const auto& a = psi.amplitudes();
  const double partner = psi.spacing(1 - axis);
  std::vector<double> out(psi.grid(axis).size(), 0.0);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const auto k = static_cast<std::size_t>(axis == 0 ? i : j);
      out[k] += std::norm(a(i, j));
    }
  }
  for (auto& v : out) v *= partner;
  return out;
}

std::vector<double> marginal(const BipartiteWaveFunction& psi, int axis,
                             Representation rep) {
  return marginal(in_representation(psi, axis, rep), axis);
}

double mutual_information(const BipartiteWaveFunction& psi) {
  const auto& a = psi.amplitudes();
  const double cell = psi.spacing(0) * psi.spacing(1);
  std::vector<double> pa(static_cast<std::size_t>(a.rows()), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(a.cols()), 0.0);
  double joint_entropy = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double p = std::norm(a(i, j)) * cell;
      pa[static_cast<std::size_t>(i)] += p;
      pb[static_cast<std::size_t>(j)] += p;
      if (p > 0.0) joint_entropy -= p * std::log(p);
    }
  }
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
      if (v > 0.0) h -= v * std::log(v);
    }
    return h;
  };
  return entropy(pa) + entropy(pb) - joint_entropy;
}

}  // namespace spatialcv
