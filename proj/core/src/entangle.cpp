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

#include "spatialcv/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "spatialcv/error.hpp"
#include "spatialcv/gates.hpp"
#include "spectral.hpp"

namespace spatialcv {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinDensity = 1e-300;

std::string name(DofLabel l) { return std::string(to_string(l)); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || std::isnan(v)) {
    fail(ErrorCode::invalid_argument, std::string(what) + " must be > 0");
  }
}

// Five-sigma footprint of a Gaussian pair state whose sum and difference
// wave-vector coordinates have variances var_u and var_v.
void require_pair_support(double center, double var_u, double var_v,
                          const Grid1D& grid, const char* dof) {
  if (std::isfinite(var_v)) {
    const double sd_q = 0.5 * std::sqrt(var_u + var_v);
    if (std::abs(center) + 5.0 * sd_q >= grid.conjugate_half_extent()) {
      fail(ErrorCode::support_overflow,
           std::string(dof) + " wave-vector footprint exceeds the grid");
    }
  }
  const double inv_v = std::isfinite(var_v) ? 1.0 / var_v : 0.0;
  const double sd_x = 0.5 * std::sqrt(1.0 / var_u + inv_v);
  if (5.0 * sd_x >= grid.half_extent()) {
    fail(ErrorCode::support_overflow,
         std::string(dof) + " position footprint exceeds the grid");
  }
}

std::size_t snap(const Grid1D& grid, double outcome) {
  if (!std::isfinite(outcome)) {
    fail(ErrorCode::invalid_argument, "measurement outcome must be finite");
  }
  return grid.nearest_index(outcome);
}

std::size_t draw(const std::vector<double>& weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) fail(ErrorCode::zero_probability, "marginal is identically zero");
  const double target = uniform_unit(rng) * total;
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    acc += weights[j];
    if (acc > target) return j;
  }
  // Rounding can leave target at the very top; take the last nonzero sample.
  for (std::size_t j = weights.size(); j-- > 0;) {
    if (weights[j] > 0.0) return j;
  }
  return weights.size() - 1;
}

void require_density(double density, double outcome) {
  if (!(density >= kMinDensity)) {
    fail(ErrorCode::zero_probability,
         "outcome " + std::to_string(outcome) + " has zero probability density");
  }
}

// O psi for O = a p_axis + c0 x_0 + c1 x_1 on a position-position state.
ComplexMatrix apply_linear_quadrature(const BipartiteWaveFunction& pos, int p_axis,
                                      double a, double c0, double c1) {
  const auto& amps = pos.amplitudes();
  ComplexMatrix out = ComplexMatrix::Zero(amps.rows(), amps.cols());
  if (a != 0.0) {
    const Grid1D& g = pos.grid(p_axis);
    const auto n = static_cast<std::size_t>(p_axis == 0 ? amps.rows() : amps.cols());
    const Eigen::Index fibres = p_axis == 0 ? amps.cols() : amps.rows();
    std::vector<Complex> buf(n), spec(n);
    for (Eigen::Index f = 0; f < fibres; ++f) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        buf[k] = p_axis == 0 ? amps(kk, f) : amps(f, kk);
      }
      detail::forward_transform(buf, spec, g);
      for (std::size_t m = 0; m < n; ++m) spec[m] *= g.wavevector(m);
      detail::inverse_transform(spec, buf, g);
      for (std::size_t k = 0; k < n; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        (p_axis == 0 ? out(kk, f) : out(f, kk)) += a * buf[k];
      }
    }
  }
  for (Eigen::Index j = 0; j < amps.cols(); ++j) {
    const double y = pos.grid(1).position(static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < amps.rows(); ++i) {
      const double x = pos.grid(0).position(static_cast<std::size_t>(i));
      out(i, j) += (c0 * x + c1 * y) * amps(i, j);
    }
  }
  return out;
}

double variance_of(const ComplexMatrix& psi, const ComplexMatrix& o_psi, double cell) {
  const double second = o_psi.squaredNorm() * cell;
  const double mean = std::real(psi.cwiseProduct(o_psi.conjugate()).sum()) * cell;
  return std::max(0.0, second - mean * mean);
}

double single_quadrature_variance(const SampledWaveFunction1D& psi, double a, double c) {
  const auto pos = in_representation(psi, Representation::position);
  const Grid1D& g = pos.grid();
  const std::size_t n = g.size();
  std::vector<Complex> spec(n), p_psi(n);
  detail::forward_transform(pos.amplitudes(), spec, g);
  for (std::size_t m = 0; m < n; ++m) spec[m] *= g.wavevector(m);
  detail::inverse_transform(spec, p_psi, g);
  double second = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex v = pos.amplitudes()[j];
    const Complex o = a * p_psi[j] + c * g.position(j) * v;
    second += std::norm(o);
    mean += std::real(std::conj(v) * o);
  }
  second *= g.spacing();
  mean *= g.spacing();
  return std::max(0.0, second - mean * mean);
}

std::map<DofLabel, double> neighbour_coefficients(std::span<const DofLabel> neighbours,
                                                  std::span<const double> weights,
                                                  DofLabel node) {
  if (neighbours.size() != weights.size()) {
    fail(ErrorCode::label_error, "neighbour and weight lists differ in length");
  }
  std::map<DofLabel, double> c;
  for (std::size_t i = 0; i < neighbours.size(); ++i) {
    if (neighbours[i] == node) {
      fail(ErrorCode::label_error, "node " + name(node) + " listed as its own neighbour");
    }
    if (c.count(neighbours[i])) {
      fail(ErrorCode::label_error, "neighbour " + name(neighbours[i]) + " listed twice");
    }
    c[neighbours[i]] = -weights[i];
  }
  return c;
}

}  // namespace

BipartiteWaveFunction cz_xy(const BipartiteWaveFunction& psi, double g) {
  if (psi.representation(0) != Representation::position ||
      psi.representation(1) != Representation::position) {
    fail(ErrorCode::representation, "cz_xy needs both DOF in position representation");
  }
  if (!std::isfinite(g)) fail(ErrorCode::invalid_argument, "CZ weight must be finite");
  if (g == 0.0) return psi;
  ComplexMatrix amps = psi.amplitudes();
  for (Eigen::Index j = 0; j < amps.cols(); ++j) {
    const double y = psi.grid(1).position(static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < amps.rows(); ++i) {
      const double x = psi.grid(0).position(static_cast<std::size_t>(i));
      amps(i, j) *= std::polar(1.0, g * x * y);
    }
  }
  return BipartiteWaveFunction({psi.grid(0), psi.grid(1)}, std::move(amps), psi.labels(),
                               {Representation::position, Representation::position},
                               psi.scale());
}

BipartiteWaveFunction fwm_entangle(double q_total, double sigma_corr, double sigma_env,
                                   const Grid1D& grid_signal, const Grid1D& grid_idler,
                                   std::array<DofLabel, 2> labels,
                                   const ScaleContext& scale) {
  require_positive(sigma_corr, "sigma_corr");
  require_positive(sigma_env, "sigma_env");
  if (!std::isfinite(q_total)) fail(ErrorCode::invalid_argument, "Q must be finite");
  if (sigma_corr > 0.1 * sigma_env) {
    warn("fwm_entangle: sigma_corr is not small compared with sigma_env; "
         "the state is far from the EPR limit");
  }
  const double var_u = sigma_corr * sigma_corr;
  const double var_v = sigma_env * sigma_env;
  require_pair_support(0.5 * q_total, var_u, var_v, grid_signal, "signal");
  require_pair_support(0.5 * q_total, var_u, var_v, grid_idler, "idler");

  ComplexMatrix amps(static_cast<Eigen::Index>(grid_signal.size()),
                     static_cast<Eigen::Index>(grid_idler.size()));
  for (std::size_t j = 0; j < grid_idler.size(); ++j) {
    const double qi = grid_idler.wavevector(j);
    for (std::size_t i = 0; i < grid_signal.size(); ++i) {
      const double qs = grid_signal.wavevector(i);
      const double u = qs + qi - q_total;
      const double v = qs - qi;
      amps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::exp(-u * u / (4.0 * var_u) - v * v / (4.0 * var_v));
    }
  }
  return BipartiteWaveFunction::normalized(
      {grid_signal, grid_idler}, std::move(amps), labels,
      {Representation::wavevector, Representation::wavevector}, scale);
}

PumpProfile PumpProfile::plane_wave(double regularization) {
  require_positive(regularization, "plane-wave regularization width");
  return {Kind::plane_wave, regularization, std::nullopt};
}

PumpProfile PumpProfile::gaussian(double width) {
  require_positive(width, "pump width");
  return {Kind::gaussian, width, std::nullopt};
}

PumpProfile PumpProfile::sampled(SampledWaveFunction1D spectrum) {
  auto spec = in_representation(spectrum, Representation::wavevector);
  return {Kind::sampled, 0.0, std::move(spec)};
}

Complex PumpProfile::operator()(double q) const {
  if (kind != Kind::sampled) {
    return {std::exp(-q * q / (2.0 * width * width)), 0.0};
  }
  const Grid1D& g = samples->grid();
  const double dp = g.conjugate_spacing();
  const double pos = q / dp + static_cast<double>(g.size() / 2);
  if (pos < 0.0 || pos > static_cast<double>(g.size() - 1)) return {0.0, 0.0};
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, g.size() - 1);
  const double t = pos - static_cast<double>(lo);
  const auto& a = samples->amplitudes();
  return (1.0 - t) * a[lo] + t * a[hi];
}

BipartiteWaveFunction spdc_state(const PumpProfile& pump, const Grid1D& grid_1,
                                 const Grid1D& grid_2, std::array<DofLabel, 2> labels,
                                 double envelope_width, const ScaleContext& scale) {
  require_positive(envelope_width, "envelope width");
  if (pump.kind == PumpProfile::Kind::gaussian) {
    const double var_u = 0.5 * pump.width * pump.width;
    const double var_v = std::isfinite(envelope_width)
                             ? envelope_width * envelope_width
                             : std::numeric_limits<double>::infinity();
    require_pair_support(0.0, var_u, var_v, grid_1, "photon 1");
    require_pair_support(0.0, var_u, var_v, grid_2, "photon 2");
  }
  ComplexMatrix amps(static_cast<Eigen::Index>(grid_1.size()),
                     static_cast<Eigen::Index>(grid_2.size()));
  const bool flat = !std::isfinite(envelope_width);
  for (std::size_t j = 0; j < grid_2.size(); ++j) {
    const double q2 = grid_2.wavevector(j);
    for (std::size_t i = 0; i < grid_1.size(); ++i) {
      const double q1 = grid_1.wavevector(i);
      Complex v = pump(q1 + q2);
      if (!flat) {
        const double d = q1 - q2;
        v *= std::exp(-d * d / (4.0 * envelope_width * envelope_width));
      }
      amps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  if (!(amps.squaredNorm() > 0.0)) {
    fail(ErrorCode::unnormalized, "pump spectrum vanishes on the sum-coordinate grid");
  }
  return BipartiteWaveFunction::normalized(
      {grid_1, grid_2}, std::move(amps), labels,
      {Representation::wavevector, Representation::wavevector}, scale);
}

BipartiteWaveFunction fourier_one_side(const BipartiteWaveFunction& psi, DofLabel which) {
  const int axis = psi.axis_of(which);
  // F maps the wave-vector wavefunction onto the position wavefunction; on
  // any grid that is a quarter turn applied to position samples.
  const auto pos = in_representation(psi, axis, Representation::position);
  return apply_along(
      pos, axis,
      [](std::span<Complex> v, const Grid1D& g) {
        detail::rotate_inplace(v, g, 0.5 * kPi);
      },
      "fourier_one_side");
}

ClusterSpec linear_cluster_spec(double w_p) {
  require_positive(w_p, "w_p");
  ClusterSpec spec;
  spec.nodes = {DofLabel::photon1_x, DofLabel::photon1_y, DofLabel::photon2_x,
                DofLabel::photon2_y};
  spec.edges = {{DofLabel::photon1_x, DofLabel::photon2_x, -1.0},
                {DofLabel::photon1_y, DofLabel::photon2_y, -1.0},
                {DofLabel::photon1_x, DofLabel::photon1_y, 1.0}};
  spec.w_p = w_p;
  spec.realization = ClusterRealization::photonic;
  return spec;
}

ClusterSpec ring_cluster_spec(double w_p) {
  ClusterSpec spec = linear_cluster_spec(w_p);
  spec.edges.push_back({DofLabel::photon2_x, DofLabel::photon2_y, 1.0});
  return spec;
}

Neighbourhood neighbourhood(const ClusterSpec& spec, DofLabel node) {
  Neighbourhood out;
  for (const auto& e : spec.edges) {
    if (e.a == node) {
      out.nodes.push_back(e.b);
      out.weights.push_back(e.weight);
    } else if (e.b == node) {
      out.nodes.push_back(e.a);
      out.weights.push_back(e.weight);
    }
  }
  return out;
}

ClusterState::ClusterState(std::vector<Single> singles,
                           std::vector<BipartiteWaveFunction> pairs,
                           std::vector<CzLink> links)
    : singles_(std::move(singles)), pairs_(std::move(pairs)), links_(std::move(links)) {
  std::set<DofLabel> seen;
  for (DofLabel l : labels()) {
    if (!seen.insert(l).second) {
      fail(ErrorCode::label_error, "DOF " + name(l) + " appears in two factors");
    }
  }
  for (const auto& link : links_) {
    if (!seen.count(link.a) || !seen.count(link.b) || link.a == link.b) {
      fail(ErrorCode::label_error, "CZ link references a missing or repeated DOF");
    }
  }
}

std::vector<DofLabel> ClusterState::labels() const {
  std::vector<DofLabel> out;
  for (const auto& s : singles_) out.push_back(s.label);
  for (const auto& p : pairs_) {
    out.push_back(p.label(0));
    out.push_back(p.label(1));
  }
  return out;
}

bool ClusterState::has(DofLabel label) const {
  const auto l = labels();
  return std::find(l.begin(), l.end(), label) != l.end();
}

BipartiteWaveFunction ClusterState::to_bipartite() const {
  if (size() != 2) {
    fail(ErrorCode::unsupported_topology, "dense joint form needs exactly two DOF");
  }
  BipartiteWaveFunction joint =
      pairs_.empty()
          ? product(singles_[0].state, singles_[0].label, singles_[1].state,
                    singles_[1].label)
          : pairs_.front();
  joint = in_position(joint);
  for (const auto& link : links_) {
    // The CZ phase is symmetric in its endpoints.
    joint = cz_xy(joint, link.weight);
  }
  return joint;
}

SampledWaveFunction1D ClusterState::single(DofLabel label) const {
  for (const auto& link : links_) {
    if (link.a == label || link.b == label) {
      fail(ErrorCode::unsupported_topology,
           "DOF " + name(label) + " is still linked; no reduced pure state");
    }
  }
  for (const auto& s : singles_) {
    if (s.label == label) return s.state;
  }
  fail(ErrorCode::label_error, "DOF " + name(label) + " is not an unentangled factor");
}

ClusterState build_cluster(const ClusterSpec& spec, const Grid1D& grid,
                           const ScaleContext& scale) {
  if (spec.nodes.size() > 4) {
    fail(ErrorCode::unsupported_topology,
         "photonic clusters hold at most 4 nodes, got " + std::to_string(spec.nodes.size()));
  }
  if (spec.nodes.empty()) fail(ErrorCode::invalid_argument, "cluster has no nodes");
  require_positive(spec.w_p, "w_p");
  std::set<DofLabel> nodes(spec.nodes.begin(), spec.nodes.end());
  if (nodes.size() != spec.nodes.size()) {
    fail(ErrorCode::label_error, "cluster nodes must be distinct");
  }
  std::set<std::pair<DofLabel, DofLabel>> edge_set;
  for (const auto& e : spec.edges) {
    if (!nodes.count(e.a) || !nodes.count(e.b) || e.a == e.b) {
      fail(ErrorCode::label_error, "edge " + name(e.a) + "-" + name(e.b) +
                                       " references a missing node or is a loop");
    }
    if (!std::isfinite(e.weight)) fail(ErrorCode::invalid_argument, "edge weight must be finite");
    if (!edge_set.insert(std::minmax(e.a, e.b)).second) {
      fail(ErrorCode::label_error, "edge " + name(e.a) + "-" + name(e.b) + " is repeated");
    }
  }

  if (spec.realization == ClusterRealization::generic) {
    // Regularized |p = 0>: psi(x) ~ exp(-w_p^2 x^2 / 2), Var(p) = w_p^2 / 2.
    std::vector<ClusterState::Single> singles;
    const auto node = make_gaussian(grid, 0.0, 0.0, 1.0 / spec.w_p, scale);
    for (DofLabel l : spec.nodes) singles.push_back({l, node});
    std::vector<CzLink> links;
    for (const auto& e : spec.edges) links.push_back({e.a, e.b, e.weight});
    return ClusterState(std::move(singles), {}, std::move(links));
  }

  // Photonic: the EPR pairs are fixed by the source; CZ_xy acts within one
  // photon.
  if (nodes.size() != 4) {
    fail(ErrorCode::unsupported_topology, "the photonic cluster uses all four DOF");
  }
  using L = DofLabel;
  std::vector<CzLink> links;
  bool x_pair = false, y_pair = false;
  for (const auto& e : spec.edges) {
    const auto key = std::minmax(e.a, e.b);
    if (key == std::minmax(L::photon1_x, L::photon2_x) ||
        key == std::minmax(L::photon1_y, L::photon2_y)) {
      if (e.weight != -1.0) {
        fail(ErrorCode::unsupported_topology,
             "source-pair edges have weight -1 in the photonic realization");
      }
      (key.first == L::photon1_x ? x_pair : y_pair) = true;
    } else if (key == std::minmax(L::photon1_x, L::photon1_y) ||
               key == std::minmax(L::photon2_x, L::photon2_y)) {
      links.push_back({e.a, e.b, e.weight});
    } else {
      fail(ErrorCode::unsupported_topology,
           "edge " + name(e.a) + "-" + name(e.b) + " is not realizable with CZ_xy");
    }
  }
  if (!x_pair || !y_pair) {
    fail(ErrorCode::unsupported_topology,
         "the photonic cluster needs both source pairs (x1-x2 and y1-y2)");
  }
  // Pump width w_p gives Var(q1 + q2) = w_p^2 / 2 and the envelope
  // sqrt(2)/w_p gives Var(x1 - x2) = w_p^2 / 2, so every nullifier of the
  // unlinked pair equals the generic node variance.
  const double envelope = std::sqrt(2.0) / spec.w_p;
  std::vector<BipartiteWaveFunction> pairs;
  for (auto [a, b] : {std::pair{L::photon1_x, L::photon2_x},
                      std::pair{L::photon1_y, L::photon2_y}}) {
    auto pair = spdc_state(PumpProfile::gaussian(spec.w_p), grid, grid, {a, b},
                           envelope, scale);
    pair = fourier_one_side(pair, b);
    pairs.push_back(in_position(pair));
  }
  return ClusterState({}, std::move(pairs), std::move(links));
}

double nullifier_variance(const ClusterState& state, DofLabel node,
                          std::span<const DofLabel> neighbours,
                          std::span<const double> weights) {
  if (!state.has(node)) fail(ErrorCode::label_error, "node " + name(node) + " not in state");
  auto c = neighbour_coefficients(neighbours, weights, node);
  for (const auto& [l, w] : c) {
    if (!state.has(l)) fail(ErrorCode::label_error, "neighbour " + name(l) + " not in state");
  }
  // Conjugating through the pending links: p_node -> p_node + g x_other.
  for (const auto& link : state.links()) {
    if (link.a == node) c[link.b] += link.weight;
    if (link.b == node) c[link.a] += link.weight;
  }
  auto coeff = [&c](DofLabel l) {
    auto it = c.find(l);
    return it == c.end() ? 0.0 : it->second;
  };
  double total = 0.0;
  for (const auto& s : state.singles()) {
    const double a = s.label == node ? 1.0 : 0.0;
    const double cx = coeff(s.label);
    if (a == 0.0 && cx == 0.0) continue;
    total += single_quadrature_variance(s.state, a, cx);
  }
  for (const auto& p : state.pairs()) {
    const bool holds = p.has(node);
    const double c0 = coeff(p.label(0));
    const double c1 = coeff(p.label(1));
    if (!holds && c0 == 0.0 && c1 == 0.0) continue;
    const auto pos = in_position(p);
    const int axis = holds ? p.axis_of(node) : 0;
    const auto o = apply_linear_quadrature(pos, axis, holds ? 1.0 : 0.0, c0, c1);
    total += variance_of(pos.amplitudes(), o, pos.spacing(0) * pos.spacing(1));
  }
  return total;
}

double nullifier_variance(const BipartiteWaveFunction& state, DofLabel node,
                          std::span<const DofLabel> neighbours,
                          std::span<const double> weights) {
  const int axis = state.axis_of(node);
  auto c = neighbour_coefficients(neighbours, weights, node);
  double cc[2] = {0.0, 0.0};
  for (const auto& [l, w] : c) cc[state.axis_of(l)] = w;
  const auto pos = in_position(state);
  const auto o = apply_linear_quadrature(pos, axis, 1.0, cc[0], cc[1]);
  return variance_of(pos.amplitudes(), o, pos.spacing(0) * pos.spacing(1));
}

double nullifier_variance(const SampledWaveFunction1D& state) {
  return single_quadrature_variance(state, 1.0, 0.0);
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

Measurement<SampledWaveFunction1D> collapse_single(const SampledWaveFunction1D& psi,
                                                   std::size_t idx) {
  if (psi.representation() != Representation::position) {
    fail(ErrorCode::representation, "position measurement needs position representation");
  }
  const Grid1D& g = psi.grid();
  const double density = std::norm(psi.amplitudes()[idx]);
  require_density(density, g.position(idx));
  ComplexVector delta(g.size(), Complex{0.0, 0.0});
  delta[idx] = 1.0 / std::sqrt(g.spacing());
  return {SampledWaveFunction1D(g, std::move(delta), Representation::position, psi.scale()),
          g.position(idx), density, density * g.spacing(), idx};
}

Measurement<SampledWaveFunction1D> collapse_pair(const BipartiteWaveFunction& psi,
                                                 int axis, std::size_t idx) {
  if (psi.representation(axis) != Representation::position) {
    fail(ErrorCode::representation, "position measurement needs position representation");
  }
  const int other = 1 - axis;
  const auto& a = psi.amplitudes();
  const auto k = static_cast<Eigen::Index>(idx);
  const std::size_t n = psi.grid(other).size();
  ComplexVector partner(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    partner[j] = axis == 0 ? a(k, jj) : a(jj, k);
  }
  const double density = detail::norm_squared(partner, psi.spacing(other));
  const double outcome = psi.grid(axis).position(idx);
  require_density(density, outcome);
  auto state = SampledWaveFunction1D::normalized(psi.grid(other), std::move(partner),
                                                 psi.representation(other), psi.scale());
  return {std::move(state), outcome, density, density * psi.spacing(axis), idx};
}

}  // namespace

Measurement<SampledWaveFunction1D> measure_position(const SampledWaveFunction1D& psi,
                                                    double outcome) {
  return collapse_single(psi, snap(psi.grid(), outcome));
}

Measurement<SampledWaveFunction1D> sample_position(const SampledWaveFunction1D& psi,
                                                   std::mt19937_64& rng) {
  if (psi.representation() != Representation::position) {
    fail(ErrorCode::representation, "position measurement needs position representation");
  }
  return collapse_single(psi, draw(marginal(psi, Representation::position), rng));
}

Measurement<SampledWaveFunction1D> measure_position(const BipartiteWaveFunction& psi,
                                                    DofLabel dof, double outcome) {
  const int axis = psi.axis_of(dof);
  return collapse_pair(psi, axis, snap(psi.grid(axis), outcome));
}

Measurement<SampledWaveFunction1D> sample_position(const BipartiteWaveFunction& psi,
                                                   DofLabel dof, std::mt19937_64& rng) {
  const int axis = psi.axis_of(dof);
  if (psi.representation(axis) != Representation::position) {
    fail(ErrorCode::representation, "position measurement needs position representation");
  }
  return collapse_pair(psi, axis, draw(marginal(psi, axis), rng));
}

namespace {

Measurement<ClusterState> collapse_cluster(const ClusterState& state, DofLabel dof,
                                           const std::optional<double>& outcome,
                                           std::mt19937_64* rng) {
  if (!state.has(dof)) fail(ErrorCode::label_error, "DOF " + name(dof) + " not in state");
  std::vector<ClusterState::Single> singles;
  std::vector<BipartiteWaveFunction> pairs;
  std::optional<Measurement<SampledWaveFunction1D>> m;
  for (const auto& s : state.singles()) {
    if (s.label == dof) {
      m = outcome ? measure_position(s.state, *outcome) : sample_position(s.state, *rng);
    } else {
      singles.push_back(s);
    }
  }
  for (const auto& p : state.pairs()) {
    if (p.has(dof)) {
      m = outcome ? measure_position(p, dof, *outcome) : sample_position(p, dof, *rng);
      singles.push_back({p.label(1 - p.axis_of(dof)), m->state});
    } else {
      pairs.push_back(p);
    }
  }
  // Links to the measured DOF turn into local momentum kicks.
  std::vector<CzLink> links;
  for (const auto& link : state.links()) {
    if (link.a != dof && link.b != dof) {
      links.push_back(link);
      continue;
    }
    const DofLabel other = link.a == dof ? link.b : link.a;
    const double kick = link.weight * m->outcome;
    bool done = false;
    for (auto& s : singles) {
      if (s.label == other) {
        s.state = pauli_z(s.state, kick);
        done = true;
      }
    }
    for (auto& p : pairs) {
      if (!done && p.has(other)) {
        p = apply_along(
            p, p.axis_of(other),
            [kick](std::span<Complex> v, const Grid1D& g) {
              detail::position_phase_inplace(v, g, [kick](double x) { return kick * x; });
            },
            "cz_collapse");
        done = true;
      }
    }
  }
  return {ClusterState(std::move(singles), std::move(pairs), std::move(links)), m->outcome,
          m->density, m->probability, m->index};
}

SampledWaveFunction1D rotated(const SampledWaveFunction1D& psi, double theta,
                              std::optional<double> f) {
  auto out = f ? frft(psi, theta, *f) : frft(psi, theta);
  return in_representation(out, Representation::position);
}

BipartiteWaveFunction rotated(const BipartiteWaveFunction& psi, DofLabel dof,
                              double theta, std::optional<double> f) {
  const int axis = psi.axis_of(dof);
  if (f) {
    const auto stages = frft_stage_angles(theta);
    const double kappa = psi.scale().kappa();
    if (!stages.empty() &&
        std::abs(*f * std::sin(stages.front()) - kappa) > 1e-9 * kappa) {
      fail(ErrorCode::scale_mismatch, "FRFT stage needs f sin(theta) = k d^2");
    }
  }
  auto pos = in_representation(psi, axis, Representation::position);
  if (frft_stage_angles(theta).empty()) return pos;
  return apply_along(
      pos, axis,
      [theta](std::span<Complex> v, const Grid1D& g) { detail::rotate_inplace(v, g, theta); },
      "measure_quadrature");
}

}  // namespace

Measurement<ClusterState> measure_position(const ClusterState& state, DofLabel dof,
                                           double outcome) {
  return collapse_cluster(state, dof, outcome, nullptr);
}

Measurement<ClusterState> sample_position(const ClusterState& state, DofLabel dof,
                                          std::mt19937_64& rng) {
  return collapse_cluster(state, dof, std::nullopt, &rng);
}

Measurement<SampledWaveFunction1D> measure_quadrature(const SampledWaveFunction1D& psi,
                                                      double theta, double outcome,
                                                      std::optional<double> f) {
  return measure_position(rotated(psi, theta, f), outcome);
}

Measurement<SampledWaveFunction1D> sample_quadrature(const SampledWaveFunction1D& psi,
                                                     double theta, std::mt19937_64& rng,
                                                     std::optional<double> f) {
  return sample_position(rotated(psi, theta, f), rng);
}

Measurement<SampledWaveFunction1D> measure_quadrature(const BipartiteWaveFunction& psi,
                                                      DofLabel dof, double theta,
                                                      double outcome,
                                                      std::optional<double> f) {
  return measure_position(rotated(psi, dof, theta, f), dof, outcome);
}

Measurement<SampledWaveFunction1D> sample_quadrature(const BipartiteWaveFunction& psi,
                                                     DofLabel dof, double theta,
                                                     std::mt19937_64& rng,
                                                     std::optional<double> f) {
  return sample_position(rotated(psi, dof, theta, f), dof, rng);
}

}  // namespace spatialcv
