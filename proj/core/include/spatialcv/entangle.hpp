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

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "spatialcv/bipartite.hpp"
#include "spatialcv/wavefield.hpp"

namespace spatialcv {

// Default regularization widths (dimensionless).
struct RegularizationDefaults {
  static constexpr double sigma_corr = 0.1;
  static constexpr double sigma_env = 10.0;
  static constexpr double sigma_pump = 0.1;
  static constexpr double w_p = 0.1;
};

// exp(i g x y) on a position-position joint state. Both marginals are
// untouched.
BipartiteWaveFunction cz_xy(const BipartiteWaveFunction& psi, double g = 1.0);

// Regularized four-wave-mixing EPR state in the wave-vector representation:
// exp(-(q_s + q_i - Q)^2 / (4 sigma_corr^2)) exp(-(q_s - q_i)^2 / (4 sigma_env^2)),
// so Var(q_s + q_i) = sigma_corr^2 and Var(x_s - x_i) = 1 / sigma_env^2.
// Axis 0 is the signal, axis 1 the idler.
BipartiteWaveFunction fwm_entangle(double q_total, double sigma_corr, double sigma_env,
                                   const Grid1D& grid_signal, const Grid1D& grid_idler,
                                   std::array<DofLabel, 2> labels = {DofLabel::photon1_x,
                                                                     DofLabel::photon2_x},
                                   const ScaleContext& scale = ScaleContext::unit());

// Angular spectrum v(q) of the pump.
struct PumpProfile {
  enum class Kind { plane_wave, gaussian, sampled };
  Kind kind = Kind::plane_wave;
  // plane_wave: regularization width of the delta; gaussian: the width.
  // v(q) = exp(-q^2 / (2 width^2)), hence Var(q_1 + q_2) = width^2 / 2.
  double width = RegularizationDefaults::sigma_pump;
  // sampled: wave-vector amplitudes, linearly interpolated, zero outside.
  std::optional<SampledWaveFunction1D> samples;

  static PumpProfile plane_wave(double regularization = RegularizationDefaults::sigma_pump);
  static PumpProfile gaussian(double width);
  static PumpProfile sampled(SampledWaveFunction1D spectrum);

  Complex operator()(double q) const;
};

// Biphoton amplitude v(q_1 + q_2) gamma(q_1 - q_2) in the wave-vector
// representation, one transverse axis. gamma = 1 when envelope_width is
// infinite, otherwise exp(-(q_1 - q_2)^2 / (4 envelope_width^2)).
BipartiteWaveFunction spdc_state(const PumpProfile& pump, const Grid1D& grid_1,
                                 const Grid1D& grid_2,
                                 std::array<DofLabel, 2> labels = {DofLabel::photon1_x,
                                                                   DofLabel::photon2_x},
                                 double envelope_width =
                                     std::numeric_limits<double>::infinity(),
                                 const ScaleContext& scale = ScaleContext::unit());

// Fourier gate on one DOF. The transformed DOF comes back in position
// representation: a DOF held in wave-vector form is relabelled, a DOF in
// position form is transformed.
BipartiteWaveFunction fourier_one_side(const BipartiteWaveFunction& psi, DofLabel which);

struct ClusterEdge {
  DofLabel a;
  DofLabel b;
  double weight = 1.0;
};

enum class ClusterRealization {
  generic,   // regularized |p = 0> nodes joined by CZ gates
  photonic,  // two EPR pairs (x1-x2, y1-y2) plus CZ_xy on each photon
};

struct ClusterSpec {
  std::vector<DofLabel> nodes;
  std::vector<ClusterEdge> edges;
  double w_p = RegularizationDefaults::w_p;  // node squeezing, Var(p) = w_p^2 / 2
  ClusterRealization realization = ClusterRealization::generic;
};

// The four-node photonic clusters. The EPR edges carry weight -1 (the
// Fourier-transformed pair has kernel exp(-i x1 x2)); CZ_xy edges weight +1.
ClusterSpec linear_cluster_spec(double w_p = RegularizationDefaults::w_p);
ClusterSpec ring_cluster_spec(double w_p = RegularizationDefaults::w_p);

// Graph neighbours of `node` and the matching edge weights.
struct Neighbourhood {
  std::vector<DofLabel> nodes;
  std::vector<double> weights;
};
Neighbourhood neighbourhood(const ClusterSpec& spec, DofLabel node);

struct CzLink {
  DofLabel a;
  DofLabel b;
  double weight;
};

// Cluster state as a product of one- and two-DOF factors followed by
// CZ phase links that have not been multiplied into the amplitudes. The
// links commute with every position measurement and with each other.
class ClusterState {
 public:
  struct Single {
    DofLabel label;
    SampledWaveFunction1D state;
  };

  ClusterState(std::vector<Single> singles, std::vector<BipartiteWaveFunction> pairs,
               std::vector<CzLink> links);

  const std::vector<Single>& singles() const noexcept { return singles_; }
  const std::vector<BipartiteWaveFunction>& pairs() const noexcept { return pairs_; }
  const std::vector<CzLink>& links() const noexcept { return links_; }

  std::vector<DofLabel> labels() const;
  bool has(DofLabel label) const;
  std::size_t size() const { return labels().size(); }

  // Dense joint state of a two-DOF cluster with every link applied.
  BipartiteWaveFunction to_bipartite() const;
  // A single-DOF cluster (or the DOF of a link-free single factor).
  SampledWaveFunction1D single(DofLabel label) const;

 private:
  std::vector<Single> singles_;
  std::vector<BipartiteWaveFunction> pairs_;
  std::vector<CzLink> links_;
};

// Builds the spec on the given grid (every node uses it).
ClusterState build_cluster(const ClusterSpec& spec, const Grid1D& grid,
                           const ScaleContext& scale = ScaleContext::unit());

// Var(p_node - sum_b w_b x_b).
double nullifier_variance(const ClusterState& state, DofLabel node,
                          std::span<const DofLabel> neighbours,
                          std::span<const double> weights);
double nullifier_variance(const BipartiteWaveFunction& state, DofLabel node,
                          std::span<const DofLabel> neighbours,
                          std::span<const double> weights);
double nullifier_variance(const SampledWaveFunction1D& state);

// Outcome of a projective position measurement. `outcome` is the grid
// sample the request snapped to; `density` the marginal probability density
// there; `probability` = density * spacing, the discrete mass.
template <class State>
struct Measurement {
  State state;
  double outcome;
  double density;
  double probability;
  std::size_t index;
};

// Uniform draw in [0, 1) with 53 random bits; portable across standard
// libraries so seeded runs are reproducible everywhere.
double uniform_unit(std::mt19937_64& rng);

// One DOF: collapses to the discrete delta on the snapped sample.
Measurement<SampledWaveFunction1D> measure_position(const SampledWaveFunction1D& psi,
                                                    double outcome);
Measurement<SampledWaveFunction1D> sample_position(const SampledWaveFunction1D& psi,
                                                   std::mt19937_64& rng);

// Two DOF: returns the partner's conditional state.
Measurement<SampledWaveFunction1D> measure_position(const BipartiteWaveFunction& psi,
                                                    DofLabel dof, double outcome);
Measurement<SampledWaveFunction1D> sample_position(const BipartiteWaveFunction& psi,
                                                   DofLabel dof, std::mt19937_64& rng);

// Cluster: removes the DOF; links to it become Z(weight * outcome) on the
// linked DOF.
Measurement<ClusterState> measure_position(const ClusterState& state, DofLabel dof,
                                           double outcome);
Measurement<ClusterState> sample_position(const ClusterState& state, DofLabel dof,
                                          std::mt19937_64& rng);

// FRFT(theta) on the DOF, then a position measurement. If f is given it
// must satisfy the FRFT stage scale rule.
Measurement<SampledWaveFunction1D> measure_quadrature(const SampledWaveFunction1D& psi,
                                                      double theta, double outcome,
                                                      std::optional<double> f = {});
Measurement<SampledWaveFunction1D> sample_quadrature(const SampledWaveFunction1D& psi,
                                                     double theta, std::mt19937_64& rng,
                                                     std::optional<double> f = {});
Measurement<SampledWaveFunction1D> measure_quadrature(const BipartiteWaveFunction& psi,
                                                      DofLabel dof, double theta,
                                                      double outcome,
                                                      std::optional<double> f = {});
Measurement<SampledWaveFunction1D> sample_quadrature(const BipartiteWaveFunction& psi,
                                                     DofLabel dof, double theta,
                                                     std::mt19937_64& rng,
                                                     std::optional<double> f = {});

}  // namespace spatialcv
