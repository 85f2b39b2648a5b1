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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spatialcv/entangle.hpp"
#include "spatialcv/error.hpp"
#include "spatialcv/gates.hpp"

namespace spatialcv {
namespace {

constexpr double kPi = std::numbers::pi;

using D = DofLabel;

// Second central moment of a*q_0 + b*q_1 over the joint density, in the
// state's current representations.
double joint_variance(const BipartiteWaveFunction& psi, double a, double b) {
  const auto& amps = psi.amplitudes();
  const double cell = psi.spacing(0) * psi.spacing(1);
  double m1 = 0.0;
  double m2 = 0.0;
  for (Eigen::Index j = 0; j < amps.cols(); ++j) {
    for (Eigen::Index i = 0; i < amps.rows(); ++i) {
      const double q = a * psi.coordinate(0, static_cast<std::size_t>(i)) +
                       b * psi.coordinate(1, static_cast<std::size_t>(j));
      const double w = std::norm(amps(i, j)) * cell;
      m1 += q * w;
      m2 += q * q * w;
    }
  }
  return m2 - m1 * m1;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::invalid_argument;
}

const Grid1D kGrid = Grid1D::self_dual(1024);

TEST(DofLabelTest, RoundTrip) {
  for (auto l : {D::photon1_x, D::photon1_y, D::photon2_x, D::photon2_y}) {
    EXPECT_EQ(dof_label_from_string(to_string(l)), l);
  }
  EXPECT_EQ(code_of([] { dof_label_from_string("photon3_x"); }), ErrorCode::label_error);
}

TEST(BipartiteTest, LabelsMustDiffer) {
  const Grid1D g(32, 6.0);
  const auto a = make_gaussian(g, 0.0, 0.0, 1.0);
  EXPECT_EQ(code_of([&] { product(a, D::photon1_x, a, D::photon1_x); }), ErrorCode::label_error);
}

TEST(CzTest, ZeroWeightIsIdentityAndMarginalsAreKept) {
  const Grid1D g(256, 12.0);
  const auto a = make_gaussian(g, 0.5, 0.0, 1.0);
  const auto b = make_gaussian(g, -0.3, 0.2, 1.3);
  const auto psi = product(a, D::photon1_x, b, D::photon1_y);
  EXPECT_EQ(cz_xy(psi, 0.0).amplitudes(), psi.amplitudes());
  const auto linked = cz_xy(psi, 1.0);
  for (int axis = 0; axis < 2; ++axis) {
    const auto before = marginal(psi, axis);
    const auto after = marginal(linked, axis);
    for (std::size_t j = 0; j < before.size(); ++j) EXPECT_NEAR(before[j], after[j], 1e-15);
  }
  EXPECT_EQ(code_of([&] { cz_xy(in_representation(psi, 1, Representation::wavevector)); }),
            ErrorCode::representation);
}

TEST(CzTest, ConditionalDisplacement) {
  const Grid1D g(1024, 25.6);
  const auto a = make_gaussian(g, 0.0, 0.0, 1.0 / 0.2);
  const auto psi = cz_xy(product(a, D::photon1_x, a, D::photon1_y), 1.0);
  for (double x0 : {-1.0, 0.0, 1.5}) {
    const auto r = measure_position(psi, D::photon1_x, x0);
    EXPECT_NEAR(moments(r.state).mean(1), r.outcome, 0.02 * std::max(1.0, std::abs(x0)));
  }
}

TEST(FwmTest, SumVarianceMatchesCorrelationWidth) {
  for (double sc : {0.1, 0.2}) {
    const auto psi = fwm_entangle(0.0, sc, 10.0, kGrid, kGrid);
    EXPECT_EQ(psi.representation(0), Representation::wavevector);
    EXPECT_NEAR(joint_variance(psi, 1.0, 1.0), sc * sc, 0.02 * sc * sc) << sc;
  }
  const auto shifted = fwm_entangle(0.5, 0.1, 10.0, kGrid, kGrid);
  EXPECT_NEAR(joint_variance(shifted, 1.0, 1.0), 0.01, 2e-4);
}

TEST(FwmTest, SwapSymmetricAndPositionAnticorrelated) {
  const auto psi = fwm_entangle(0.0, 0.1, 10.0, kGrid, kGrid);
  const auto& a = psi.amplitudes();
  EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  const auto pos = in_position(psi);
  EXPECT_NEAR(joint_variance(pos, 1.0, -1.0), 1.0 / 100.0, 1e-4);
}

TEST(FwmTest, GridSupportAndWarnings) {
  EXPECT_EQ(code_of([] { fwm_entangle(0.0, 0.1, 10.0, Grid1D(128, 5.0), Grid1D(128, 5.0)); }),
            ErrorCode::support_overflow);
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });
  fwm_entangle(0.0, 1.0, 2.0, kGrid, kGrid);
  set_warning_sink(nullptr);
  EXPECT_FALSE(warnings.empty());
}

TEST(SpdcTest, GaussianPumpSumVariance) {
  const double w = 0.3;
  const auto psi = spdc_state(PumpProfile::gaussian(w), kGrid, kGrid, {D::photon1_x, D::photon2_x},
                              8.0);
  EXPECT_NEAR(joint_variance(psi, 1.0, 1.0), w * w / 2.0, 1e-3 * w * w);
}

TEST(SpdcTest, AmplitudeDependsOnlyOnTheSum) {
  const Grid1D g(256, 12.0);
  const auto psi = spdc_state(PumpProfile::gaussian(1.0), g, g);
  const auto& a = psi.amplitudes();
  // Indices with equal i + j share q1 + q2 on identical grids.
  for (Eigen::Index s = 100; s < 140; ++s) {
    for (Eigen::Index i = s - 120; i <= 120; i += 17) {
      if (i < 0 || s - i < 0 || s - i >= a.cols()) continue;
      EXPECT_NEAR(std::abs(a(i, s - i) - a(s - i, i)), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(a(i, s - i) - a(i + 1, s - i - 1)), 0.0, 1e-14);
    }
  }
}

TEST(SpdcTest, MutualInformationGrowsAsPumpNarrows) {
  const Grid1D g(256, 40.0);
  double previous = 0.0;
  for (double s : {0.4, 0.2, 0.1}) {
    const auto psi = spdc_state(PumpProfile::plane_wave(s), g, g, {D::photon1_x, D::photon2_x},
                                3.0);
    const double mi = mutual_information(psi);
    EXPECT_GT(mi, previous) << s;
    previous = mi;
  }
}

TEST(FourierOneSideTest, TwiceIsParityOnThatSide) {
  const Grid1D g = Grid1D::self_dual(256);
  const auto psi = in_position(fwm_entangle(0.3, 0.3, 2.0, g, g));
  const auto twice = fourier_one_side(fourier_one_side(psi, D::photon2_x), D::photon2_x);
  const auto& a = psi.amplitudes();
  const auto& b = twice.amplitudes();
  double err = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 1; j < a.cols(); ++j) {
      err += std::norm(b(i, j) - a(i, a.cols() - j));  // x -> -x with x_0 = -L unmatched
    }
  }
  EXPECT_LE(std::sqrt(err * psi.spacing(0) * psi.spacing(1)), 1e-9);
  EXPECT_NEAR(twice.norm(), 1.0, 1e-9);
}

TEST(FourierOneSideTest, EprBecomesBilinearPhase) {
  const auto epr = fwm_entangle(0.0, 0.1, 10.0, kGrid, kGrid);
  // Photon 2 goes to position through the Fourier gate; photon 1 is then
  // read in position too, giving the two-node cluster amplitude.
  const auto psi = in_position(fourier_one_side(epr, D::photon2_x));
  const auto& a = psi.amplitudes();
  const auto c = static_cast<Eigen::Index>(kGrid.size() / 2);  // coordinate 0
  const double amp_floor = 1e-6 / std::sqrt(psi.spacing(0) * psi.spacing(1));
  // Least-squares slope of arg(psi) against u v, on the window where the
  // phase stays inside (-pi, pi] so no unwrapping is needed.
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double uv = psi.coordinate(0, static_cast<std::size_t>(i)) *
                        psi.coordinate(1, static_cast<std::size_t>(j));
      if (std::abs(uv) > 2.0 || std::abs(a(i, j)) <= amp_floor) continue;
      const double phase = std::arg(a(i, j) / a(c, c));
      num += phase * uv;
      den += uv * uv;
    }
  }
  ASSERT_GT(den, 0.0);
  // Our conventions give exp(-i u v), the sign of the two-node cluster kernel.
  EXPECT_NEAR(num / den, -1.0, 1e-3);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-9);
}

TEST(ClusterTest, SingleNodeIsMomentumSqueezed) {
  ClusterSpec spec;
  spec.nodes = {D::photon1_x};
  spec.w_p = 0.2;
  const auto c = build_cluster(spec, kGrid);
  EXPECT_NEAR(nullifier_variance(c, D::photon1_x, {}, {}), 0.02, 1e-10);
  EXPECT_NEAR(nullifier_variance(c.single(D::photon1_x)), 0.02, 1e-10);
}

TEST(ClusterTest, PhotonicWiring) {
  const auto linear = linear_cluster_spec();
  const auto ring = ring_cluster_spec();
  EXPECT_EQ(linear.edges.size(), 3u);
  EXPECT_EQ(ring.edges.size(), 4u);
  EXPECT_EQ(linear.realization, ClusterRealization::photonic);
  for (const auto& spec : {linear, ring}) {
    for (auto node : spec.nodes) {
      EXPECT_FALSE(neighbourhood(spec, node).nodes.empty());
    }
  }
  EXPECT_EQ(neighbourhood(ring, D::photon2_x).nodes.size(), 2u);
}

TEST(ClusterTest, RejectsTooManyNodesAndBadEdges) {
  ClusterSpec spec;
  spec.nodes = {D::photon1_x, D::photon1_y};
  spec.edges = {{D::photon1_x, D::photon2_y, 1.0}};
  EXPECT_EQ(code_of([&] { build_cluster(spec, kGrid); }), ErrorCode::label_error);
  spec.nodes = {D::photon1_x, D::photon1_x};
  spec.edges = {};
  EXPECT_EQ(code_of([&] { build_cluster(spec, kGrid); }), ErrorCode::label_error);
}

TEST(ClusterTest, NullifiersDecreaseWithSqueezing) {
  for (const auto& make : {linear_cluster_spec, ring_cluster_spec}) {
    std::map<D, double> previous;
    for (double w : {0.4, 0.2, 0.1}) {
      const auto spec = make(w);
      const auto c = build_cluster(spec, kGrid);
      for (auto node : spec.nodes) {
        const auto hood = neighbourhood(spec, node);
        const double v = nullifier_variance(c, node, hood.nodes, hood.weights);
        EXPECT_GE(v, 0.0);
        if (previous.count(node)) {
          EXPECT_LT(v, previous[node]);
        }
        previous[node] = v;
      }
    }
  }
}

TEST(ClusterTest, TwoNodeIdealLimit) {
  ClusterSpec spec;
  spec.nodes = {D::photon1_x, D::photon2_x};
  spec.edges = {{D::photon1_x, D::photon2_x, 1.0}};
  spec.w_p = 0.05;
  // Var(x) = 1 / (2 w_p^2) per node needs a wide window; p stays narrow.
  const auto c = build_cluster(spec, Grid1D(2048, 110.0));
  const auto hood = neighbourhood(spec, D::photon1_x);
  EXPECT_LE(nullifier_variance(c, D::photon1_x, hood.nodes, hood.weights), 1e-2);
}

TEST(ClusterTest, DenseAndFactoredNullifiersAgree) {
  ClusterSpec spec;
  spec.nodes = {D::photon1_x, D::photon2_x};
  spec.edges = {{D::photon1_x, D::photon2_x, 1.0}};
  spec.w_p = 0.4;
  const auto c = build_cluster(spec, kGrid);
  for (auto node : spec.nodes) {
    const auto hood = neighbourhood(spec, node);
    const double factored = nullifier_variance(c, node, hood.nodes, hood.weights);
    EXPECT_NEAR(factored, 0.08, 1e-6);
    EXPECT_NEAR(nullifier_variance(c.to_bipartite(), node, hood.nodes, hood.weights), factored,
                1e-9);
  }
}

TEST(ClusterTest, RingNullifierNeedsTheRightNeighbours) {
  const auto spec = ring_cluster_spec(0.1);
  const auto c = build_cluster(spec, kGrid);
  for (auto node : spec.nodes) {
    const auto hood = neighbourhood(spec, node);
    const double right = nullifier_variance(c, node, hood.nodes, hood.weights);
    std::vector<D> wrong;
    for (auto other : spec.nodes) {
      if (other != node && std::find(hood.nodes.begin(), hood.nodes.end(), other) == hood.nodes.end()) {
        wrong.push_back(other);
      }
    }
    ASSERT_FALSE(wrong.empty());
    wrong.push_back(hood.nodes.front());
    const std::vector<double> ones(wrong.size(), 1.0);
    EXPECT_GT(nullifier_variance(c, node, wrong, ones), right) << to_string(node);
  }
}

TEST(MeasureTest, ProductStateCollapseLeavesPartner) {
  const Grid1D g(256, 12.0);
  const auto a = make_gaussian(g, 0.5, 0.0, 1.0);
  const auto b = make_gaussian(g, -0.3, 0.7, 1.4);
  const auto r = measure_position(product(a, D::photon1_x, b, D::photon2_x), D::photon1_x, 0.4);
  EXPECT_LE(l2_distance(r.state, b), 1e-12);
  EXPECT_NEAR(r.outcome, g.position(g.nearest_index(0.4)), 1e-15);
}

TEST(MeasureTest, EprPositionCorrelation) {
  const auto psi = in_position(fwm_entangle(0.0, 0.1, 10.0, kGrid, kGrid));
  const double a = 1.3;
  const auto r = measure_position(psi, D::photon1_x, a);
  const auto rho = marginal(r.state, Representation::position);
  const auto peak = std::max_element(rho.begin(), rho.end()) - rho.begin();
  EXPECT_NEAR(kGrid.position(static_cast<std::size_t>(peak)), r.outcome, 0.1);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-9);
}

TEST(MeasureTest, ZeroProbabilityOutcome) {
  const Grid1D g(256, 40.0);
  const auto psi = make_gaussian(g, 0.0, 0.0, 1.0);
  EXPECT_EQ(code_of([&] { measure_position(psi, 39.0); }), ErrorCode::zero_probability);
}

TEST(MeasureTest, QuadratureAtZeroIsPosition) {
  const Grid1D g(256, 12.0);
  const auto psi = make_gaussian(g, 0.3, 0.5, 1.1);
  const auto q = measure_quadrature(psi, 0.0, 0.2);
  const auto p = measure_position(psi, 0.2);
  EXPECT_EQ(q.density, p.density);
  EXPECT_EQ(q.state.amplitudes(), p.state.amplitudes());
  const auto wrapped = measure_quadrature(psi, 0.9 + 2.0 * kPi, 0.2);
  EXPECT_NEAR(wrapped.density, measure_quadrature(psi, 0.9, 0.2).density, 1e-9);
}

TEST(MeasureTest, MomentumSamplingStatistics) {
  const Grid1D g = Grid1D::self_dual(512);
  const auto psi = make_gaussian(g, 0.0, 2.0, 1.0);
  std::mt19937_64 rng(2026);
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_quadrature(psi, 0.5 * kPi, rng).outcome;
  const double sigma = std::sqrt(0.5);
  EXPECT_NEAR(sum / n, 2.0, 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(MeasureTest, SamplingIsReproducible) {
  const auto psi = make_gaussian(Grid1D(256, 12.0), 0.0, 0.0, 1.0);
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(sample_position(psi, a).outcome, sample_position(psi, b).outcome);
  }
}

TEST(MeasureTest, ClusterMeasurementTurnsLinksIntoKicks) {
  ClusterSpec spec;
  spec.nodes = {D::photon1_x, D::photon2_x};
  spec.edges = {{D::photon1_x, D::photon2_x, 1.0}};
  spec.w_p = 0.2;
  const Grid1D g(1024, 25.6);
  const auto c = build_cluster(spec, g);
  for (double a : {-1.0, 0.0, 1.5}) {
    const auto r = measure_position(c, D::photon1_x, a);
    ASSERT_EQ(r.state.labels().size(), 1u);
    const double mean_p = moments(r.state.single(D::photon2_x)).mean(1);
    EXPECT_NEAR(mean_p, r.outcome, 0.02 * std::max(1.0, std::abs(a)));
    // The dense two-DOF path gives the same conditional state.
    const auto dense = measure_position(c.to_bipartite(), D::photon1_x, a);
    EXPECT_NEAR(fidelity(dense.state, r.state.single(D::photon2_x)), 1.0, 1e-9);
  }
}

}  // namespace
}  // namespace spatialcv
