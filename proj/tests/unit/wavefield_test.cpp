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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spatialcv/error.hpp"
#include "spatialcv/wavefield.hpp"

namespace spatialcv {
namespace {

constexpr double kPi = std::numbers::pi;

// Direct O(N^2) sum of the position -> wave-vector integral with kernel
// exp(-i x p) / sqrt(2 pi); shares nothing with the FFT path.
ComplexVector slow_transform(const SampledWaveFunction1D& psi) {
  const Grid1D& g = psi.grid();
  ComplexVector out(g.size());
  for (std::size_t m = 0; m < g.size(); ++m) {
    Complex acc{};
    for (std::size_t j = 0; j < g.size(); ++j) {
      acc += std::exp(Complex(0.0, -g.position(j) * g.wavevector(m))) * psi.amplitudes()[j];
    }
    out[m] = acc * g.spacing() / std::sqrt(2.0 * kPi);
  }
  return out;
}

TEST(ScaleContextTest, ConversionsRoundTripExactly) {
  const ScaleContext s(7.9e6, 2.5e-4);
  for (double x : {0.0, 1.0, -3.25, 1e-3}) {
    EXPECT_EQ(s.position_to_dimensionless(s.position_to_dimensional(x)), x);
    EXPECT_EQ(s.wavevector_to_dimensionless(s.wavevector_to_dimensional(x)), x);
  }
  EXPECT_DOUBLE_EQ(s.kappa(), 7.9e6 * 2.5e-4 * 2.5e-4);
}

TEST(ScaleContextTest, FocalLengthPinsScale) {
  const auto s = ScaleContext::for_focal_length(1e7, 0.5);
  EXPECT_NEAR(s.kappa(), 0.5, 1e-15);
  EXPECT_THROW(ScaleContext(0.0, 1.0), Error);
  EXPECT_THROW(ScaleContext(1.0, -1.0), Error);
}

TEST(Grid1DTest, SamplesAreCenteredWithZeroOnTheGrid) {
  const Grid1D g(16, 4.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  EXPECT_DOUBLE_EQ(g.position(8), 0.0);
  EXPECT_DOUBLE_EQ(g.position(0), -4.0);
  EXPECT_DOUBLE_EQ(g.conjugate_spacing(), 2.0 * kPi / (16 * 0.5));
  EXPECT_DOUBLE_EQ(g.conjugate_half_extent(), 16 * g.conjugate_spacing() / 2.0);
  EXPECT_EQ(g.nearest_index(0.26), 9u);
  EXPECT_EQ(g.nearest_index(100.0), 15u);
}

TEST(Grid1DTest, SelfDualGridHasEqualSpacings) {
  const auto g = Grid1D::self_dual(1024);
  EXPECT_TRUE(g.is_self_dual());
  EXPECT_NEAR(g.spacing(), std::sqrt(2.0 * kPi / 1024), 1e-15);
  EXPECT_THROW(Grid1D(4, 1.0), Error);
  EXPECT_THROW(Grid1D(64, 0.0), Error);
}

TEST(WaveFunctionTest, ConstructorRejectsUnnormalizedAmplitudes) {
  const Grid1D g(64, 8.0);
  ComplexVector a(64, Complex(1.0, 0.0));
  try {
    SampledWaveFunction1D psi(g, a, Representation::position, ScaleContext::unit());
    FAIL() << "expected an unnormalized error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unnormalized);
  }
  const auto psi = SampledWaveFunction1D::normalized(g, a, Representation::position,
                                                     ScaleContext::unit());
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
}

TEST(MakeGaussianTest, GroundStateMoments) {
  const auto psi = make_gaussian(Grid1D::self_dual(1024), 0.0, 0.0, 1.0);
  const auto m = moments(psi);
  EXPECT_NEAR(m.mean(0), 0.0, 1e-12);
  EXPECT_NEAR(m.mean(1), 0.0, 1e-12);
  EXPECT_NEAR(m.covariance(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(m.covariance(1, 1), 0.5, 1e-12);
  EXPECT_NEAR(m.covariance(0, 1), 0.0, 1e-12);
}

TEST(MakeGaussianTest, TranslatedAndBoosted) {
  const auto g = Grid1D::self_dual(1024);
  const auto shifted = moments(make_gaussian(g, 2.0, 0.0, 1.0));
  EXPECT_NEAR(shifted.mean(0), 2.0, 1e-12);
  EXPECT_NEAR(shifted.covariance(0, 0), 0.5, 1e-12);

  const auto boosted = make_gaussian(g, 0.0, 3.0, 1.0);
  const auto rho = marginal(boosted, Representation::wavevector);
  double mean_p = 0.0;
  for (std::size_t m = 0; m < rho.size(); ++m) mean_p += g.wavevector(m) * rho[m] * g.conjugate_spacing();
  EXPECT_NEAR(mean_p, 3.0, 1e-10);
}

TEST(MakeGaussianTest, RandomParametersMatchClosedForm) {
  const auto g = Grid1D::self_dual(1024);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x0 = 3.0 * u(rng);
    const double p0 = 3.0 * u(rng);
    const double w = 1.0 + 0.5 * u(rng);
    const auto m = moments(make_gaussian(g, x0, p0, w));
    EXPECT_NEAR(m.mean(0), x0, 1e-8);
    EXPECT_NEAR(m.mean(1), p0, 1e-8);
    EXPECT_NEAR(m.covariance(0, 0), w * w / 2.0, 1e-8);
    EXPECT_NEAR(m.covariance(1, 1), 1.0 / (2.0 * w * w), 1e-8);
    EXPECT_NEAR(m.covariance(0, 1), 0.0, 1e-8);
    EXPECT_GE(m.uncertainty_product(), 0.25 - 1e-6);
  }
}

TEST(MakeGaussianTest, RejectsBadWidthAndOverflow) {
  const Grid1D g(256, 10.0);
  EXPECT_THROW(make_gaussian(g, 0.0, 0.0, 0.0), Error);
  try {
    make_gaussian(g, 8.0, 0.0, 1.0);
    FAIL() << "expected a support overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::support_overflow);
  }
}

TEST(HermiteGaussTest, GroundStateIsTheUnitGaussian) {
  const auto g = Grid1D::self_dual(512);
  EXPECT_LE(l2_distance(make_hermite_gauss(g, 0), make_gaussian(g, 0.0, 0.0, 1.0)), 1e-12);
}

TEST(HermiteGaussTest, OrthogonalityAndSecondMoment) {
  const auto g = Grid1D::self_dual(1024);
  const auto h0 = make_hermite_gauss(g, 0);
  EXPECT_LE(std::abs(overlap(h0, make_hermite_gauss(g, 1))), 1e-10);
  EXPECT_LE(std::abs(overlap(h0, make_hermite_gauss(g, 3))), 1e-10);
  for (unsigned n : {1u, 2u, 5u}) {
    const auto m = moments(make_hermite_gauss(g, n));
    EXPECT_NEAR(m.covariance(0, 0), (2.0 * n + 1.0) / 2.0, 1e-10) << "order " << n;
    EXPECT_NEAR(m.covariance(1, 1), (2.0 * n + 1.0) / 2.0, 1e-10) << "order " << n;
  }
}

TEST(HermiteGaussTest, OrderTooLargeIsRejected) {
  try {
    make_hermite_gauss(Grid1D(64, 6.0), 20);
    FAIL() << "expected order_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::order_too_large);
  }
}

TEST(ConjugateRepresentationTest, MatchesDirectIntegral) {
  const Grid1D g(128, 10.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  ComplexVector a(g.size());
  for (auto& v : a) v = {n(rng), n(rng)};
  const auto psi =
      SampledWaveFunction1D::normalized(g, a, Representation::position, ScaleContext::unit());
  const auto fast = to_conjugate_representation(psi);
  const auto slow = slow_transform(psi);
  double err = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) err += std::norm(fast.amplitudes()[m] - slow[m]);
  EXPECT_LE(std::sqrt(err * g.conjugate_spacing()), 1e-12);
  EXPECT_EQ(fast.representation(), Representation::wavevector);
}

TEST(ConjugateRepresentationTest, RoundTripAndParseval) {
  const Grid1D g(256, 12.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  ComplexVector a(g.size());
  for (auto& v : a) v = {n(rng), n(rng)};
  const auto psi =
      SampledWaveFunction1D::normalized(g, a, Representation::position, ScaleContext::unit());
  const auto there = to_conjugate_representation(psi);
  EXPECT_NEAR(there.norm(), 1.0, 1e-12);
  const auto back = to_conjugate_representation(there);
  EXPECT_EQ(back.representation(), Representation::position);
  EXPECT_LE(l2_distance(back, psi), 1e-12);
}

TEST(ConjugateRepresentationTest, GaussianWidthInverts) {
  const auto g = Grid1D::self_dual(1024);
  const auto psi = make_gaussian(g, 0.0, 0.0, 2.0);
  const auto rho = marginal(psi, Representation::wavevector);
  double var_p = 0.0;
  for (std::size_t m = 0; m < rho.size(); ++m) {
    var_p += g.wavevector(m) * g.wavevector(m) * rho[m] * g.conjugate_spacing();
  }
  EXPECT_NEAR(var_p, 1.0 / (2.0 * 4.0), 1e-10);  // width 1/w in wave-vector space
  const auto boosted = marginal(make_gaussian(g, 0.0, 2.0, 1.0), Representation::wavevector);
  const auto peak = std::max_element(boosted.begin(), boosted.end()) - boosted.begin();
  EXPECT_NEAR(g.wavevector(static_cast<std::size_t>(peak)), 2.0, g.conjugate_spacing());
}

TEST(MomentsTest, ChirpedGaussianCrossTerm) {
  const auto g = Grid1D::self_dual(1024);
  const double beta = 0.7;
  ComplexVector a(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.position(j);
    a[j] = std::exp(Complex(-x * x / 2.0, beta * x * x));
  }
  const auto psi =
      SampledWaveFunction1D::normalized(g, a, Representation::position, ScaleContext::unit());
  const auto m = moments(psi);
  EXPECT_NEAR(m.covariance(0, 1), 2.0 * beta * m.covariance(0, 0), 1e-10);
  EXPECT_NEAR(m.covariance(0, 1), 0.7, 1e-10);
  // Same value from the representation-independent code path.
  EXPECT_NEAR(moments(to_conjugate_representation(psi)).covariance(0, 1), 0.7, 1e-10);
}

TEST(OverlapTest, ClosedFormsAndErrors) {
  const auto g = Grid1D::self_dual(1024);
  const auto a = make_gaussian(g, 0.0, 0.0, 1.0);
  EXPECT_NEAR(std::abs(overlap(a, a)), 1.0, 1e-12);
  EXPECT_NEAR(overlap(a, make_gaussian(g, 1.0, 0.0, 1.0)).real(), std::exp(-0.25), 1e-12);
  EXPECT_NEAR(fidelity(a, make_gaussian(g, 1.0, 0.0, 1.0)), std::exp(-0.5), 1e-12);
  try {
    overlap(a, make_gaussian(Grid1D(1024, 30.0), 0.0, 0.0, 1.0));
    FAIL() << "expected grid_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_mismatch);
  }
}

TEST(TailProbabilityTest, GaussianTail) {
  // A fine grid keeps the cell straddling |x| = 1 from biasing the sum.
  const auto psi = make_gaussian(Grid1D(8192, 20.0), 0.0, 0.0, 1.0);
  // P(|x| > 1) for Var(x) = 1/2 is erfc(1).
  EXPECT_NEAR(tail_probability(psi, Representation::position, 1.0), std::erfc(1.0), 2e-3);
}

}  // namespace
}  // namespace spatialcv
