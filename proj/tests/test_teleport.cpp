#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/quadrature.hpp"
#include "qcorr/teleport.hpp"
#include "support/random_states.hpp"

using namespace qcorr;

namespace {

GrapheneParams fig6_params() {
  GrapheneParams p;
  p.eta = 1.0;
  p.eta_x = 1.0;
  p.eta_y = 3.0;
  p.lambda = 1.0;
  p.alpha = std::numbers::pi;
  return p;
}

}  // namespace

TEST(Quadrature, IntegratesPolynomialsExactly) {
  for (std::size_t n : {1u, 2u, 5u, 16u, 32u}) {
    const auto r = gauss_legendre(n);
    double sum_w = 0.0;
    for (double w : r.weights) sum_w += w;
    EXPECT_NEAR(sum_w, 2.0, 1e-14);
    // Degree 2n - 1 is exact.
    const int deg = static_cast<int>(2 * n - 2);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += r.weights[i] * std::pow(r.nodes[i], deg);
    EXPECT_NEAR(acc, 2.0 / (deg + 1), 1e-13) << n;
  }
}

TEST(Quadrature, MappedInterval) {
  const auto r = gauss_legendre(32, 0.0, std::numbers::pi);
  double acc = 0.0;
  for (std::size_t i = 0; i < 32; ++i) acc += r.weights[i] * std::sin(r.nodes[i]);
  EXPECT_NEAR(acc, 2.0, 1e-14);
}

TEST(BellProjectors, CompleteOrthogonalRankOne) {
  const auto& e = bell_projectors();
  Mat4 sum;
  for (std::size_t i = 0; i < 4; ++i) {
    sum += e[i];
    EXPECT_NEAR(e[i].trace().real(), 1.0, 1e-15);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_LE(max_abs_diff(e[i] * e[j], i == j ? e[i] : Mat4{}), 1e-15);
    }
  }
  EXPECT_LE(max_abs_diff(sum, Mat4::identity()), 1e-15);
}

TEST(ChannelProbabilities, Examples) {
  const auto singlet = channel_probabilities(Mat4::projector(bell::psi_minus()));
  EXPECT_NEAR(singlet[0], 1.0, 1e-15);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(singlet[i], 0.0, 1e-15);
  for (double p : channel_probabilities(0.25 * Mat4::identity())) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(ChannelProbabilities, NormalizedOnThermalStates) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> temp(0.01, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = channel_probabilities(thermal_state(testkit::random_params(rng), temp(rng)));
    double s = 0.0;
    for (double x : p) {
      EXPECT_GE(x, -1e-12);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-10);
    EXPECT_NEAR(s * s, 1.0, 1e-10);
  }
}

TEST(TeleportOutput, PerfectAndDepolarizingChannels) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat4 in = testkit::random_density(rng);
    EXPECT_LT(trace_norm(teleport_output(in, Mat4::projector(bell::psi_minus())) - in), 1e-12);
    EXPECT_LT(trace_norm(teleport_output(in, 0.25 * Mat4::identity()) - 0.25 * Mat4::identity()), 1e-12);
  }
}

TEST(TeleportOutput, TracePreservingAndPositive) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mat4 in = testkit::random_density(rng, 1 + trial % 4);
    const Mat4 out = teleport_output(in, testkit::random_density(rng));
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
    EXPECT_GT(hermitian_eig(out).values[0], -1e-12);
  }
}

TEST(TeleportOutput, ThermalChannelStructure) {
  const auto p = channel_probabilities(thermal_state(fig6_params(), 0.7));
  for (double th : {0.3, 1.0, 2.0}) {
    const Mat4 out = teleport_output(InputState{th, 0.0}.density(), p);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(out(i, i).real(), out(0, 0).real(), 1e-10);
    const auto ab = output_numeric_ab(p);
    EXPECT_NEAR(out(1, 2).real(), ab.b * std::sin(th), 1e-10);
    EXPECT_NEAR(out(1, 2).imag(), 0.0, 1e-12);
    EXPECT_NEAR(fidelity_pure(InputState{th, 0.0}, out), ab.a + ab.b * std::pow(std::sin(th), 2), 1e-10);
  }
}

TEST(OutputClosedAB, Examples) {
  auto p = fig6_params();
  p.alpha = std::numbers::pi / 2;
  EXPECT_NEAR(output_closed_ab(p, 1.0).b, 0.0, 1e-15);
  p.alpha = 0.4;
  const double c2 = std::pow(std::cos(0.4), 2);
  EXPECT_NEAR(output_closed_ab(p, 1e9).b, c2 / 16.0, 1e-8);
  EXPECT_EQ(output_closed_ab(p, 1.0).a, 0.25);
  EXPECT_TRUE(std::isfinite(output_closed_ab(p, 1e-4).b));
  p.lambda = 0.0;
  EXPECT_THROW(output_closed_ab(p, 1.0), UnsupportedParameters);
}

TEST(Fidelity, Examples) {
  const InputState in{1.1, 0.3};
  EXPECT_NEAR(fidelity_pure(in, in.density()), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_pure(in, 0.25 * Mat4::identity()), 0.25, 1e-15);
  const InputState half{std::numbers::pi / 2, 0.0};
  Mat4 out = Mat4::diagonal({0.25, 0.25, 0.25, 0.25});
  out(1, 2) = out(2, 1) = 0.125;
  EXPECT_NEAR(fidelity_pure(half, out), 0.375, 1e-15);
}

TEST(Fidelity, ChannelFormMatchesOutputState) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = channel_probabilities(testkit::random_density(rng));
    const InputState in{1.0 + 0.01 * trial, 0.05 * trial};
    EXPECT_NEAR(channel_fidelity(p, in.vector()), fidelity_pure(in, teleport_output(in.density(), p)), 1e-12);
  }
}

TEST(AverageFidelity, LimitingChannels) {
  EXPECT_NEAR(average_fidelity(channel_probabilities(Mat4::projector(bell::psi_minus()))), 1.0, 1e-12);
  EXPECT_NEAR(average_fidelity(channel_probabilities(0.25 * Mat4::identity())), 0.25, 1e-12);
}

TEST(AverageFidelity, ConvergesUnderNodeDoubling) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = channel_probabilities(thermal_state(testkit::random_params(rng), 0.5 + trial));
    const double base = average_fidelity(p, {32, 64});
    EXPECT_NEAR(average_fidelity(p, {64, 128}), base, 1e-9);
    EXPECT_NEAR(average_fidelity_phi0(p, 64), average_fidelity_phi0(p, 32), 1e-9);
  }
}

TEST(AverageFidelity, PhiZeroFamilyMatchesClosedPath) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> temp(0.05, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = average_fidelity(testkit::random_params(rng), temp(rng));
    EXPECT_NEAR(f.phi0_family, f.closed_path, 1e-9);
    EXPECT_GE(f.quadrature, 0.0);
    EXPECT_LE(f.quadrature, 1.0);
  }
}

TEST(AverageFidelity, DecreasesWithTemperatureAtFig6Parameters) {
  double prev = 2.0;
  for (int k = 0; k < 100; ++k) {
    const double t = 0.05 + (5.0 - 0.05) * k / 99.0;
    const double f = average_fidelity(fig6_params(), t).quadrature;
    EXPECT_LE(f, prev + 1e-12) << "T=" << t;
    prev = f;
  }
}

TEST(ClassicalThreshold, StrictInequality) {
  EXPECT_TRUE(classical_threshold_check(1.0));
  EXPECT_FALSE(classical_threshold_check(0.25));
  EXPECT_FALSE(classical_threshold_check(2.0 / 3.0));
}
