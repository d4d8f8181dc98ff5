#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/graphene.hpp"
#include "qcorr/measures.hpp"
#include "support/random_states.hpp"

using namespace qcorr;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

Mat4 bell_phi_plus() { return Mat4::projector(Vec4{kH, 0, 0, kH}); }
Mat4 mixed() { return 0.25 * Mat4::identity(); }

Mat4 werner(double p) {
  return p * Mat4::projector(Vec4{0, kH, -kH, 0}) + (1.0 - p) * mixed();
}

// Concurrence through the literal nested square roots of sqrt(sqrt(rho) rho~ sqrt(rho)).
double concurrence_nested(const Mat4& rho) {
  const Mat4 s = psd_sqrt(rho);
  const Mat4 inner = s * spin_flip(rho) * s;
  const auto es = hermitian_eig(psd_sqrt(0.5 * (inner + inner.adjoint())));
  return std::max(0.0, es.values[3] - es.values[2] - es.values[1] - es.values[0]);
}

}  // namespace

TEST(Concurrence, PureExamples) {
  EXPECT_NEAR(concurrence_pure(Vec4{kH, 0, 0, kH}), 1.0, 1e-15);
  EXPECT_EQ(concurrence_pure(Vec4{1, 0, 0, 0}), 0.0);
  EXPECT_THROW(concurrence_pure(Vec4{1, 1, 0, 0}), std::invalid_argument);
}

TEST(Concurrence, PureMatchesDeterminantForm) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec4 v = testkit::random_pure(rng);
    EXPECT_NEAR(concurrence_pure(v), 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]), 1e-14);
  }
}

TEST(Concurrence, MixedExamples) {
  EXPECT_NEAR(concurrence_mixed(mixed()), 0.0, 1e-15);
  EXPECT_NEAR(concurrence_mixed(bell_phi_plus()), 1.0, 1e-12);
  EXPECT_NEAR(concurrence_mixed(werner(0.8)), 0.7, 1e-12);
  for (double p : {0.2, 1.0 / 3.0, 0.5, 0.9}) {
    EXPECT_NEAR(concurrence_mixed(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-12) << p;
  }
  EXPECT_THROW(concurrence_mixed(Mat4::identity()), std::invalid_argument);
}

TEST(Concurrence, MixedOnProjectorsMatchesPure) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec4 v = testkit::random_pure(rng);
    EXPECT_NEAR(concurrence_mixed(Mat4::projector(v)), concurrence_pure(v), 1e-10);
  }
}

TEST(Concurrence, RouteAgreesWithNestedSquareRoots) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat4 rho = testkit::random_density(rng);
    EXPECT_NEAR(concurrence_mixed(rho), concurrence_nested(rho), 1e-8);
  }
}

TEST(Bures, Examples) {
  auto b = bures_entanglement(0.0);
  EXPECT_EQ(b.raw, 0.0);
  EXPECT_EQ(b.normalized, 0.0);
  b = bures_entanglement(1.0);
  EXPECT_NEAR(b.raw, 2.0 - std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.normalized, 1.0, 1e-14);
  EXPECT_NEAR(bures_entanglement(kH).raw, 0.15224, 1e-5);
  EXPECT_THROW(bures_entanglement(1.1), std::invalid_argument);
  EXPECT_THROW(bures_entanglement(-0.1), std::invalid_argument);
}

TEST(Bures, StrictlyMonotone) {
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const auto b = bures_entanglement(i / 99.0);
    EXPECT_GT(b.raw, prev);
    EXPECT_NEAR(b.normalized, b.raw / bures_max(), 1e-14);
    prev = b.raw;
  }
}

TEST(TminClosed, Examples) {
  EXPECT_NEAR(tmin_closed(bell_phi_plus()).value, 1.0, 1e-12);
  EXPECT_NEAR(tmin_closed(Mat4::projector(Vec4{1, 0, 0, 0})).value, 0.0, 1e-12);
  EXPECT_THROW(tmin_closed(pauli_decompose(mixed())), std::invalid_argument);
}

TEST(TminClosed, ClampsChiAndRecordsIntermediates) {
  const auto r = tmin_closed(Mat4::projector(Vec4{1, 0, 0, 0}));
  EXPECT_GE(r.inter.chi_minus, 0.0);
  EXPECT_GE(r.inter.chi_plus, 0.0);
  EXPECT_NEAR(r.inter.tmin_alpha, 0.0, 1e-14);
  EXPECT_NEAR(r.inter.tmin_beta, 0.0, 1e-14);
}

TEST(TminOracle, Examples) {
  EXPECT_NEAR(tmin_oracle(bell_phi_plus()), 1.0, 1e-6);
  EXPECT_NEAR(tmin_oracle(mixed()), 0.0, 1e-12);
}

TEST(Oracles, VanishOnProductStates) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat4 rho = kron(testkit::random_qubit_state(rng), testkit::random_qubit_state(rng));
    EXPECT_LT(tmin_oracle(rho), 1e-8);
    EXPECT_LT(uin_oracle(rho), 1e-8);
    EXPECT_LT(concurrence_mixed(rho), 1e-8);
  }
}

TEST(Oracles, LocalUnitaryInvariance) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat4 rho = trial % 3 == 0 ? testkit::random_bell_diagonal(rng) : testkit::random_density(rng);
    const Mat4 moved = testkit::conjugate(testkit::random_local_unitary(rng), rho);
    EXPECT_NEAR(tmin_oracle(rho), tmin_oracle(moved), 1e-6);
    EXPECT_NEAR(uin_oracle(rho), uin_oracle(moved), 1e-6);
    EXPECT_NEAR(concurrence_mixed(rho), concurrence_mixed(moved), 1e-6);
  }
}

TEST(Oracles, FreeDirectionBranchMatchesClosedForm) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Mat4 rho = testkit::random_bell_diagonal(rng);
    EXPECT_NEAR(tmin_closed(rho).value, tmin_oracle(rho), 1e-6);
    EXPECT_NEAR(uin_closed(rho), uin_oracle(rho), 1e-6);
  }
}

TEST(SkewInformation, Examples) {
  const Mat4 rho = Mat4::diagonal({0.1, 0.2, 0.3, 0.4});
  EXPECT_NEAR(skew_information(rho, Mat4::diagonal({1, -1, 2, 0})), 0.0, 1e-14);
  const Mat4 r = kron(pauli::x(), pauli::id());
  EXPECT_NEAR(skew_information(mixed(), r), 0.0, 1e-14);
  std::mt19937_64 rng(7);
  const Vec4 v = testkit::random_pure(rng);
  const double mean = expectation(r, v).real();
  EXPECT_NEAR(skew_information(Mat4::projector(v), r), expectation(r * r, v).real() - mean * mean, 1e-7);
  Mat4 bad;
  bad(0, 1) = 1.0;
  EXPECT_THROW(skew_information(rho, bad), std::invalid_argument);
}

TEST(Uin, Examples) {
  EXPECT_NEAR(uin_closed(mixed()), 0.0, 1e-12);
  EXPECT_NEAR(uin_closed(Mat4::projector(Vec4{1, 0, 0, 0})), 0.0, 1e-7);
  EXPECT_NEAR(uin_closed(bell_phi_plus()), 1.0, 1e-7);
  EXPECT_NEAR(uin_oracle(mixed()), 0.0, 1e-12);
  EXPECT_NEAR(uin_oracle(bell_phi_plus()), 1.0, 1e-6);
}

TEST(Uin, BoundedOnRandomStates) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat4 rho = testkit::random_density(rng);
    const double u = uin_oracle(rho);
    EXPECT_GE(u, -1e-10);
    EXPECT_LE(u, 1.0 + 1e-10);
  }
}

TEST(FullReport, MaximallyMixedAndBell) {
  const auto zero = full_report(mixed());
  EXPECT_NEAR(zero.concurrence, 0.0, 1e-12);
  EXPECT_NEAR(zero.tmin(), 0.0, 1e-12);
  EXPECT_NEAR(zero.uin(), 0.0, 1e-12);
  EXPECT_TRUE(zero.discrepancy_flags.empty());

  const auto bell = full_report(bell_phi_plus());
  EXPECT_NEAR(bell.concurrence, 1.0, 1e-10);
  // sqrt(1 - C^2) has infinite slope at C = 1: round-off in C of 1e-16 shows up as 1e-8 here.
  EXPECT_NEAR(bell.bures_normalized, 1.0, 1e-7);
  EXPECT_NEAR(bell.tmin(), 1.0, 1e-6);
  EXPECT_NEAR(bell.uin(), 1.0, 1e-6);
}

TEST(FullReport, FlagsOneNormReadingOnThermalStates) {
  GrapheneParams p;
  p.alpha = std::numbers::pi / 3;
  const auto r = full_report(thermal_state(p, 0.5));
  EXPECT_NEAR(r.tmin_closed_euclidean, r.tmin_oracle, 1e-6);
  bool flagged = false;
  for (const auto& d : r.discrepancy_flags) flagged |= d.name == "tmin_closed_vs_oracle";
  EXPECT_EQ(flagged, std::abs(r.tmin_closed - r.tmin_oracle) > kDiscrepancyTol);
}

TEST(ModelIdentities, Eta11ConcurrenceFormula) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testkit::random_params(rng);
    const auto g = analytic_eigensystem(p);
    const double e11 = p.eta11();
    const double e22 = p.eta22();
    EXPECT_NEAR(concurrence_pure(g.states[0]), std::abs(e22) / std::hypot(1 + e11, e22), 1e-10);
    EXPECT_NEAR(concurrence_pure(g.states[2]), std::abs(e22) / std::hypot(1 - e11, e22), 1e-10);
  }
}

TEST(ModelIdentities, DegenerateGroundConcurrence) {
  for (double e22 : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    GrapheneParams p;
    p.eta_x = 0.0;
    p.eta_y = e22;
    const auto gs = ground_state(p, 0.0);
    EXPECT_NEAR(concurrence_pure(gs.state), e22 / std::sqrt(1 + e22 * e22), 1e-10);
  }
}
