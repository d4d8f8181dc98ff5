#pragma once

// Seeded generators of states, unitaries and parameters for property tests.

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/graphene.hpp"
#include "qcorr/sampling.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr::testkit {

inline Mat4 random_density(std::mt19937_64& rng, int rank = 4) {
  std::normal_distribution<double> g;
  Mat4 a;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < static_cast<std::size_t>(rank); ++j) a(i, j) = cplx(g(rng), g(rng));
  Mat4 rho = a * a.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  return rho;
}

inline Vec4 random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec4 v{};
  for (auto& z : v) z = cplx(g(rng), g(rng));
  return scaled(v, 1.0 / norm(v));
}

/// exp(i phase) (cos t + i sin t n.sigma) with random axis, angle and phase.
inline Mat2 random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::array<double, 3> n{g(rng), g(rng), g(rng)};
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (auto& x : n) x /= nn;
  const double t = u(rng);
  Mat2 m = std::cos(t) * pauli::id() + kI * std::sin(t) * pauli::along(n);
  return std::polar(1.0, u(rng)) * m;
}

inline Mat4 random_local_unitary(std::mt19937_64& rng) {
  const Mat2 a = random_unitary2(rng);
  const Mat2 b = random_unitary2(rng);
  return kron(a, b);
}

inline Mat2 random_qubit_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> len(0.0, 1.0);
  std::array<double, 3> n{g(rng), g(rng), g(rng)};
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  const double r = len(rng);
  for (auto& x : n) x *= r / nn;
  return 0.5 * (pauli::id() + pauli::along(n));
}

using qcorr::random_bell_diagonal;
using qcorr::random_params;

inline Mat4 conjugate(const Mat4& u, const Mat4& rho) { return u * rho * u.adjoint(); }

}  // namespace qcorr::testkit
