#pragma once

// Seeded draws of model parameters and reference states. Shared by the
// verify report and the test suite so both audit the same distributions.

#include <cmath>
#include <numbers>
#include <random>

#include "qcorr/graphene.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

/// eta, eta_x, eta_y in [-5, 5]; |lambda| in [0.05, 3] with random sign; alpha in [0, 2 pi).
inline GrapheneParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> wide(-5.0, 5.0);
  std::uniform_real_distribution<double> mag(0.05, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution sign;
  GrapheneParams p;
  p.eta = wide(rng);
  p.eta_x = wide(rng);
  p.eta_y = wide(rng);
  p.lambda = mag(rng) * (sign(rng) ? 1.0 : -1.0);
  p.alpha = angle(rng);
  return p;
}

/// Log-uniform temperature in [lo, hi].
inline double random_temperature(std::mt19937_64& rng, double lo = 0.05, double hi = 20.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

/// Bell-diagonal state (1 + sum_i c_i sigma_i (x) sigma_i)/4 with uniform weights on the simplex.
inline Mat4 random_bell_diagonal(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(u(rng) + 1e-300);
    total += x;
  }
  // weights on Phi+, Phi-, Psi+, Psi-
  for (double& x : w) x /= total;
  const double c1 = w[0] - w[1] + w[2] - w[3];
  const double c2 = -w[0] + w[1] + w[2] - w[3];
  const double c3 = w[0] + w[1] - w[2] - w[3];
  Mat4 rho = Mat4::identity();
  rho += c1 * kron(pauli::x(), pauli::x());
  rho += c2 * kron(pauli::y(), pauli::y());
  rho += c3 * kron(pauli::z(), pauli::z());
  return 0.25 * rho;
}

}  // namespace qcorr
