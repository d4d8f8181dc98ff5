#pragma once

// Effective pseudo-spin (sublattice) x valley Hamiltonian of a disordered
// graphene sheet, with closed-form and numeric eigensystems, ground states
// and Gibbs states.
//
// Basis order: {|up 1>, |up 0>, |down 1>, |down 0>} = indices 0..3. The first
// factor is the pseudo-spin (sigma), the second the valley (kappa).

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

struct GrapheneParams {
  double eta = 1.0;     // band parameter
  double eta_x = 1.0;   // wave numbers, taken as scalars
  double eta_y = 1.0;
  double lambda = 1.0;  // scattering strength (lambda_A = lambda_B)
  double alpha = 0.0;   // scattering phase shift, radians

  bool finite() const {
    return std::isfinite(eta) && std::isfinite(eta_x) && std::isfinite(eta_y) &&
           std::isfinite(lambda) && std::isfinite(alpha);
  }

  double eta11() const {
    require_lambda("eta11");
    return eta * eta_x / lambda;
  }
  double eta22() const {
    require_lambda("eta22");
    return eta * eta_y / lambda;
  }

  void require_lambda(const char* who) const {
    if (lambda == 0.0) {
      throw UnsupportedParameters(std::string(who) + ": closed form requires lambda != 0");
    }
  }
};

/// H = eta [eta_x (sigma_x (x) 1) + eta_y (sigma_y (x) kappa_z)]
///     + lambda (1 (x) (1 + cos(alpha) kappa_x + sin(alpha) kappa_y))
inline Mat4 build_hamiltonian(const GrapheneParams& p) {
  const Mat2 id = pauli::id();
  const Mat2 valley = id + std::cos(p.alpha) * pauli::x() + std::sin(p.alpha) * pauli::y();
  Mat4 h = (p.eta * p.eta_x) * kron(pauli::x(), id);
  h += (p.eta * p.eta_y) * kron(pauli::y(), pauli::z());
  h += p.lambda * kron(id, valley);
  return h;
}

/// Closed-form eigenpairs labelled phi_1..phi_4 (array indices 0..3).
struct GrapheneEigensystem {
  std::array<double, 4> energies{};
  std::array<Vec4, 4> states{};
  cplx n_plus_coeff;   // N_+
  cplx n_minus_coeff;  // N_-

  /// Same pairs in ascending energy order.
  EigenSystem<4> sorted() const {
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    EigenSystem<4> es;
    for (std::size_t k = 0; k < 4; ++k) {
      es.values[k] = energies[order[k]];
      for (std::size_t r = 0; r < 4; ++r) es.vectors(r, k) = states[order[k]][r];
    }
    return es;
  }
};

namespace detail {

// N = -(n -/+ i eta22) / (2 sqrt(n^2 + eta22^2)); `sign` is +1 for N_+, -1 for N_-.
inline cplx graphene_coeff(double n, double eta22, double sign) {
  const double rad = std::hypot(n, eta22);
  if (rad == 0.0) return cplx(-0.5, 0.0);
  return -cplx(n, -sign * eta22) / (2.0 * rad);
}

}  // namespace detail

inline GrapheneEigensystem analytic_eigensystem(const GrapheneParams& p) {
  p.require_lambda("analytic_eigensystem");
  const double e11 = p.eta11();
  const double e22 = p.eta22();
  const double np = e11 + 1.0;
  const double nm = e11 - 1.0;
  const double rp = std::hypot(np, e22);
  const double rm = std::hypot(nm, e22);

  GrapheneEigensystem g;
  g.energies = {p.lambda * (1.0 - rp), p.lambda * (1.0 + rp), p.lambda * (1.0 - rm),
                p.lambda * (1.0 + rm)};
  const cplx Np = detail::graphene_coeff(np, e22, +1.0);
  const cplx Nm = detail::graphene_coeff(nm, e22, -1.0);
  g.n_plus_coeff = Np;
  g.n_minus_coeff = Nm;
  const cplx ph = std::polar(1.0, -p.alpha);
  // Amplitudes on |00>, |01>, |10>, |11>.
  g.states[0] = {ph * Np, 0.5, 0.5 * ph, Np};
  g.states[1] = {-ph * Np, 0.5, 0.5 * ph, -Np};
  g.states[2] = {-0.5 * ph, Nm, -ph * Nm, 0.5};
  g.states[3] = {-0.5 * ph, -Nm, ph * Nm, 0.5};
  return g;
}

enum class GroundKind { Unique, DegenerateSuperposition };

struct GroundState {
  GroundKind kind = GroundKind::Unique;
  Vec4 state{};
  double energy = 0.0;
  double beta_phase = 0.0;  // relative phase, degenerate kind only
  int branch = 1;           // 1..4: selected phi_i; for superpositions the phased member
};

/// |eta11| at or below this counts as the degenerate point eta11 = 0.
inline constexpr double kDegenerateEta11 = 1e-12;

/// Ground state from the sign table of (lambda, eta11). At eta11 = 0 returns
/// (e^{i beta} phi_1 + phi_3)/sqrt2 for lambda > 0, (e^{i beta} phi_2 + phi_4)/sqrt2 otherwise.
inline GroundState ground_state(const GrapheneParams& p, double beta_phase = 0.0) {
  p.require_lambda("ground_state");
  const auto g = analytic_eigensystem(p);
  const double e11 = p.eta11();
  const bool positive = p.lambda > 0.0;
  GroundState gs;
  if (std::abs(e11) <= kDegenerateEta11) {
    const std::size_t first = positive ? 0 : 1;
    const std::size_t second = positive ? 2 : 3;
    const cplx ph = std::polar(1.0, beta_phase);
    const double inv = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < 4; ++k)
      gs.state[k] = inv * (ph * g.states[first][k] + g.states[second][k]);
    gs.kind = GroundKind::DegenerateSuperposition;
    gs.energy = g.energies[first];
    gs.beta_phase = beta_phase;
    gs.branch = static_cast<int>(first) + 1;
    return gs;
  }
  std::size_t idx = 0;
  if (positive) {
    idx = e11 > 0.0 ? 0 : 2;
  } else {
    idx = e11 > 0.0 ? 1 : 3;
  }
  gs.state = g.states[idx];
  gs.energy = g.energies[idx];
  gs.branch = static_cast<int>(idx) + 1;
  return gs;
}

/// Gibbs state exp(-H/T)/Z with k_B = 1, evaluated as exp(-(H - E_min)/T) and renormalized.
inline Mat4 thermal_state(const GrapheneParams& p, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("thermal_state: temperature must be positive and finite");
  }
  const Mat4 h = build_hamiltonian(p);
  const double emin = hermitian_eig(h).values[0];
  Mat4 shifted = h - emin * Mat4::identity();
  Mat4 rho = hermitian_function(shifted, [temperature](double x) { return std::exp(-x / temperature); });
  const double z = rho.trace().real();
  rho *= cplx(1.0 / z);
  return rho;
}

/// Printed closed-form thermal matrix elements (unnormalized, divide by Z).
///
/// All Boltzmann weights are taken relative to exp(-E_min/T); the physical
/// values are the stored ones times exp(log_weight_offset).
struct ThermalClosedForm {
  double z = 0.0;
  double z_prime = 0.0;
  double log_weight_offset = 0.0;
  cplx rho11, rho12, rho13, rho14, rho23, rho24, rho34;

  /// rho(T) assembled from the elements with the printed Hermitian layout.
  Mat4 to_matrix() const {
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = rho11;
    m(0, 1) = rho12;
    m(0, 2) = rho13;
    m(0, 3) = rho14;
    m(1, 2) = rho23;
    m(1, 3) = rho24;
    m(2, 3) = rho34;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) m(j, i) = std::conj(m(i, j));
    return (1.0 / z) * m;
  }
};

inline ThermalClosedForm thermal_closed_elements(const GrapheneParams& p, double temperature) {
  p.require_lambda("thermal_closed_elements");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("thermal_closed_elements: temperature must be positive and finite");
  }
  const auto g = analytic_eigensystem(p);
  const double emin = *std::min_element(g.energies.begin(), g.energies.end());
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = std::exp(-(g.energies[i] - emin) / temperature);

  const cplx Np = g.n_plus_coeff;
  const cplx Nm = g.n_minus_coeff;
  const cplx em = std::polar(1.0, -p.alpha);
  const cplx ep = std::polar(1.0, p.alpha);

  ThermalClosedForm f;
  f.log_weight_offset = -emin / temperature;
  f.z = w[0] + w[1] + w[2] + w[3];
  f.z_prime = w[1] + w[2] - w[3];
  f.rho11 = f.z / 4.0;
  f.rho12 = 0.5 * em * (w[0] * Np - f.z_prime * std::conj(Nm));
  f.rho13 = 0.5 * (w[0] * Np + f.z_prime * std::conj(Nm));
  f.rho14 = -0.25 * em * (-2.0 * w[0] + f.z);
  f.rho24 = 0.5 * (w[0] * std::conj(Np) + f.z_prime * Nm);
  f.rho23 = -0.25 * ep * (-2.0 * w[0] + f.z);
  f.rho34 = 0.5 * em * (w[0] * std::conj(Np) - f.z_prime * Nm);
  return f;
}

}  // namespace qcorr
