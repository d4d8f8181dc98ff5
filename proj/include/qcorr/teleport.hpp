#pragma once

// Two-qubit teleportation through two copies of a two-qubit channel state,
// modelled as a generalized Pauli channel weighted by Bell-state overlaps.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "qcorr/graphene.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/quadrature.hpp"

namespace qcorr {

/// cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>
struct InputState {
  double theta = std::numbers::pi / 2;
  double phi = 0.0;

  Vec4 vector() const {
    Vec4 v{};
    v[2] = std::cos(theta / 2.0);
    v[1] = std::polar(std::sin(theta / 2.0), phi);
    return v;
  }
  Mat4 density() const { return Mat4::projector(vector()); }
};

namespace bell {

inline Vec4 psi_minus() { const double h = std::sqrt(0.5); return {0.0, h, -h, 0.0}; }
inline Vec4 phi_minus() { const double h = std::sqrt(0.5); return {h, 0.0, 0.0, -h}; }
inline Vec4 phi_plus() { const double h = std::sqrt(0.5); return {h, 0.0, 0.0, h}; }
inline Vec4 psi_plus() { const double h = std::sqrt(0.5); return {0.0, h, h, 0.0}; }

}  // namespace bell

/// E^0..E^3 = |Psi-><Psi-|, |Phi-><Phi-|, |Phi+><Phi+|, |Psi+><Psi+|.
/// Outcome i is corrected by sigma_i with sigma_0 = 1, so E^i pairs with 1, X, Y, Z.
inline const std::array<Mat4, 4>& bell_projectors() {
  static const std::array<Mat4, 4> e{Mat4::projector(bell::psi_minus()), Mat4::projector(bell::phi_minus()),
                                     Mat4::projector(bell::phi_plus()), Mat4::projector(bell::psi_plus())};
  return e;
}

using ChannelProbabilities = std::array<double, 4>;

inline ChannelProbabilities channel_probabilities(const Mat4& rho_ch) {
  require_state(rho_ch, "channel_probabilities");
  ChannelProbabilities p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = (bell_projectors()[i] * rho_ch).trace().real();
  return p;
}

/// Pauli operators sigma_i (x) sigma_j, i, j in {0, x, y, z}, flattened as 4i + j.
inline const std::array<Mat4, 16>& two_qubit_paulis() {
  static const std::array<Mat4, 16> ops = [] {
    std::array<Mat4, 16> out{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out[4 * i + j] = kron(pauli::all()[i], pauli::all()[j]);
    return out;
  }();
  return ops;
}

/// sum_ij P_i P_j (sigma_i (x) sigma_j) rho_in (sigma_i (x) sigma_j)
inline Mat4 teleport_output(const Mat4& rho_in, const ChannelProbabilities& p) {
  Mat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double w = p[i] * p[j];
      if (w == 0.0) continue;
      const Mat4& u = two_qubit_paulis()[4 * i + j];
      out += w * (u * rho_in * u);
    }
  return out;
}

inline Mat4 teleport_output(const Mat4& rho_in, const Mat4& rho_ch) {
  require_state(rho_in, "teleport_output");
  return teleport_output(rho_in, channel_probabilities(rho_ch));
}

/// <psi| rho_out |psi>, the fidelity for a pure input.
inline double fidelity_pure(const InputState& in, const Mat4& rho_out) {
  return std::clamp(expectation(rho_out, in.vector()).real(), 0.0, 1.0);
}

/// Fidelity of the teleported pure state without forming rho_out:
/// sum_ij P_i P_j |<psi| sigma_i (x) sigma_j |psi>|^2.
inline double channel_fidelity(const ChannelProbabilities& p, const Vec4& psi) {
  double f = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double w = p[i] * p[j];
      if (w == 0.0) continue;
      f += w * std::norm(expectation(two_qubit_paulis()[4 * i + j], psi));
    }
  return f;
}

struct OutputAB {
  double a = 0.0;
  double b = 0.0;
};

/// Printed closed form: a = 1/4 and the hyperbolic expression for b.
inline OutputAB output_closed_ab(const GrapheneParams& p, double temperature) {
  p.require_lambda("output_closed_ab");
  if (!(temperature > 0.0)) throw std::invalid_argument("output_closed_ab: temperature must be positive");
  const double e11 = p.eta11();
  const double e22 = p.eta22();
  const double rp = std::hypot(e11 + 1.0, e22);
  const double rm = std::hypot(e11 - 1.0, e22);
  // Hyperbolic functions are scaled by exp(-m) so that small T does not overflow.
  const double u = p.lambda * rm / temperature;
  const double v = p.lambda * rp / temperature;
  const double m = std::max(std::abs(u), std::abs(v));
  const auto scaled_exp = [m](double x) { return std::exp(x - m); };
  const double ch_m = 0.5 * (scaled_exp(u) + scaled_exp(-u));
  const double sh_p = 0.5 * (scaled_exp(v) - scaled_exp(-v));
  const double ch_p = 0.5 * (scaled_exp(v) + scaled_exp(-v));
  const double cos_a = std::cos(p.alpha);
  OutputAB ab;
  ab.a = 0.25;
  ab.b = cos_a * cos_a * (ch_m - sh_p) * (ch_m - sh_p) / (4.0 * (ch_m + ch_p) * (ch_m + ch_p));
  return ab;
}

/// (a, b) read off the numeric output for the theta = pi/2, phi = 0 input:
/// a = rho_out[0][0], b = rho_out[1][2].
inline OutputAB output_numeric_ab(const ChannelProbabilities& p) {
  const Mat4 out = teleport_output(InputState{std::numbers::pi / 2, 0.0}.density(), p);
  return {out(0, 0).real(), out(1, 2).real()};
}

struct QuadratureOptions {
  std::size_t theta_nodes = 32;  // Gauss-Legendre on [0, pi]
  std::size_t phi_nodes = 64;    // trapezoid on [0, 2 pi)
};

/// Average fidelity over the input family: (1/4pi) int dphi int F sin(theta) dtheta.
inline double average_fidelity(const ChannelProbabilities& p, const QuadratureOptions& q = {}) {
  const auto rule = gauss_legendre(q.theta_nodes, 0.0, std::numbers::pi);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(q.phi_nodes);
  double total = 0.0;
  for (std::size_t i = 0; i < q.theta_nodes; ++i) {
    const double th = rule.nodes[i];
    double ring = 0.0;
    for (std::size_t k = 0; k < q.phi_nodes; ++k) {
      ring += channel_fidelity(p, InputState{th, dphi * static_cast<double>(k)}.vector());
    }
    total += rule.weights[i] * std::sin(th) * ring * dphi;
  }
  return total / (4.0 * std::numbers::pi);
}

/// Average over theta alone with phi = 0: (1/2) int F(theta, 0) sin(theta) dtheta.
inline double average_fidelity_phi0(const ChannelProbabilities& p, std::size_t theta_nodes = 32) {
  const auto rule = gauss_legendre(theta_nodes, 0.0, std::numbers::pi);
  double total = 0.0;
  for (std::size_t i = 0; i < theta_nodes; ++i) {
    const double th = rule.nodes[i];
    total += rule.weights[i] * std::sin(th) * channel_fidelity(p, InputState{th, 0.0}.vector());
  }
  return 0.5 * total;
}

struct AverageFidelity {
  double quadrature = 0.0;      // full (theta, phi) average through the channel map
  double phi0_family = 0.0;     // theta-only average at phi = 0
  double closed_path = 0.0;     // a + (2/3) b with (a, b) from the numeric output
  double closed_printed = 0.0;  // a + (2/3) b with the printed closed-form (a, b)
};

inline AverageFidelity average_fidelity(const GrapheneParams& params, double temperature,
                                        const QuadratureOptions& q = {}) {
  const auto p = channel_probabilities(thermal_state(params, temperature));
  AverageFidelity f;
  f.quadrature = average_fidelity(p, q);
  f.phi0_family = average_fidelity_phi0(p, q.theta_nodes);
  const auto ab = output_numeric_ab(p);
  f.closed_path = ab.a + 2.0 / 3.0 * ab.b;
  if (params.lambda != 0.0) {
    const auto printed = output_closed_ab(params, temperature);
    f.closed_printed = printed.a + 2.0 / 3.0 * printed.b;
  } else {
    f.closed_printed = std::numeric_limits<double>::quiet_NaN();
  }
  return f;
}

/// Strictly above the classical bound 2/3.
inline bool classical_threshold_check(double average) { return average > 2.0 / 3.0; }

}  // namespace qcorr
