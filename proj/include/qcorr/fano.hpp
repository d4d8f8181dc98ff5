#pragma once

// Fano (Bloch) parametrization of two-qubit states and its canonical form,
// in which the correlation matrix is diagonal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "qcorr/matrix.hpp"

namespace qcorr {

using Real3 = std::array<double, 3>;
using Real33 = std::array<Real3, 3>;  // row-major, m[row][col]

inline double dot(const Real3& a, const Real3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Real3& a) { return std::sqrt(dot(a, a)); }
inline double norm1(const Real3& a) { return std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]); }

inline Real3 cross(const Real3& a, const Real3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double det(const Real33& m) {
  return dot(m[0], cross(m[1], m[2]));
}

inline Real33 transpose(const Real33& m) {
  Real33 t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline Real33 operator*(const Real33& a, const Real33& b) {
  Real33 m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline Real3 operator*(const Real33& a, const Real3& v) {
  return {dot(a[0], v), dot(a[1], v), dot(a[2], v)};
}

inline Real33 identity33() { return {Real3{1, 0, 0}, Real3{0, 1, 0}, Real3{0, 0, 1}}; }

/// rho = 1/4 (1 + s.sigma (x) 1 + 1 (x) r.sigma + sum_mn t_mn sigma_m (x) sigma_n)
struct FanoForm {
  Real3 s{};
  Real3 r{};
  Real33 t{};
  bool canonical = false;
  Real3 c{};  // diagonal of t when canonical
};

/// Local expectation values s_j, r_j and correlations t_mn of a two-qubit operator.
inline FanoForm pauli_decompose(const Mat4& rho) {
  const auto& sig = pauli::xyz();
  const Mat2 id = pauli::id();
  FanoForm f;
  for (std::size_t j = 0; j < 3; ++j) {
    f.s[j] = (rho * kron(sig[j], id)).trace().real();
    f.r[j] = (rho * kron(id, sig[j])).trace().real();
  }
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n) f.t[m][n] = (rho * kron(sig[m], sig[n])).trace().real();
  return f;
}

/// Rebuilds the 4x4 operator from its Fano coefficients.
inline Mat4 fano_to_matrix(const FanoForm& f) {
  const auto& sig = pauli::xyz();
  const Mat2 id = pauli::id();
  Mat4 rho = Mat4::identity();
  rho += kron(pauli::along(f.s), id);
  rho += kron(id, pauli::along(f.r));
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      if (f.t[m][n] != 0.0) rho += f.t[m][n] * kron(sig[m], sig[n]);
  return 0.25 * rho;
}

/// Real 3x3 singular value decomposition a = u diag(sigma) v^T.
struct Svd3 {
  Real33 u{};
  Real3 sigma{};
  Real33 v{};
};

/// One-sided (Hestenes) Jacobi SVD; singular values descending.
/// Columns with zero singular value are completed to an orthonormal frame.
inline Svd3 svd3(const Real33& a_in) {
  Real33 a = a_in;  // columns get orthogonalized in place
  Real33 v = identity33();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = p + 1; q < 3; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          alpha += a[k][p] * a[k][p];
          beta += a[k][q] * a[k][q];
          gamma += a[k][p] * a[k][q];
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    if (!rotated) break;
  }

  Real3 sig{};
  for (std::size_t j = 0; j < 3; ++j)
    sig[j] = std::sqrt(a[0][j] * a[0][j] + a[1][j] * a[1][j] + a[2][j] * a[2][j]);
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  Svd3 out;
  const double tiny = 1e-300 + 1e-15 * sig[order[0]];
  std::array<Real3, 3> ucols{};
  std::size_t filled = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t src = order[k];
    out.sigma[k] = sig[src];
    for (std::size_t r = 0; r < 3; ++r) out.v[r][k] = v[r][src];
    if (sig[src] > tiny) {
      for (std::size_t r = 0; r < 3; ++r) ucols[k][r] = a[r][src] / sig[src];
      filled = k + 1;
    }
  }
  // Complete u for vanishing singular values.
  if (filled == 0) {
    ucols = {Real3{1, 0, 0}, Real3{0, 1, 0}, Real3{0, 0, 1}};
  } else if (filled == 1) {
    const Real3& u0 = ucols[0];
    std::size_t least = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(u0[i]) < std::abs(u0[least])) least = i;
    Real3 e{};
    e[least] = 1.0;
    Real3 u1 = cross(u0, e);
    const double n1 = norm2(u1);
    for (auto& x : u1) x /= n1;
    ucols[1] = u1;
    ucols[2] = cross(u0, u1);
  } else if (filled == 2) {
    ucols[2] = cross(ucols[0], ucols[1]);
  }
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t r = 0; r < 3; ++r) out.u[r][k] = ucols[k][r];
  return out;
}

/// Rotates both local frames so the correlation matrix becomes diag(c).
///
/// Only proper rotations are used on each side; any residual sign ends up on
/// c[2], so |c[0]| >= |c[1]| >= |c[2]| and sign(c0 c1 c2) = sign(det t).
/// Already-canonical input is returned unchanged.
inline FanoForm canonicalize_fano(const FanoForm& f) {
  if (f.canonical) return f;
  Svd3 d = svd3(f.t);
  Real3 c = d.sigma;
  if (det(d.v) < 0.0) {
    for (std::size_t r = 0; r < 3; ++r) d.v[r][2] = -d.v[r][2];
    c[2] = -c[2];
  }
  if (det(d.u) < 0.0) {
    for (std::size_t r = 0; r < 3; ++r) d.u[r][2] = -d.u[r][2];
    c[2] = -c[2];
  }
  FanoForm g;
  g.s = transpose(d.u) * f.s;
  g.r = transpose(d.v) * f.r;
  g.c = c;
  for (std::size_t i = 0; i < 3; ++i) g.t[i][i] = c[i];
  g.canonical = true;
  return g;
}

}  // namespace qcorr
