#pragma once

// Spectral kernel for small Hermitian matrices: cyclic Jacobi eigensolver,
// spectral functions, trace norm and partial traces.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClampTol = 1e-12;

/// Eigenvalues ascending; eigenvectors are the columns of `vectors`.
template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values{};
  Matrix<N> vectors;

  Vec<N> vector(std::size_t i) const {
    Vec<N> v{};
    for (std::size_t k = 0; k < N; ++k) v[k] = vectors(k, i);
    return v;
  }
};

namespace detail {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary G = diag(1, e^{-i phi}) * R(theta) acting on (p,q).
template <std::size_t N>
void jacobi_rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double zeta = (aqq - app) / (2.0 * mag);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const cplx gpp = c;
  const cplx gpq = s;
  const cplx gqp = -s * std::conj(phase);
  const cplx gqq = c * std::conj(phase);

  for (std::size_t k = 0; k < N; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < N; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < N; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Sweeps visit pairs (p,q) in row order until the off-diagonal Frobenius mass
/// drops below 1e-14 * ||M||_F. Each eigenvector is phase-fixed so that its
/// largest component (first one on ties) is real and positive, which makes the
/// output a deterministic function of the input.
template <std::size_t N>
EigenSystem<N> hermitian_eig(const Matrix<N>& m) {
  if (m.hermiticity_error() > kHermitianTol) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  Matrix<N> a = m;
  for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  Matrix<N> v = Matrix<N>::identity();

  const double scale = a.frobenius_norm();
  const double target = 1e-14 * scale;
  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  while (scale > 0.0 && detail::off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) {
      throw NumericError("hermitian_eig: Jacobi sweeps did not converge");
    }
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem<N> es;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    es.values[k] = a(src, src).real();
    std::size_t big = 0;
    for (std::size_t r = 1; r < N; ++r)
      if (std::abs(v(r, src)) > std::abs(v(big, src)) * (1.0 + 1e-12)) big = r;
    const cplx fix = std::abs(v(big, src)) > 0.0 ? std::conj(v(big, src)) / std::abs(v(big, src))
                                                 : cplx(1.0);
    for (std::size_t r = 0; r < N; ++r) es.vectors(r, k) = v(r, src) * fix;
  }
  return es;
}

/// sum_i f(lambda_i) |v_i><v_i|. Throws std::domain_error if f is not finite at an eigenvalue.
template <std::size_t N, class F>
Matrix<N> hermitian_function(const Matrix<N>& m, F&& f) {
  const auto es = hermitian_eig(m);
  Matrix<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const double fv = f(es.values[k]);
    if (!std::isfinite(fv)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "hermitian_function: function undefined at eigenvalue " << es.values[k];
      throw std::domain_error(msg.str());
    }
    if (fv == 0.0) continue;
    out += fv * Matrix<N>::projector(es.vector(k));
  }
  for (std::size_t i = 0; i < N; ++i) out(i, i) = out(i, i).real();
  return out;
}

/// sqrt of a PSD Hermitian matrix. Eigenvalues in [-1e-12, 0) are clamped to 0.
template <std::size_t N>
Matrix<N> psd_sqrt(const Matrix<N>& m) {
  return hermitian_function(m, [](double x) {
    if (x < -kPsdClampTol) return std::numeric_limits<double>::quiet_NaN();
    return x <= 0.0 ? 0.0 : std::sqrt(x);
  });
}

/// Sum of singular values. Hermitian input takes the sum of |eigenvalues|.
template <std::size_t N>
double trace_norm(const Matrix<N>& m) {
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_error() <= 1e-12 * scale) {
    const auto es = hermitian_eig(m);
    double s = 0.0;
    for (double x : es.values) s += std::abs(x);
    return s;
  }
  const auto es = hermitian_eig(m.adjoint() * m);
  double s = 0.0;
  for (double x : es.values) s += std::sqrt(std::max(0.0, x));
  return s;
}

enum class Subsystem { A = 0, B = 1 };

/// Reduced 2x2 state of one qubit of a two-qubit operator.
inline Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10) {
    throw std::invalid_argument("partial_trace: input must have unit trace");
  }
  Mat2 out;
  switch (keep) {
    case Subsystem::A:
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
      return out;
    case Subsystem::B:
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(k, l) = rho(k, l) + rho(2 + k, 2 + l);
      return out;
  }
  throw std::invalid_argument("partial_trace: invalid subsystem id");
}

/// Hermitian, trace-one and PSD within `tol`.
inline bool is_density_matrix(const Mat4& rho, double tol = 1e-10) {
  if (rho.hermiticity_error() > tol) return false;
  if (std::abs(rho.trace() - cplx(1.0)) > tol) return false;
  return hermitian_eig(rho).values[0] >= -tol;
}

inline void require_state(const Mat4& rho, const char* who) {
  if (!is_density_matrix(rho)) {
    throw std::invalid_argument(std::string(who) + ": input is not a valid density matrix");
  }
}

}  // namespace qcorr
