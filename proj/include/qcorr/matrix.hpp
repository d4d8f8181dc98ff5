#pragma once

// Small dense complex matrices with compile-time dimension.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace qcorr {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

template <std::size_t N>
using Vec = std::array<cplx, N>;

using Vec2 = Vec<2>;
using Vec4 = Vec<4>;

/// Row-major N x N complex matrix. Value type; all operations return new matrices.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() : data_{} {}

  Matrix(std::initializer_list<cplx> entries) : data_{} {
    if (entries.size() != N * N) {
      throw std::invalid_argument("Matrix: expected dim*dim entries");
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |v><w|
  static Matrix outer(const Vec<N>& v, const Vec<N>& w) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }

  static Matrix projector(const Vec<N>& v) { return outer(v, v); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * N + j]; }

  const std::array<cplx, N * N>& data() const { return data_; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Matrix conj() const {
    Matrix m;
    for (std::size_t k = 0; k < N * N; ++k) m.data_[k] = std::conj(data_[k]);
    return m;
  }

  Matrix transpose() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// max_ij |M_ij - conj(M_ji)|
  double hermiticity_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= cplx(s); }
  friend Matrix operator*(Matrix a, double s) { return a *= cplx(s); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Vec<N> operator*(const Matrix& a, const Vec<N>& v) {
    Vec<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

 private:
  std::array<cplx, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  return (a - b).max_abs();
}

template <std::size_t N>
cplx inner(const Vec<N>& a, const Vec<N>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& v) {
  return std::sqrt(std::real(inner(v, v)));
}

template <std::size_t N>
Vec<N> scaled(Vec<N> v, cplx s) {
  for (auto& z : v) z *= s;
  return v;
}

template <std::size_t N>
Vec<N> operator+(Vec<N> a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <std::size_t N>
Vec<N> operator-(Vec<N> a, const Vec<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

/// <v|M|v>
template <std::size_t N>
cplx expectation(const Matrix<N>& m, const Vec<N>& v) {
  return inner(v, m * v);
}

/// Tensor product, (A (x) B)[2i+k][2j+l] = A[i][j] B[k][l].
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

inline Vec4 kron(const Vec2& a, const Vec2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

namespace pauli {

inline Mat2 id() { return Mat2::identity(); }
inline Mat2 x() { return Mat2{0.0, 1.0, 1.0, 0.0}; }
inline Mat2 y() { return Mat2{0.0, -kI, kI, 0.0}; }
inline Mat2 z() { return Mat2{1.0, 0.0, 0.0, -1.0}; }

/// sigma_1..sigma_3 indexed 0..2.
inline const std::array<Mat2, 3>& xyz() {
  static const std::array<Mat2, 3> s{x(), y(), z()};
  return s;
}

/// sigma_0..sigma_3 with sigma_0 = identity.
inline const std::array<Mat2, 4>& all() {
  static const std::array<Mat2, 4> s{id(), x(), y(), z()};
  return s;
}

/// n . sigma for a real 3-vector n.
inline Mat2 along(const std::array<double, 3>& n) {
  return n[0] * x() + n[1] * y() + n[2] * z();
}

}  // namespace pauli

}  // namespace qcorr
