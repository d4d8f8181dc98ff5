#pragma once

// Two-qubit correlation measures: concurrence, Bures entanglement, trace-norm
// measurement-induced nonlocality (TMIN) and uncertainty-induced nonlocality
// (UIN). The nonlocality measures come in two flavours: the closed formulas,
// and brute-force oracles that optimize the defining expression directly.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/fano.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/sphere_search.hpp"

namespace qcorr {

/// ||s|| at or below this is treated as s = 0 (free measurement direction).
inline constexpr double kFreeDirectionTol = 1e-9;
/// Cutoff for s' = Tr[sqrt(rho) (sigma_i (x) 1)]. sqrt(rho) inherits sqrt(eps) ~ 1e-8 noise from
/// eigenvalues at round-off level, so a vector that vanishes exactly can read as a few 1e-9.
inline constexpr double kSteeringTol = 1e-7;
/// |closed - oracle| above this raises a discrepancy flag.
inline constexpr double kDiscrepancyTol = 1e-3;

inline Mat4 spin_flip_operator() {
  static const Mat4 yy = kron(pauli::y(), pauli::y());
  return yy;
}

/// |<psi| sigma_y (x) sigma_y |psi*>| = 2 |a d - b c|.
inline double concurrence_pure(const Vec4& psi) {
  if (std::abs(norm(psi) - 1.0) > 1e-10) {
    throw std::invalid_argument("concurrence_pure: state vector is not normalized");
  }
  Vec4 conj_psi{};
  for (std::size_t i = 0; i < 4; ++i) conj_psi[i] = std::conj(psi[i]);
  const Vec4 flipped = spin_flip_operator() * conj_psi;
  return std::min(1.0, std::abs(inner(psi, flipped)));
}

/// Spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
inline Mat4 spin_flip(const Mat4& rho) {
  const Mat4 yy = spin_flip_operator();
  return yy * rho.conj() * yy;
}

/// Eigenvalues of rho below this fraction of the largest are treated as outside its support.
inline constexpr double kSupportTol = 1e-14;

/// Decreasing square roots of the spectrum of rho * spin_flip(rho).
///
/// These are the singular values of X_kl = <w_k| sigma_y (x) sigma_y |w_l*>,
/// w_k = sqrt(p_k) v_k running over the eigenvectors in the support of rho.
/// Restricting to the support keeps rank-deficient (in particular pure)
/// states exact instead of lifting zero roots to sqrt(round-off).
inline std::array<double, 4> concurrence_roots(const Mat4& rho) {
  const auto es = hermitian_eig(rho);
  const double top = std::max(es.values[3], 0.0);
  std::array<Vec4, 4> w{};
  std::size_t rank = 0;
  for (std::size_t k = 4; k-- > 0;) {
    if (es.values[k] <= kSupportTol * top) break;
    w[rank++] = scaled(es.vector(k), std::sqrt(es.values[k]));
  }
  const Mat4 yy = spin_flip_operator();
  Mat4 x;
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t l = 0; l < rank; ++l) {
      Vec4 wl_conj{};
      for (std::size_t i = 0; i < 4; ++i) wl_conj[i] = std::conj(w[l][i]);
      x(k, l) = inner(w[k], yy * wl_conj);
    }
  const auto sv = hermitian_eig(x.adjoint() * x);
  std::array<double, 4> tau{};
  for (std::size_t i = 0; i < 4; ++i) tau[i] = std::sqrt(std::max(0.0, sv.values[3 - i]));
  return tau;
}

inline double concurrence_mixed(const Mat4& rho) {
  require_state(rho, "concurrence_mixed");
  const auto tau = concurrence_roots(rho);
  return std::clamp(tau[0] - tau[1] - tau[2] - tau[3], 0.0, 1.0);
}

struct BuresEntanglement {
  double raw = 0.0;         // in [0, 2 - sqrt2]
  double normalized = 0.0;  // raw / (2 - sqrt2)
};

inline double bures_max() { return 2.0 - std::sqrt(2.0); }

inline BuresEntanglement bures_entanglement(double concurrence) {
  if (!(concurrence >= -1e-10 && concurrence <= 1.0 + 1e-10)) {
    throw std::invalid_argument("bures_entanglement: concurrence outside [0, 1]");
  }
  const double c = std::clamp(concurrence, 0.0, 1.0);
  BuresEntanglement b;
  b.raw = 2.0 - 2.0 * std::sqrt((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
  b.normalized = b.raw / bures_max();
  return b;
}

// --- trace MIN --------------------------------------------------------------

/// How the closed TMIN formula reads its ||.||_1 symbols.
enum class NormReading {
  OneNorm,    // as printed: sum of absolute values
  Euclidean,  // the 2-norm
};

struct TminIntermediates {
  Real3 x{};
  Real3 c{};
  double tmin_alpha = 0.0;
  double tmin_beta = 0.0;
  double chi_plus = 0.0;
  double chi_minus = 0.0;
};

struct TminClosed {
  double value = 0.0;
  TminIntermediates inter;
};

inline TminClosed tmin_closed(const FanoForm& f, NormReading reading = NormReading::OneNorm) {
  if (!f.canonical) {
    throw std::invalid_argument("tmin_closed: Fano form must be canonical");
  }
  TminClosed out;
  auto& in = out.inter;
  in.x = f.s;
  in.c = f.c;
  if (norm2(in.x) <= kFreeDirectionTol) {
    out.value = std::max({std::abs(in.c[0]), std::abs(in.c[1]), std::abs(in.c[2])});
    return out;
  }
  const double nx = reading == NormReading::OneNorm ? norm1(in.x) : norm2(in.x);
  const double nc = reading == NormReading::OneNorm ? norm1(in.c) : norm2(in.c);
  double sum_cx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) sum_cx += in.c[i] * in.c[i] * in.x[i] * in.x[i];
  in.tmin_alpha = nc * nc * nx * nx - sum_cx;
  const auto sq = [](double v) { return v * v; };
  // cyclic permutations <ijk> of {1,2,3}
  in.tmin_beta = sq(in.x[0]) * sq(in.c[1]) * sq(in.c[2]) + sq(in.x[1]) * sq(in.c[2]) * sq(in.c[0]) +
                 sq(in.x[2]) * sq(in.c[0]) * sq(in.c[1]);
  in.chi_plus = std::max(0.0, in.tmin_alpha + 2.0 * std::sqrt(in.tmin_beta) * nx);
  in.chi_minus = std::max(0.0, in.tmin_alpha - 2.0 * std::sqrt(in.tmin_beta) * nx);
  out.value = (std::sqrt(in.chi_plus) + std::sqrt(in.chi_minus)) / (2.0 * nx);
  return out;
}

inline TminClosed tmin_closed(const Mat4& rho, NormReading reading = NormReading::OneNorm) {
  return tmin_closed(canonicalize_fano(pauli_decompose(rho)), reading);
}

/// ||rho - Pi_n(rho)||_1 for the von Neumann measurement on A along unit vector n.
inline double measurement_disturbance(const Mat4& rho, const Real3& n) {
  const Mat2 ns = pauli::along(n);
  const Mat2 id = pauli::id();
  const Mat4 up = kron(0.5 * (id + ns), id);
  const Mat4 down = kron(0.5 * (id - ns), id);
  return trace_norm(rho - up * rho * up - down * rho * down);
}

/// Trace MIN by direct optimization over marginal-preserving measurements on A.
inline double tmin_oracle(const Mat4& rho, const SphereSearchOptions& opt = {}) {
  const FanoForm f = pauli_decompose(rho);
  const double ns = norm2(f.s);
  if (ns > kFreeDirectionTol) {
    return measurement_disturbance(rho, Real3{f.s[0] / ns, f.s[1] / ns, f.s[2] / ns});
  }
  return maximize_on_sphere([&](const Real3& n) { return measurement_disturbance(rho, n); }, opt).value;
}

// --- skew information and UIN ------------------------------------------------

/// Wigner-Yanase skew information Tr[rho R^2] - Tr[sqrt(rho) R sqrt(rho) R], given sqrt(rho).
inline double skew_information_with_sqrt(const Mat4& rho, const Mat4& sqrt_rho, const Mat4& r) {
  return (rho * r * r).trace().real() - (sqrt_rho * r * sqrt_rho * r).trace().real();
}

inline double skew_information(const Mat4& rho, const Mat4& r) {
  if (r.hermiticity_error() > kHermitianTol) {
    throw std::invalid_argument("skew_information: observable is not Hermitian");
  }
  return skew_information_with_sqrt(rho, psd_sqrt(rho), r);
}

/// Which vector steers the closed UIN formula's s' != 0 branch.
enum class UinVectorReading {
  SqrtRho,  // as printed: s'_i = Tr[sqrt(rho) (sigma_i (x) 1)]
  Bloch,    // s_i = Tr[rho (sigma_i (x) 1)], the Bloch vector of rho^A
};

struct UinClosed {
  double value = 0.0;
  Real3 steering{};
  Real33 w{};
  double w_min = 0.0;
};

inline UinClosed uin_closed_detail(const Mat4& rho, UinVectorReading reading = UinVectorReading::SqrtRho) {
  const Mat4 sq = psd_sqrt(rho);
  const auto& sig = pauli::xyz();
  const Mat2 id = pauli::id();
  std::array<Mat4, 3> local{kron(sig[0], id), kron(sig[1], id), kron(sig[2], id)};
  std::array<Mat4, 3> half{};  // sqrt(rho) (sigma_i (x) 1)
  for (std::size_t i = 0; i < 3; ++i) half[i] = sq * local[i];

  UinClosed out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      out.w[i][j] = (half[i] * half[j]).trace().real();
      out.w[j][i] = out.w[i][j];
    }
  for (std::size_t i = 0; i < 3; ++i) {
    out.steering[i] = reading == UinVectorReading::SqrtRho ? half[i].trace().real()
                                                           : (rho * local[i]).trace().real();
  }
  Matrix<3> wc;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) wc(i, j) = out.w[i][j];
  out.w_min = hermitian_eig(wc).values[0];

  const double ns = norm2(out.steering);
  const double cutoff = reading == UinVectorReading::SqrtRho ? kSteeringTol : kFreeDirectionTol;
  if (ns > cutoff) {
    out.value = 1.0 - dot(out.steering, out.w * out.steering) / (ns * ns);
  } else {
    out.value = 1.0 - out.w_min;
  }
  return out;
}

inline double uin_closed(const Mat4& rho, UinVectorReading reading = UinVectorReading::SqrtRho) {
  return uin_closed_detail(rho, reading).value;
}

/// UIN by direct optimization of skew information over R = (n.sigma) (x) 1.
inline double uin_oracle(const Mat4& rho, const SphereSearchOptions& opt = {}) {
  const Mat4 sq = psd_sqrt(rho);
  const Mat2 id = pauli::id();
  auto objective = [&](const Real3& n) {
    return skew_information_with_sqrt(rho, sq, kron(pauli::along(n), id));
  };
  const FanoForm f = pauli_decompose(rho);
  const double ns = norm2(f.s);
  if (ns > kFreeDirectionTol) {
    const Real3 n{f.s[0] / ns, f.s[1] / ns, f.s[2] / ns};
    // -n gives the same observable up to sign, hence the same skew information.
    return std::max(objective(n), objective(Real3{-n[0], -n[1], -n[2]}));
  }
  return maximize_on_sphere(objective, opt).value;
}

// --- aggregate ----------------------------------------------------------------

struct Discrepancy {
  std::string name;
  double magnitude = 0.0;
};

struct CorrelationReport {
  double concurrence = 0.0;
  double bures_raw = 0.0;
  double bures_normalized = 0.0;
  double tmin_closed = 0.0;            // one-norm reading
  double tmin_closed_euclidean = 0.0;  // 2-norm reading
  double tmin_oracle = 0.0;
  double uin_closed = 0.0;        // printed s' = Tr[sqrt(rho) sigma_i]
  double uin_closed_bloch = 0.0;  // s = Bloch vector of rho^A
  double uin_oracle = 0.0;
  std::vector<Discrepancy> discrepancy_flags;

  /// Oracle values are authoritative.
  double tmin() const { return tmin_oracle; }
  double uin() const { return uin_oracle; }
};

inline CorrelationReport full_report(const Mat4& rho, const SphereSearchOptions& opt = {}) {
  require_state(rho, "full_report");
  CorrelationReport r;
  r.concurrence = concurrence_mixed(rho);
  const auto b = bures_entanglement(r.concurrence);
  r.bures_raw = b.raw;
  r.bures_normalized = b.normalized;

  const FanoForm canon = canonicalize_fano(pauli_decompose(rho));
  r.tmin_closed = tmin_closed(canon, NormReading::OneNorm).value;
  r.tmin_closed_euclidean = tmin_closed(canon, NormReading::Euclidean).value;
  r.tmin_oracle = tmin_oracle(rho, opt);
  r.uin_closed = uin_closed(rho, UinVectorReading::SqrtRho);
  r.uin_closed_bloch = uin_closed(rho, UinVectorReading::Bloch);
  r.uin_oracle = uin_oracle(rho, opt);

  const auto flag = [&](const char* name, double closed, double oracle) {
    const double d = std::abs(closed - oracle);
    if (d > kDiscrepancyTol) r.discrepancy_flags.push_back({name, d});
  };
  flag("tmin_closed_vs_oracle", r.tmin_closed, r.tmin_oracle);
  flag("uin_closed_vs_oracle", r.uin_closed, r.uin_oracle);
  return r;
}

}  // namespace qcorr
