#pragma once

// Global maximization of a function of a unit 3-vector: Fibonacci-lattice
// scan followed by Nelder-Mead refinement in spherical angles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "qcorr/fano.hpp"

namespace qcorr {

struct SphereSearchOptions {
  std::size_t lattice_points = 2000;
  int max_iterations = 200;
  double tolerance = 1e-10;
};

struct SphereMaximum {
  double value = 0.0;
  Real3 direction{0.0, 0.0, 1.0};
};

inline Real3 unit_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Points i = 0..n-1 of the golden-angle spiral, evenly covering the sphere.
inline Real3 fibonacci_point(std::size_t i, std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * (static_cast<double>(i) + 0.5)) / static_cast<double>(n);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(i);
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

/// Nelder-Mead maximization of f(theta, phi) from `start`.
template <class F>
std::array<double, 3> nelder_mead_2d(F&& f, std::array<double, 2> start, double step, int max_iterations,
                                     double tolerance) {
  struct Vertex {
    std::array<double, 2> x;
    double v;  // negated objective, minimized
  };
  auto eval = [&](const std::array<double, 2>& x) { return Vertex{x, -f(x[0], x[1])}; };
  std::array<Vertex, 3> s{eval(start), eval({start[0] + step, start[1]}), eval({start[0], start[1] + step})};
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };

  for (int it = 0; it < max_iterations; ++it) {
    std::sort(s.begin(), s.end(), by_value);
    if (std::abs(s[2].v - s[0].v) <= tolerance) break;
    const std::array<double, 2> centroid{(s[0].x[0] + s[1].x[0]) / 2.0, (s[0].x[1] + s[1].x[1]) / 2.0};
    auto along = [&](double t) {
      return std::array<double, 2>{centroid[0] + t * (s[2].x[0] - centroid[0]),
                                   centroid[1] + t * (s[2].x[1] - centroid[1])};
    };
    const Vertex reflected = eval(along(-1.0));
    if (reflected.v < s[0].v) {
      const Vertex expanded = eval(along(-2.0));
      s[2] = expanded.v < reflected.v ? expanded : reflected;
    } else if (reflected.v < s[1].v) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.v < s[2].v;
      const Vertex contracted = eval(along(outside ? -0.5 : 0.5));
      if (contracted.v < std::min(reflected.v, s[2].v)) {
        s[2] = contracted;
      } else {
        for (std::size_t k = 1; k < 3; ++k) {
          s[k] = eval({s[0].x[0] + 0.5 * (s[k].x[0] - s[0].x[0]), s[0].x[1] + 0.5 * (s[k].x[1] - s[0].x[1])});
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return {s[0].x[0], s[0].x[1], -s[0].v};
}

/// max over unit n of f(n).
template <class F>
SphereMaximum maximize_on_sphere(F&& f, const SphereSearchOptions& opt = {}) {
  SphereMaximum best{-std::numeric_limits<double>::infinity(), {0.0, 0.0, 1.0}};
  for (std::size_t i = 0; i < opt.lattice_points; ++i) {
    const Real3 n = fibonacci_point(i, opt.lattice_points);
    const double v = f(n);
    if (v > best.value) best = {v, n};
  }
  const double theta0 = std::acos(std::clamp(best.direction[2], -1.0, 1.0));
  const double phi0 = std::atan2(best.direction[1], best.direction[0]);
  // Lattice spacing is about sqrt(4 pi / n).
  const double step = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(opt.lattice_points));
  const auto refined = nelder_mead_2d([&](double th, double ph) { return f(unit_from_angles(th, ph)); },
                                      {theta0, phi0}, step, opt.max_iterations, opt.tolerance);
  if (refined[2] > best.value) best = {refined[2], unit_from_angles(refined[0], refined[1])};
  return best;
}

}  // namespace qcorr
