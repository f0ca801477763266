// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace refem {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

// (e^{ikd} - 1)/d, stable for small kd; limit ik at d -> 0.
Complex expm1_ik_over_r(double d, double k) {
  if (d == 0.0) return Complex{0.0, k};
  const double phase = k * d;
  const double s = std::sin(0.5 * phase);
  // cos(t)-1 = -2 sin^2(t/2) avoids cancellation.
  return Complex{-2.0 * s * s, std::sin(phase)} / d;
}

}  // namespace

double ball_volume(double a) { return kFourPi / 3.0 * a * a * a; }

Complex free_space_kernel(const Vec3& x, const Vec3& y, double k) {
  if (k < 0.0) throw std::invalid_argument("free_space_kernel: k must be nonnegative");
  const double r = (x - y).norm();
  if (r == 0.0) throw std::domain_error("free_space_kernel: coincident points");
  return std::exp(Complex{0.0, k * r}) / (kFourPi * r);
}

double ball_potential(const Vec3& x, const Vec3& center, double a) {
  if (a <= 0.0) throw std::invalid_argument("ball_potential: radius must be positive");
  const double d = (x - center).norm();
  if (d >= a) return ball_volume(a) / d;
  return 2.0 * M_PI * (a * a - d * d / 3.0);
}

Complex ball_self_integral(double a, double k) {
  if (a <= 0.0) throw std::invalid_argument("ball_self_integral: radius must be positive");
  if (k < 0.0) throw std::invalid_argument("ball_self_integral: k must be nonnegative");
  const double w = k * a;
  if (w < 0.5) {
    // a^2 sum_{m>=0} (m+1)/(m+2)! (iw)^m; the closed form cancels
    // catastrophically for small w.
    const Complex iw{0.0, w};
    Complex power{1.0, 0.0};
    Complex sum{0.0, 0.0};
    double coeff = 0.5;  // (m+1)/(m+2)! at m = 0
    for (int m = 0;; ++m) {
      const Complex term = coeff * power;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      power *= iw;
      coeff *= static_cast<double>(m + 2) / static_cast<double>((m + 1) * (m + 3));
      if (m > 40) break;
    }
    return a * a * sum;
  }
  const Complex eika = std::exp(Complex{0.0, w});
  return (eika * Complex{1.0, -w} - 1.0) / (k * k);
}

Complex ball_kernel_integral(double dist, double a, double k) {
  if (a <= 0.0) throw std::invalid_argument("ball_kernel_integral: radius must be positive");
  if (dist < a) throw std::domain_error("ball_kernel_integral: target inside the ball");
  if (k < 0.0) throw std::invalid_argument("ball_kernel_integral: k must be nonnegative");
  const double w = k * a;
  double radial;  // (sin w - w cos w)/k^3, scaled as a^3 * series in w
  if (w < 0.5) {
    // a^3 sum_{j>=1} (-1)^{j+1} (2j)/(2j+1)! w^{2j-2} = a^3 (1/3 - w^2/30 + ...)
    double term = 1.0 / 3.0;
    double sum = 0.0;
    const double w2 = w * w;
    for (int j = 1;; ++j) {
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      term *= -w2 * (2.0 * j + 2.0) / ((2.0 * j) * (2.0 * j + 2.0) * (2.0 * j + 3.0));
      if (j > 40) break;
    }
    radial = a * a * a * sum;
  } else {
    radial = (std::sin(w) - w * std::cos(w)) / (k * k * k);
  }
  return std::exp(Complex{0.0, k * dist}) * radial / dist;
}

Complex cell_kernel_integral(const Vec3& x, const Cell& cell, double k) {
  if (cell.volume <= 0.0) throw std::invalid_argument("cell_kernel_integral: empty cell");
  const double a_eq = std::cbrt(3.0 * cell.volume / kFourPi);
  const double d = (x - cell.center).norm();
  if (d < 1e-14 * a_eq) return ball_self_integral(a_eq, k);
  if (d < a_eq) {
    const double newtonian = ball_potential(x, cell.center, a_eq) / kFourPi;
    return newtonian + expm1_ik_over_r(d, k) / kFourPi * cell.volume;
  }
  return free_space_kernel(x, cell.center, k) * cell.volume;
}

Complex double_kernel_cell_integral(const Vec3& x, const Vec3& y, const Cell& cell, double k) {
  if (cell.volume <= 0.0) throw std::invalid_argument("double_kernel_cell_integral: empty cell");
  const double a_eq = std::cbrt(3.0 * cell.volume / kFourPi);
  const double dx = (x - cell.center).norm();
  const double dy = (y - cell.center).norm();
  const bool near_x = dx < a_eq;
  const bool near_y = dy < a_eq;
  if (!near_x && !near_y) {
    return free_space_kernel(x, cell.center, k) * free_space_kernel(cell.center, y, k) *
           cell.volume;
  }
  if (near_x && !near_y) {
    return free_space_kernel(cell.center, y, k) * cell_kernel_integral(x, cell, k);
  }
  if (!near_x && near_y) {
    return free_space_kernel(x, cell.center, k) * cell_kernel_integral(y, cell, k);
  }
  // Both points inside the equivalent ball of the same cell.
  const double dxy = (x - y).norm();
  if (dxy < 0.25 * a_eq) {
    // Nearly coincident: radial closed form of the squared kernel over the
    // equivalent ball, (1/4pi) (e^{2ika}-1)/(2ik) with limit a/4pi.
    const double kappa = 2.0 * k;
    const double t = kappa * a_eq;
    if (t < 1e-9) return Complex{a_eq, 0.5 * kappa * a_eq * a_eq} / kFourPi;
    const double half = std::sin(0.5 * t);
    return Complex{std::sin(t), 2.0 * half * half} / (kappa * kFourPi);
  }
  // Keep the stronger singularity under the corrected weight and sample the
  // other factor at that point.
  if (dx <= dy) {
    return free_space_kernel(x, y, k) * cell_kernel_integral(x, cell, k);
  }
  return free_space_kernel(x, y, k) * cell_kernel_integral(y, cell, k);
}

}  // namespace refem
