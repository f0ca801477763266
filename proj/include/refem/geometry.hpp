// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>

namespace refem {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kImaginary{0.0, 1.0};

/// Axis-aligned box design region D. Everything outside the box is the
/// exterior medium (refraction coefficient 1).
class Domain {
 public:
  Domain(const Vec3& lo, const Vec3& hi);

  const Vec3& lo() const { return lo_; }
  const Vec3& hi() const { return hi_; }
  Vec3 extent() const { return hi_ - lo_; }
  Vec3 center() const { return 0.5 * (lo_ + hi_); }
  double volume() const { return extent().prod(); }

  bool contains(const Vec3& x) const;
  /// True when the closed ball of radius a about c lies inside the box.
  bool contains_ball(const Vec3& c, double a) const;

 private:
  Vec3 lo_;
  Vec3 hi_;
};

struct Cell {
  Vec3 center;
  Vec3 size;
  double volume;
};

/// Regular cell grid tiling a Domain exactly. Cell centers are the
/// collocation nodes for all volume quadratures. Linear indices run with
/// x fastest, z slowest.
class Grid {
 public:
  Grid(const Domain& domain, const std::array<int, 3>& cells_per_axis);

  const Domain& domain() const { return domain_; }
  const std::array<int, 3>& cells_per_axis() const { return cells_; }
  int cell_count() const { return cells_[0] * cells_[1] * cells_[2]; }
  const Vec3& spacing() const { return spacing_; }
  double max_spacing() const { return spacing_.maxCoeff(); }
  double cell_volume() const { return spacing_.prod(); }

  int index(int ix, int iy, int iz) const {
    return ix + cells_[0] * (iy + cells_[1] * iz);
  }
  std::array<int, 3> coords(int idx) const;
  Vec3 center(int idx) const;
  Cell cell(int idx) const;

  /// True when the spacing resolves the wavelength 2*pi/k with at least
  /// `cells_per_wavelength` cells along every axis.
  bool resolves_wavelength(double k, double cells_per_wavelength = 10.0) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  Domain domain_;
  std::array<int, 3> cells_;
  Vec3 spacing_;
};

/// Complex field sampled at the cell centers of a Grid.
class GridField {
 public:
  GridField(const Grid& grid, Eigen::VectorXcd values);
  /// Zero field on the grid.
  explicit GridField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }
  Complex operator[](int idx) const { return values_[idx]; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Grid grid_;
  Eigen::VectorXcd values_;
};

/// Incident plane wave amplitude * e^{i k alpha.x} with unit direction
/// alpha and wavenumber k > 0.
class IncidentWave {
 public:
  IncidentWave(double k, const Vec3& alpha, Complex amplitude = Complex{1.0, 0.0});

  double k() const { return k_; }
  const Vec3& alpha() const { return alpha_; }
  Complex amplitude() const { return amplitude_; }
  Complex value(const Vec3& x) const;

 private:
  double k_;
  Vec3 alpha_;
  Complex amplitude_;
};

}  // namespace refem
