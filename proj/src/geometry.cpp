// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace refem {

Domain::Domain(const Vec3& lo, const Vec3& hi) : lo_(lo), hi_(hi) {
  for (int i = 0; i < 3; ++i) {
    if (!(lo_[i] < hi_[i])) {
      throw std::invalid_argument("Domain: lo must be strictly below hi on every axis");
    }
  }
}

bool Domain::contains(const Vec3& x) const {
  for (int i = 0; i < 3; ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  }
  return true;
}

bool Domain::contains_ball(const Vec3& c, double a) const {
  const double tol = 1e-12 * extent().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (c[i] - a < lo_[i] - tol || c[i] + a > hi_[i] + tol) return false;
  }
  return true;
}

Grid::Grid(const Domain& domain, const std::array<int, 3>& cells_per_axis)
    : domain_(domain), cells_(cells_per_axis) {
  for (int i = 0; i < 3; ++i) {
    if (cells_[i] <= 0) throw std::invalid_argument("Grid: cell counts must be positive");
    spacing_[i] = domain_.extent()[i] / cells_[i];
  }
}

std::array<int, 3> Grid::coords(int idx) const {
  const int ix = idx % cells_[0];
  const int iy = (idx / cells_[0]) % cells_[1];
  const int iz = idx / (cells_[0] * cells_[1]);
  return {ix, iy, iz};
}

Vec3 Grid::center(int idx) const {
  const auto c = coords(idx);
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = domain_.lo()[i] + (c[i] + 0.5) * spacing_[i];
  return x;
}

Cell Grid::cell(int idx) const { return Cell{center(idx), spacing_, cell_volume()}; }

bool Grid::resolves_wavelength(double k, double cells_per_wavelength) const {
  if (k <= 0.0) return true;
  const double wavelength = 2.0 * M_PI / k;
  return max_spacing() <= wavelength / cells_per_wavelength;
}

bool Grid::operator==(const Grid& other) const {
  return cells_ == other.cells_ && domain_.lo() == other.domain_.lo() &&
         domain_.hi() == other.domain_.hi();
}

GridField::GridField(const Grid& grid, Eigen::VectorXcd values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count()) {
    throw std::invalid_argument("GridField: value count must equal cell count");
  }
  if (!values_.allFinite()) {
    throw std::invalid_argument("GridField: values must be finite");
  }
}

GridField::GridField(const Grid& grid)
    : grid_(grid), values_(Eigen::VectorXcd::Zero(grid.cell_count())) {}

IncidentWave::IncidentWave(double k, const Vec3& alpha, Complex amplitude)
    : k_(k), alpha_(alpha), amplitude_(amplitude) {
  if (k_ <= 0.0) throw std::invalid_argument("IncidentWave: k must be positive");
  if (std::abs(alpha_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("IncidentWave: alpha must be a unit vector");
  }
}

Complex IncidentWave::value(const Vec3& x) const {
  return amplitude_ * std::exp(kImaginary * (k_ * alpha_.dot(x)));
}

}  // namespace refem
