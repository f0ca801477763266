// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/solvers.hpp"

#include <cmath>
#include <iostream>

#include "refem/parallel.hpp"

namespace refem {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

ContrastField derive_contrast(const RefractionProfile& n0_squared, double k, const Grid& grid) {
  const double k2 = k * k;
  VectorXcd values(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) {
    const Vec3 x = grid.center(i);
    const Complex n0 = n0_squared.value(x, grid.domain());
    if (n0.imag() < -1e-12) {
      throw std::invalid_argument("derive_contrast: coefficient with negative imaginary part");
    }
    values[i] = k2 - k2 * n0;
  }
  return ContrastField{grid, std::move(values)};
}

VolumeOperator::VolumeOperator(const Grid& grid, VectorXcd multiplier, double k)
    : grid_(grid), multiplier_(std::move(multiplier)), k_(k) {
  if (multiplier_.size() != grid_.cell_count()) {
    throw std::invalid_argument("VolumeOperator: multiplier size must match the grid");
  }
  centers_.reserve(grid_.cell_count());
  for (int i = 0; i < grid_.cell_count(); ++i) centers_.push_back(grid_.center(i));
}

Complex VolumeOperator::weight(const Vec3& x, int source_cell) const {
  const Complex m = multiplier_[source_cell];
  if (m == Complex{0.0, 0.0}) return m;
  const Cell cell{centers_[source_cell], grid_.spacing(), grid_.cell_volume()};
  return cell_kernel_integral(x, cell, k_) * m;
}

VectorXcd VolumeOperator::apply(const VectorXcd& u) const {
  const int n = grid_.cell_count();
  VectorXcd out(n);
  parallel_for(n, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Complex acc{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        if (multiplier_[j] == Complex{0.0, 0.0}) continue;
        acc += weight(centers_[i], j) * u[j];
      }
      out[i] = acc;
    }
  });
  return out;
}

Complex VolumeOperator::potential(const Vec3& x, const VectorXcd& u) const {
  Complex acc{0.0, 0.0};
  for (int j = 0; j < grid_.cell_count(); ++j) {
    if (multiplier_[j] == Complex{0.0, 0.0}) continue;
    acc += weight(x, j) * u[j];
  }
  return acc;
}

MatrixXcd VolumeOperator::assemble_second_kind() const {
  const int n = grid_.cell_count();
  MatrixXcd mat(n, n);
  parallel_for(n, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      for (int j = 0; j < n; ++j) {
        mat(i, j) = weight(centers_[i], j);
      }
      mat(i, i) += 1.0;
    }
  });
  return mat;
}

SecondKindSolver::SecondKindSolver(VolumeOperator op, const SolverOptions& options)
    : op_(std::move(op)), options_(options) {
  const int n = op_.grid().cell_count();
  if (!op_.zero_multiplier() && n <= options_.dense_limit) {
    lu_.emplace(op_.assemble_second_kind());
  }
}

VectorXcd SecondKindSolver::solve(const VectorXcd& rhs, SolveReport* report) const {
  if (rhs.size() != op_.grid().cell_count()) {
    throw std::invalid_argument("SecondKindSolver: rhs size must match the grid");
  }
  if (op_.zero_multiplier()) {
    // The operator vanishes identically and the system is the identity.
    SolveReport local;
    local.method = "identity";
    local.tolerance = options_.tolerance;
    local.converged = true;
    if (report) *report = local;
    return rhs;
  }
  if (lu_) {
    SolveReport local;
    local.method = "dense-lu";
    local.factorized = true;
    local.tolerance = options_.tolerance;
    VectorXcd x = lu_->solve(rhs);
    const double rhs_norm = rhs.norm();
    local.residual =
        (rhs_norm > 0.0) ? (rhs - x - op_.apply(x)).norm() / rhs_norm : 0.0;
    local.converged = local.residual <= options_.tolerance && x.allFinite();
    if (report) *report = local;
    if (!local.converged) {
      throw SolverError("volume system: dense solve failed to reach tolerance", local);
    }
    return x;
  }
  const auto apply = [this](const VectorXcd& v) -> VectorXcd { return v + op_.apply(v); };
  return gmres(apply, rhs, options_, report);
}

BackgroundSolution::BackgroundSolution(VolumeOperator op, GridField field, SolveReport report,
                                       IncidentWave wave)
    : op_(std::move(op)), field_(std::move(field)), report_(std::move(report)),
      wave_(std::move(wave)) {}

Complex BackgroundSolution::value(const Vec3& x) const {
  return wave_.value(x) - op_.potential(x, field_.values());
}

Complex BackgroundSolution::scattered(const Vec3& x) const { return value(x) - wave_.value(x); }

BackgroundSolution solve_background(const RefractionProfile& n0_squared,
                                    const IncidentWave& wave, const Grid& grid,
                                    const SolverOptions& options) {
  if (!grid.resolves_wavelength(wave.k())) {
    std::cerr << "warning: grid spacing " << grid.max_spacing()
              << " resolves the wavelength with fewer than 10 cells\n";
  }
  ContrastField q0 = derive_contrast(n0_squared, wave.k(), grid);
  VolumeOperator op(grid, std::move(q0.values), wave.k());

  VectorXcd rhs(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) rhs[i] = wave.value(op.centers()[i]);

  SecondKindSolver solver(op, options);
  SolveReport report;
  VectorXcd u = solver.solve(rhs, &report);
  return BackgroundSolution(std::move(op), GridField(grid, std::move(u)), std::move(report),
                            wave);
}

GreensSolution::GreensSolution(VolumeOperator op, Vec3 source, GridField regular_part,
                               SolveReport report)
    : op_(std::move(op)), source_(std::move(source)), regular_(std::move(regular_part)),
      report_(std::move(report)) {}

GridField GreensSolution::field_values() const {
  const Grid& grid = regular_.grid();
  VectorXcd values(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) {
    const Vec3& x = op_.centers()[i];
    if ((x - source_).norm() == 0.0) {
      throw std::domain_error("GreensSolution: source sits on a collocation node");
    }
    values[i] = free_space_kernel(x, source_, op_.k()) + regular_[i];
  }
  return GridField(grid, std::move(values));
}

Complex GreensSolution::regular(const Vec3& x) const {
  // regular(x) = -sum_j q_j [ \int_cell g(x,.) g(., y) + w(x, cell_j) phi_j ]
  const Grid& grid = regular_.grid();
  Complex acc{0.0, 0.0};
  for (int j = 0; j < grid.cell_count(); ++j) {
    const Complex q = op_.multiplier()[j];
    if (q == Complex{0.0, 0.0}) continue;
    const Cell cell{op_.centers()[j], grid.spacing(), grid.cell_volume()};
    acc += q * double_kernel_cell_integral(x, source_, cell, op_.k());
    acc += op_.weight(x, j) * regular_[j];
  }
  return -acc;
}

Complex GreensSolution::value(const Vec3& x) const {
  if ((x - source_).norm() == 0.0) {
    throw std::domain_error("GreensSolution: evaluation at the source point");
  }
  return free_space_kernel(x, source_, op_.k()) + regular(x);
}

GreensSolution greens_function(const RefractionProfile& n0_squared, double k, const Vec3& source,
                               const Grid& grid, const SolverOptions& options) {
  if (!grid.resolves_wavelength(k)) {
    std::cerr << "warning: grid spacing " << grid.max_spacing()
              << " resolves the wavelength with fewer than 10 cells\n";
  }
  ContrastField q0 = derive_contrast(n0_squared, k, grid);
  VolumeOperator op(grid, std::move(q0.values), k);

  // Right-hand side of the regular-part equation:
  //   phi + W phi = -sum_j q_j \int_cell g(x,.) g(., y).
  const int n = grid.cell_count();
  VectorXcd rhs = VectorXcd::Zero(n);
  if (!op.zero_multiplier()) {
    parallel_for(n, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
          const Complex q = op.multiplier()[j];
          if (q == Complex{0.0, 0.0}) continue;
          const Cell cell{op.centers()[j], grid.spacing(), grid.cell_volume()};
          acc += q * double_kernel_cell_integral(op.centers()[i], source, cell, k);
        }
        rhs[i] = -acc;
      }
    });
  }

  SecondKindSolver solver(op, options);
  SolveReport report;
  VectorXcd phi = solver.solve(rhs, &report);
  return GreensSolution(std::move(op), source, GridField(grid, std::move(phi)),
                        std::move(report));
}

EffectiveSolution::EffectiveSolution(VolumeOperator op, GridField field, SolveReport report,
                                     IncidentWave wave)
    : op_(std::move(op)), field_(std::move(field)), report_(std::move(report)),
      wave_(std::move(wave)) {}

Complex EffectiveSolution::value(const Vec3& x) const {
  return wave_.value(x) - op_.potential(x, field_.values());
}

EffectiveSolution solve_effective(const BackgroundSolution& background,
                                  const RefractionProfile& n0_squared,
                                  const DensityProfile& density,
                                  const RefractionProfile& nu_squared, double k, const Grid& grid,
                                  EffectiveMode mode, const SolverOptions& options) {
  if (background.field().grid() != grid) {
    throw std::invalid_argument("solve_effective: background grid does not match");
  }
  const int n = grid.cell_count();
  const double k2 = k * k;

  ContrastField q0 = derive_contrast(n0_squared, k, grid);
  VectorXcd coupling(n);  // k^2 N nu^2 per cell
  for (int i = 0; i < n; ++i) {
    const Vec3 x = grid.center(i);
    coupling[i] = k2 * density.value(x, grid.domain()) * nu_squared.value(x, grid.domain());
  }

  // Total-contrast operator; also the evaluation representation for both
  // modes (for the direct mode the solved coefficients agree with it up to
  // solver tolerance).
  VectorXcd q_total = q0.values - coupling;
  VolumeOperator op_total(grid, q_total, k);

  const IncidentWave& wave = background.wave();
  if (mode == EffectiveMode::SingleKernel) {
    VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = wave.value(op_total.centers()[i]);
    SecondKindSolver solver(op_total, options);
    SolveReport report;
    VectorXcd u = solver.solve(rhs, &report);
    return EffectiveSolution(std::move(op_total), GridField(grid, std::move(u)),
                             std::move(report), wave);
  }

  // Direct mode: build the discrete Green's operator column by column from
  // the background factorization, then solve the coupling system
  // (I - k^2 Gamma diag(N nu^2)) u = u0. Desk-scale cross-check only.
  if (n > options.dense_limit) {
    throw std::invalid_argument("solve_effective: direct mode is limited to dense-size grids");
  }
  VolumeOperator op_plain(grid, VectorXcd::Ones(n), k);  // pure g-quadrature weights
  VolumeOperator op_q0(grid, q0.values, k);
  SecondKindSolver background_solver(op_q0, options);

  MatrixXcd gamma(n, n);
  {
    MatrixXcd w_plain(n, n);
    parallel_for(n, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        for (int j = 0; j < n; ++j) w_plain(i, j) = op_plain.weight(op_plain.centers()[i], j);
      }
    });
    for (int j = 0; j < n; ++j) {
      gamma.col(j) = background_solver.solve(w_plain.col(j));
    }
  }

  VectorXcd nnu = coupling / k2;
  MatrixXcd system = MatrixXcd::Identity(n, n) - k2 * gamma * nnu.asDiagonal();
  SolveReport report;
  VectorXcd u = solve_dense(system, background.field().values(), options, &report);
  return EffectiveSolution(std::move(op_total), GridField(grid, std::move(u)), std::move(report),
                           wave);
}

double helmholtz_residual(const GridField& field, const RefractionProfile& n_squared, double k) {
  const Grid& grid = field.grid();
  const auto cells = grid.cells_per_axis();
  for (int axis = 0; axis < 3; ++axis) {
    if (cells[axis] < 5) {
      throw std::invalid_argument("helmholtz_residual: need at least 5 cells per axis");
    }
  }
  const Vec3 h = grid.spacing();
  const double k2 = k * k;

  double num = 0.0;
  double den = 0.0;
  for (int iz = 1; iz < cells[2] - 1; ++iz) {
    for (int iy = 1; iy < cells[1] - 1; ++iy) {
      for (int ix = 1; ix < cells[0] - 1; ++ix) {
        const int idx = grid.index(ix, iy, iz);
        const Complex u = field[idx];
        Complex lap{0.0, 0.0};
        lap += (field[grid.index(ix + 1, iy, iz)] - 2.0 * u + field[grid.index(ix - 1, iy, iz)]) /
               (h[0] * h[0]);
        lap += (field[grid.index(ix, iy + 1, iz)] - 2.0 * u + field[grid.index(ix, iy - 1, iz)]) /
               (h[1] * h[1]);
        lap += (field[grid.index(ix, iy, iz + 1)] - 2.0 * u + field[grid.index(ix, iy, iz - 1)]) /
               (h[2] * h[2]);
        const Complex mass = k2 * n_squared.value(grid.center(idx), grid.domain()) * u;
        num += std::norm(lap + mass);
        den += std::norm(mass);
      }
    }
  }
  if (den <= 0.0) {
    throw std::invalid_argument("helmholtz_residual: zero field, nothing to normalize by");
  }
  return std::sqrt(num / den);
}

double weighted_sup_norm(std::span<const GreensSample> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("weighted_sup_norm: empty sample set");
  }
  double sup = 0.0;
  for (const auto& s : samples) {
    const double r = (s.x - s.y).norm();
    if (r == 0.0) {
      throw std::invalid_argument("weighted_sup_norm: coincident pair in sample set");
    }
    sup = std::max(sup, r * std::abs(s.value));
  }
  return sup;
}

}  // namespace refem
