// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "refem/kernels.hpp"
#include "refem/linalg.hpp"
#include "refem/profile.hpp"

namespace refem {

/// Background contrast q0(x) = k^2 - k^2 n0^2(x) sampled at cell centers.
/// Vanishes wherever the coefficient equals the exterior value 1.
struct ContrastField {
  Grid grid;
  Eigen::VectorXcd values;

  bool all_zero() const { return values.isZero(0.0); }
};

ContrastField derive_contrast(const RefractionProfile& n0_squared, double k, const Grid& grid);

/// Collocated volume potential u -> integral of g(x,.) m(.) u(.) over D
/// with the singularity-corrected cell weights. Linear, pure, and safe to
/// apply from several threads.
class VolumeOperator {
 public:
  VolumeOperator(const Grid& grid, Eigen::VectorXcd multiplier, double k);

  const Grid& grid() const { return grid_; }
  double k() const { return k_; }
  const Eigen::VectorXcd& multiplier() const { return multiplier_; }
  bool zero_multiplier() const { return multiplier_.isZero(0.0); }

  /// Quadrature weight times multiplier for one source cell.
  Complex weight(const Vec3& x, int source_cell) const;
  /// Row-parallel dense apply at the collocation nodes.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& u) const;
  /// Potential at an arbitrary target point.
  Complex potential(const Vec3& x, const Eigen::VectorXcd& u) const;
  /// I + W as a dense matrix.
  Eigen::MatrixXcd assemble_second_kind() const;

  const std::vector<Vec3>& centers() const { return centers_; }

 private:
  Grid grid_;
  Eigen::VectorXcd multiplier_;
  double k_;
  std::vector<Vec3> centers_;
};

/// Solver context for (I + W) u = rhs, reusable across right-hand sides.
/// Direct dense factorization up to options.dense_limit unknowns,
/// restart-free GMRES above it.
class SecondKindSolver {
 public:
  SecondKindSolver(VolumeOperator op, const SolverOptions& options = {});

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs, SolveReport* report = nullptr) const;
  const VolumeOperator& op() const { return op_; }
  const SolverOptions& options() const { return options_; }

 private:
  VolumeOperator op_;
  SolverOptions options_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;
};

/// Point evaluator of a scalar field.
class FieldEvaluator {
 public:
  virtual ~FieldEvaluator() = default;
  virtual Complex value(const Vec3& x) const = 0;
};

class PlaneWaveField : public FieldEvaluator {
 public:
  explicit PlaneWaveField(const IncidentWave& wave) : wave_(wave) {}
  Complex value(const Vec3& x) const override { return wave_.value(x); }

 private:
  IncidentWave wave_;
};

/// Total background field u0 solved from the volume-integral form
/// u0 = incident - ∫ g q0 u0; the outgoing kernel carries the radiation
/// behavior of the scattered part.
class BackgroundSolution : public FieldEvaluator {
 public:
  BackgroundSolution(VolumeOperator op, GridField field, SolveReport report, IncidentWave wave);

  const GridField& field() const { return field_; }
  const SolveReport& report() const { return report_; }
  const IncidentWave& wave() const { return wave_; }
  const VolumeOperator& op() const { return op_; }

  /// Integral-representation evaluation at any point.
  Complex value(const Vec3& x) const override;
  /// Scattered part u0 - incident.
  Complex scattered(const Vec3& x) const;

 private:
  VolumeOperator op_;
  GridField field_;
  SolveReport report_;
  IncidentWave wave_;
};

BackgroundSolution solve_background(const RefractionProfile& n0_squared,
                                    const IncidentWave& wave, const Grid& grid,
                                    const SolverOptions& options = {});

/// Background Green's function for one source point, solved for the
/// bounded regular part G - g so that sources may sit on collocation
/// nodes. The homogeneous background reproduces g exactly.
class GreensSolution {
 public:
  GreensSolution(VolumeOperator op, Vec3 source, GridField regular_part, SolveReport report);

  const Vec3& source() const { return source_; }
  const SolveReport& report() const { return report_; }
  /// G - g at the cell centers; finite everywhere.
  const GridField& regular_field() const { return regular_; }
  /// G(., source) at the cell centers; throws std::domain_error when the
  /// source coincides with a center.
  GridField field_values() const;

  /// G(x, source); throws std::domain_error at x == source.
  Complex value(const Vec3& x) const;
  /// G(x, source) - g(x, source); finite at x == source.
  Complex regular(const Vec3& x) const;

 private:
  VolumeOperator op_;
  Vec3 source_;
  GridField regular_;
  SolveReport report_;
};

GreensSolution greens_function(const RefractionProfile& n0_squared, double k, const Vec3& source,
                               const Grid& grid, const SolverOptions& options = {});

enum class EffectiveMode {
  SingleKernel,  // one solve with total contrast q0 - k^2 N nu^2
  DirectGreens,  // two-stage: discrete Green's operator, then the coupling solve
};

/// Self-consistent effective field u_e created by a density N of small
/// scatterers with coefficient nu^2 on a background n0^2.
class EffectiveSolution : public FieldEvaluator {
 public:
  EffectiveSolution(VolumeOperator op, GridField field, SolveReport report, IncidentWave wave);

  const GridField& field() const { return field_; }
  const SolveReport& report() const { return report_; }
  const VolumeOperator& op() const { return op_; }

  Complex value(const Vec3& x) const override;

 private:
  VolumeOperator op_;  // total-contrast representation, used for evaluation
  GridField field_;
  SolveReport report_;
  IncidentWave wave_;
};

EffectiveSolution solve_effective(const BackgroundSolution& background,
                                  const RefractionProfile& n0_squared,
                                  const DensityProfile& density,
                                  const RefractionProfile& nu_squared, double k, const Grid& grid,
                                  EffectiveMode mode = EffectiveMode::SingleKernel,
                                  const SolverOptions& options = {});

/// Relative interior residual of (lap + k^2 n^2) field, measured with the
/// 7-point finite-difference Laplacian and normalized by ||k^2 n^2 field||.
/// One boundary cell layer is excluded.
double helmholtz_residual(const GridField& field, const RefractionProfile& n_squared, double k);

struct GreensSample {
  Vec3 x;
  Vec3 y;
  Complex value;
};

/// max |x-y| |G(x,y)| over the samples; boundedness diagnostic for the
/// weighted kernel norm. Throws std::invalid_argument on an empty set.
double weighted_sup_norm(std::span<const GreensSample> samples);

}  // namespace refem
