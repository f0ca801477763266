// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "refem/solvers.hpp"

namespace refem {

/// Placement or design constraint violation; carries the offending region.
class RealizabilityError : public std::runtime_error {
 public:
  RealizabilityError(const std::string& what, std::string region)
      : std::runtime_error(what + " [region: " + region + "]"), region_(std::move(region)) {}
  const std::string& region() const { return region_; }

 private:
  std::string region_;
};

/// Simple-cubic packing bound on the center density: V_a^{-1} per (2a)^3.
inline constexpr double kPackingBound = M_PI / 6.0;

/// Non-intersecting equal-radius balls embedded in D with per-ball
/// constant coefficients nu^2(x_m).
struct BallConfig {
  double a = 0.0;
  std::vector<Vec3> centers;
  std::vector<Complex> coeffs;
  std::uint64_t seed = 0;

  int count() const { return static_cast<int>(centers.size()); }
  double single_ball_volume() const { return ball_volume(a); }
  /// Smallest pairwise center distance; +inf for fewer than two balls.
  double min_center_distance() const;
  /// Checks the 2a separation and containment invariants.
  void validate(const Domain& domain) const;
};

/// Deterministic density-driven placement. D is partitioned into macro
/// cells of side about 8a; each macro cell receives a stochastically
/// rounded expected count N(c) H^3 / V_a of centers on a jittered
/// sub-lattice whose pitch keeps the 2a separation and the containment of
/// whole balls in D by construction. Identical inputs give identical
/// output.
BallConfig place_balls(const DensityProfile& density, const RefractionProfile& nu_squared,
                       double a, const Domain& domain, std::uint64_t seed);

/// Number of centers inside the region.
int count_in_region(const BallConfig& config, const Region& region);

/// V_a * sum_m f(x_m); tends to the density-weighted integral of f as the
/// radius shrinks.
Complex riemann_sum(const BallConfig& config, const std::function<Complex(const Vec3&)>& f);

struct VolumeFraction {
  double fraction = 0.0;       // V_a M / |D|
  bool exceeds_domain = false; // set when the embedded volume exceeds |D|
};

VolumeFraction total_volume_fraction(const BallConfig& config, const Domain& domain);

/// Background Green's function evaluator used by the many-ball system.
class GreensEvaluator {
 public:
  virtual ~GreensEvaluator() = default;
  virtual Complex value(const Vec3& x, const Vec3& y) const = 0;
  /// G - g; finite at coincident arguments.
  virtual Complex regular(const Vec3& x, const Vec3& y) const = 0;
};

/// Free-space background: G = g exactly.
class FreeSpaceGreens : public GreensEvaluator {
 public:
  explicit FreeSpaceGreens(double k) : k_(k) {}
  Complex value(const Vec3& x, const Vec3& y) const override {
    return free_space_kernel(x, y, k_);
  }
  Complex regular(const Vec3&, const Vec3&) const override { return Complex{0.0, 0.0}; }
  double k() const { return k_; }

 private:
  double k_;
};

/// Collocation-based Green's function of an inhomogeneous background with
/// per-source caching. prepare() solves all sources up front so that later
/// lookups are read-only and thread-safe.
class CollocationGreens : public GreensEvaluator {
 public:
  CollocationGreens(const RefractionProfile& n0_squared, double k, const Grid& grid,
                    const SolverOptions& options = {});

  void prepare(std::span<const Vec3> sources);
  Complex value(const Vec3& x, const Vec3& y) const override;
  Complex regular(const Vec3& x, const Vec3& y) const override;

 private:
  const GreensSolution& solution_for(const Vec3& y) const;

  RefractionProfile n0_squared_;
  double k_;
  Grid grid_;
  SolverOptions options_;
  mutable std::vector<std::pair<Vec3, GreensSolution>> cache_;
};

struct FoldyOptions {
  /// Adds V_a (G - g)(x_m, x_m) to the self term.
  bool regular_diagonal_correction = false;
  int dense_limit = 4096;
};

/// Dense many-ball coupling system: entry (m, j) is
/// delta_mj - k^2 n_j^2 Gamma_mj with Gamma_mj the integral of G(x_m, .)
/// over ball j. Above the dense limit the matrix stays implicit and the
/// entries are generated on demand.
class FoldySystem {
 public:
  using GammaFn = std::function<Complex(const BallConfig&, int, int)>;

  FoldySystem(BallConfig config, Eigen::VectorXcd rhs, double k, FoldyOptions options,
              GammaFn gamma);

  const BallConfig& config() const { return config_; }
  const Eigen::VectorXcd& rhs() const { return rhs_; }
  double k() const { return k_; }
  int size() const { return config_.count(); }
  bool dense() const { return matrix_.has_value(); }
  const Eigen::MatrixXcd& matrix() const;

  /// System entry delta_mj - k^2 n_j^2 Gamma_mj.
  Complex entry(int m, int j) const;
  /// Row-parallel matrix-vector product, dense or implicit.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& u) const;

 private:
  Complex entry_impl(int m, int j) const;

  BallConfig config_;
  Eigen::VectorXcd rhs_;
  double k_;
  FoldyOptions options_;
  GammaFn gamma_;
  std::optional<Eigen::MatrixXcd> matrix_;
};

/// Builds the coupling system: off-diagonal ball integrals use the exact
/// free-space ball formula below 4a separation and the one-point value
/// V_a G(x_m, x_j) beyond it; the self term is the exact self integral of
/// g over one ball. The u0 and G evaluators must outlive the call.
FoldySystem assemble_foldy(const BallConfig& config, const FieldEvaluator& u0,
                           const GreensEvaluator& greens, double k,
                           const FoldyOptions& options = {});

/// Field values U(x_m) at the ball centers.
Eigen::VectorXcd solve_discrete(const FoldySystem& system, const SolverOptions& options = {},
                                SolveReport* report = nullptr);

/// U(x) away from the centers: u0(x) plus one ball integral per scatterer,
/// with the exact two-branch Newtonian split for targets within 3a of a
/// ball (including interior points).
Complex evaluate_discrete_field(const BallConfig& config, const Eigen::VectorXcd& solution,
                                const FieldEvaluator& u0, const GreensEvaluator& greens,
                                double k, const Vec3& x);

}  // namespace refem
