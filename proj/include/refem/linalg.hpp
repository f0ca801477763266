// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

namespace refem {

struct SolverOptions {
  double tolerance = 1e-10;   // relative residual
  int max_iterations = 500;   // GMRES cap (restart-free)
  int dense_limit = 4096;     // direct factorization up to this many unknowns
};

struct SolveReport {
  std::string method;  // "dense-lu" or "gmres"
  bool factorized = false;
  int iterations = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  double condition_estimate = 0.0;  // |diag U| max/min ratio for dense solves
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

/// Restart-free GMRES with Givens rotations for a well-conditioned map.
/// Throws SolverError when the relative residual fails to reach the
/// tolerance within max_iterations.
Eigen::VectorXcd gmres(const LinearMap& apply, const Eigen::VectorXcd& rhs,
                       const SolverOptions& options, SolveReport* report = nullptr);

/// Dense partial-pivoting LU solve with a post-hoc residual check against
/// the original matrix. Throws SolverError on a residual above tolerance
/// (near-singular systems), reporting a diagonal-ratio condition estimate.
Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& matrix, const Eigen::VectorXcd& rhs,
                             const SolverOptions& options, SolveReport* report = nullptr);

}  // namespace refem
