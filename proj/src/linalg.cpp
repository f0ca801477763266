// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/linalg.hpp"

#include <cmath>

namespace refem {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Complexd = std::complex<double>;

VectorXcd gmres(const LinearMap& apply, const VectorXcd& rhs, const SolverOptions& options,
                SolveReport* report) {
  SolveReport local;
  local.method = "gmres";
  local.tolerance = options.tolerance;

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    local.converged = true;
    if (report) *report = local;
    return VectorXcd::Zero(rhs.size());
  }

  const int n = static_cast<int>(rhs.size());
  const int max_iter = std::min(options.max_iterations, n);

  // Arnoldi basis, Hessenberg column storage, and the Givens-rotated
  // right-hand side of the least-squares problem.
  std::vector<VectorXcd> basis;
  basis.reserve(max_iter + 1);
  MatrixXcd hess = MatrixXcd::Zero(max_iter + 1, max_iter);
  VectorXcd g = VectorXcd::Zero(max_iter + 1);
  std::vector<Complexd> cs(max_iter), sn(max_iter);

  basis.push_back(rhs / rhs_norm);
  g[0] = rhs_norm;

  int iters = 0;
  for (int j = 0; j < max_iter; ++j) {
    VectorXcd w = apply(basis[j]);
    for (int i = 0; i <= j; ++i) {
      hess(i, j) = basis[i].dot(w);  // conjugated dot
      w -= hess(i, j) * basis[i];
    }
    const double h_sub = w.norm();
    hess(j + 1, j) = h_sub;

    // Apply accumulated rotations to the new column.
    for (int i = 0; i < j; ++i) {
      const Complexd t = cs[i] * hess(i, j) + sn[i] * hess(i + 1, j);
      hess(i + 1, j) = -std::conj(sn[i]) * hess(i, j) + std::conj(cs[i]) * hess(i + 1, j);
      hess(i, j) = t;
    }
    // New rotation zeroing the subdiagonal.
    const Complexd a = hess(j, j);
    const Complexd b = hess(j + 1, j);
    const double denom = std::sqrt(std::norm(a) + std::norm(b));
    if (denom == 0.0) {
      cs[j] = 1.0;
      sn[j] = 0.0;
    } else {
      cs[j] = std::conj(a) / denom;
      sn[j] = std::conj(b) / denom;
    }
    hess(j, j) = cs[j] * a + sn[j] * b;
    hess(j + 1, j) = 0.0;
    g[j + 1] = -std::conj(sn[j]) * g[j];
    g[j] = cs[j] * g[j];

    iters = j + 1;
    const double rel_res = std::abs(g[j + 1]) / rhs_norm;
    if (rel_res <= options.tolerance) break;
    if (h_sub == 0.0) break;  // breakdown: solution already in the Krylov span
    basis.push_back(w / h_sub);
  }

  // Back-substitution on the triangularized Hessenberg system.
  VectorXcd y = VectorXcd::Zero(iters);
  for (int i = iters - 1; i >= 0; --i) {
    Complexd s = g[i];
    for (int l = i + 1; l < iters; ++l) s -= hess(i, l) * y[l];
    y[i] = s / hess(i, i);
  }
  VectorXcd x = VectorXcd::Zero(n);
  for (int i = 0; i < iters; ++i) x += y[i] * basis[i];

  // True residual, not the Givens estimate.
  const double true_res = (rhs - apply(x)).norm() / rhs_norm;
  local.iterations = iters;
  local.residual = true_res;
  local.converged = true_res <= options.tolerance;
  if (report) *report = local;
  if (!local.converged) {
    throw SolverError("gmres: no convergence after " + std::to_string(iters) +
                          " iterations (relative residual " + std::to_string(true_res) + ")",
                      local);
  }
  return x;
}

VectorXcd solve_dense(const MatrixXcd& matrix, const VectorXcd& rhs,
                      const SolverOptions& options, SolveReport* report) {
  SolveReport local;
  local.method = "dense-lu";
  local.factorized = true;
  local.tolerance = options.tolerance;

  Eigen::PartialPivLU<MatrixXcd> lu(matrix);
  const auto& u_diag = lu.matrixLU().diagonal();
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (Eigen::Index i = 0; i < u_diag.size(); ++i) {
    const double m = std::abs(u_diag[i]);
    dmin = std::min(dmin, m);
    dmax = std::max(dmax, m);
  }
  local.condition_estimate = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();

  VectorXcd x = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  local.residual = (rhs_norm > 0.0) ? (rhs - matrix * x).norm() / rhs_norm : 0.0;
  local.converged = local.residual <= options.tolerance;
  if (report) *report = local;
  if (!local.converged || !x.allFinite()) {
    throw SolverError("dense solve: singular or near-singular system (condition estimate " +
                          std::to_string(local.condition_estimate) + ")",
                      local);
  }
  return x;
}

}  // namespace refem
