// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refem/geometry.hpp"

namespace refem {

/// Volume of a ball of radius a.
double ball_volume(double a);

/// Outgoing free-space Helmholtz kernel e^{ik|x-y|}/(4 pi |x-y|).
/// k = 0 gives the Laplace kernel. Throws std::domain_error at x == y.
Complex free_space_kernel(const Vec3& x, const Vec3& y, double k);

/// Newtonian potential of the unit-density ball B(center, a),
/// integral of |x-y|^{-1} over the ball. Exterior branch V_a/|x-center|,
/// interior branch 2 pi (a^2 - |x-center|^2/3); both branches are finite
/// everywhere and agree at |x-center| = a.
double ball_potential(const Vec3& x, const Vec3& center, double a);

/// Exact integral of the free-space kernel over a ball of radius a
/// centered at the evaluation point: (e^{ika}(1-ika) - 1)/k^2, with the
/// limit a^2/2 at k = 0. Series evaluation near ka = 0 avoids
/// cancellation.
Complex ball_self_integral(double a, double k);

/// Exact integral of the free-space kernel over a ball of radius a whose
/// center is at distance dist >= a from the evaluation point:
/// e^{ik dist} (sin(ka) - ka cos(ka)) / (dist k^3). Reduces to the
/// midpoint value V_a g(dist) up to O((ka)^2) and to V_a/(4 pi dist) at
/// k = 0.
Complex ball_kernel_integral(double dist, double a, double k);

/// Singularity-corrected quadrature weight: approximation of the integral
/// of g(x, .) over one grid cell. Far targets use the midpoint rule; a
/// target inside the volume-equivalent ball of the cell uses the split
/// g = 1/(4 pi r) + (e^{ikr}-1)/(4 pi r) with the exact Newtonian ball
/// potential for the singular part; the cell center itself reduces to
/// ball_self_integral at the volume-equivalent radius.
Complex cell_kernel_integral(const Vec3& x, const Cell& cell, double k);

/// Approximation of the product integral of g(x, .) g(., y) over one grid
/// cell, singular at both x and y. Used for point-source right-hand sides
/// and evaluators of the background Green's function. Accuracy matches the
/// one-point collocation scheme: exact-ball treatment of whichever
/// singularity falls inside the cell, midpoint for the rest.
Complex double_kernel_cell_integral(const Vec3& x, const Vec3& y, const Cell& cell, double k);

}  // namespace refem
