// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "refem/expr.hpp"
#include "refem/region.hpp"

namespace refem {

struct ProfilePiece {
  Region region;
  ValueExpr value;
};

/// Piecewise coefficient field over the design region. Inside D the first
/// matching piece wins and the base expression applies where no piece
/// matches; outside D the coefficient is identically 1.
class RefractionProfile {
 public:
  explicit RefractionProfile(ValueExpr base = ValueExpr::constant(Complex{1.0, 0.0}));
  RefractionProfile(std::vector<ProfilePiece> pieces, ValueExpr base);
  /// Spatially constant coefficient.
  static RefractionProfile constant(Complex c);

  /// Piecewise value, no exterior rule applied.
  Complex value_inside(const Vec3& x) const;
  /// Full rule: piecewise value inside D, exactly 1 outside.
  Complex value(const Vec3& x, const Domain& domain) const;

  const std::vector<ProfilePiece>& pieces() const { return pieces_; }
  const ValueExpr& base() const { return base_; }
  /// Index of the matching piece at x, or -1 for the base.
  int piece_index(const Vec3& x) const;

 private:
  std::vector<ProfilePiece> pieces_;
  ValueExpr base_;
};

/// Real nonnegative ball-center density N(x). Shares the piecewise
/// machinery with RefractionProfile; evaluates to the real part of the
/// stored expression and to 0 outside D. Nonnegativity and realness are
/// checked by sampling (see designer diagnostics).
class DensityProfile {
 public:
  explicit DensityProfile(double constant_value = 0.0);
  DensityProfile(std::vector<ProfilePiece> pieces, ValueExpr base);
  static DensityProfile constant(double value);

  double value_inside(const Vec3& x) const;
  double value(const Vec3& x, const Domain& domain) const;
  /// Raw complex expression value, used by realizability diagnostics to
  /// detect designs whose density quotient fails to be real.
  Complex raw_value(const Vec3& x) const;

  const std::vector<ProfilePiece>& pieces() const { return pieces_; }
  const ValueExpr& base() const { return base_; }
  int piece_index(const Vec3& x) const;

 private:
  std::vector<ProfilePiece> pieces_;
  ValueExpr base_;
};

/// Pointwise combination of two piecewise definitions. The result carries
/// one piece per ordered pair of pieces (base included) so that
/// first-match evaluation reproduces combine(a.value(x), b.value(x))
/// exactly at every point.
std::vector<ProfilePiece> refine_pieces(
    const std::vector<ProfilePiece>& a, const ValueExpr& a_base,
    const std::vector<ProfilePiece>& b, const ValueExpr& b_base,
    const std::function<ValueExpr(const ValueExpr&, const ValueExpr&)>& combine);

/// n0^2(x) + N(x)*nu^2(x) as a profile, for residual checks and
/// cross-solves against a directly prescribed coefficient.
RefractionProfile combined_refraction(const RefractionProfile& n0_squared,
                                      const DensityProfile& density,
                                      const RefractionProfile& nu_squared);

}  // namespace refem
