// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "refem/geometry.hpp"

namespace refem {

/// Closed-form scalar field used as a piece value inside profiles:
/// complex constants, smooth compactly supported radial bumps, and sums,
/// scalings and products thereof. Immutable and cheaply copyable.
class ValueExpr {
 public:
  enum class Kind { Constant, Bump, Sum, Scale, Product };

  /// Constant c.
  static ValueExpr constant(Complex c);
  /// exp(-rho^2/(1-rho^2)) with rho = |x-center|/radius, zero for rho >= 1.
  /// Smooth everywhere, equals 1 at the center.
  static ValueExpr bump(const Vec3& center, double radius);
  static ValueExpr sum(std::vector<ValueExpr> terms);
  static ValueExpr scaled(Complex factor, ValueExpr arg);
  static ValueExpr product(ValueExpr lhs, ValueExpr rhs);

  Complex value(const Vec3& x) const;

  Kind kind() const;
  /// True when the expression is a plain constant node.
  bool is_constant() const;
  Complex constant_value() const;

  // Accessors used by serialization.
  const Vec3& bump_center() const;
  double bump_radius() const;
  const std::vector<ValueExpr>& terms() const;
  Complex scale_factor() const;
  const ValueExpr& scale_arg() const;
  const ValueExpr& lhs() const;
  const ValueExpr& rhs() const;

 private:
  struct Node;
  explicit ValueExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace refem
