// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/expr.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace refem {

struct ValueExpr::Node {
  Kind kind = Kind::Constant;
  Complex constant{0.0, 0.0};
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 0.0;
  Complex factor{0.0, 0.0};
  std::vector<ValueExpr> children;
};

ValueExpr ValueExpr::constant(Complex c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->constant = c;
  return ValueExpr(std::move(node));
}

ValueExpr ValueExpr::bump(const Vec3& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ValueExpr::bump: radius must be positive");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Bump;
  node->center = center;
  node->radius = radius;
  return ValueExpr(std::move(node));
}

ValueExpr ValueExpr::sum(std::vector<ValueExpr> terms) {
  if (terms.empty()) throw std::invalid_argument("ValueExpr::sum: needs at least one term");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->children = std::move(terms);
  return ValueExpr(std::move(node));
}

ValueExpr ValueExpr::scaled(Complex factor, ValueExpr arg) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Scale;
  node->factor = factor;
  node->children.push_back(std::move(arg));
  return ValueExpr(std::move(node));
}

ValueExpr ValueExpr::product(ValueExpr lhs, ValueExpr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return ValueExpr(std::move(node));
}

Complex ValueExpr::value(const Vec3& x) const {
  switch (node_->kind) {
    case Kind::Constant:
      return node_->constant;
    case Kind::Bump: {
      const double rho2 = (x - node_->center).squaredNorm() / (node_->radius * node_->radius);
      if (rho2 >= 1.0) return Complex{0.0, 0.0};
      return Complex{std::exp(-rho2 / (1.0 - rho2)), 0.0};
    }
    case Kind::Sum: {
      Complex s{0.0, 0.0};
      for (const auto& t : node_->children) s += t.value(x);
      return s;
    }
    case Kind::Scale:
      return node_->factor * node_->children[0].value(x);
    case Kind::Product:
      return node_->children[0].value(x) * node_->children[1].value(x);
  }
  return Complex{0.0, 0.0};
}

ValueExpr::Kind ValueExpr::kind() const { return node_->kind; }

bool ValueExpr::is_constant() const { return node_->kind == Kind::Constant; }

Complex ValueExpr::constant_value() const {
  if (!is_constant()) throw std::logic_error("ValueExpr: not a constant node");
  return node_->constant;
}

const Vec3& ValueExpr::bump_center() const { return node_->center; }
double ValueExpr::bump_radius() const { return node_->radius; }
const std::vector<ValueExpr>& ValueExpr::terms() const { return node_->children; }
Complex ValueExpr::scale_factor() const { return node_->factor; }
const ValueExpr& ValueExpr::scale_arg() const { return node_->children[0]; }
const ValueExpr& ValueExpr::lhs() const { return node_->children[0]; }
const ValueExpr& ValueExpr::rhs() const { return node_->children[1]; }

}  // namespace refem
