// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "refem/geometry.hpp"

namespace refem {

/// Deterministic membership predicate over 3-space: boxes, balls and
/// half-spaces plus boolean combinations. Used for profile pieces and for
/// counting ball centers in subdomains.
class Region {
 public:
  enum class Kind { All, Box, Ball, HalfSpace, Complement, Intersection, Union };

  static Region all();
  static Region box(const Vec3& lo, const Vec3& hi);
  static Region ball(const Vec3& center, double radius);
  /// Points with dot(x, normal) >= offset.
  static Region half_space(const Vec3& normal, double offset);
  static Region complement(Region arg);
  static Region intersection(std::vector<Region> args);
  static Region union_of(std::vector<Region> args);

  bool contains(const Vec3& x) const;
  std::string describe() const;

  Kind kind() const;
  const Vec3& lo() const;
  const Vec3& hi() const;
  const Vec3& center() const;
  double radius() const;
  const Vec3& normal() const;
  double offset() const;
  const std::vector<Region>& args() const;

 private:
  struct Node;
  explicit Region(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace refem
