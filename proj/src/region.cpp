// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/region.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace refem {

struct Region::Node {
  Kind kind = Kind::All;
  Vec3 lo{0, 0, 0};
  Vec3 hi{0, 0, 0};
  Vec3 center{0, 0, 0};
  double radius = 0.0;
  Vec3 normal{0, 0, 1};
  double offset = 0.0;
  std::vector<Region> args;
};

Region Region::all() { return Region(std::make_shared<Node>()); }

Region Region::box(const Vec3& lo, const Vec3& hi) {
  for (int i = 0; i < 3; ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("Region::box: lo must be below hi");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Box;
  node->lo = lo;
  node->hi = hi;
  return Region(std::move(node));
}

Region Region::ball(const Vec3& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("Region::ball: radius must be positive");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Ball;
  node->center = center;
  node->radius = radius;
  return Region(std::move(node));
}

Region Region::half_space(const Vec3& normal, double offset) {
  if (normal.norm() <= 0.0) throw std::invalid_argument("Region::half_space: zero normal");
  auto node = std::make_shared<Node>();
  node->kind = Kind::HalfSpace;
  node->normal = normal;
  node->offset = offset;
  return Region(std::move(node));
}

Region Region::complement(Region arg) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Complement;
  node->args.push_back(std::move(arg));
  return Region(std::move(node));
}

Region Region::intersection(std::vector<Region> args) {
  if (args.empty()) throw std::invalid_argument("Region::intersection: needs arguments");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Intersection;
  node->args = std::move(args);
  return Region(std::move(node));
}

Region Region::union_of(std::vector<Region> args) {
  if (args.empty()) throw std::invalid_argument("Region::union_of: needs arguments");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Union;
  node->args = std::move(args);
  return Region(std::move(node));
}

bool Region::contains(const Vec3& x) const {
  switch (node_->kind) {
    case Kind::All:
      return true;
    case Kind::Box:
      for (int i = 0; i < 3; ++i) {
        if (x[i] < node_->lo[i] || x[i] > node_->hi[i]) return false;
      }
      return true;
    case Kind::Ball:
      return (x - node_->center).norm() <= node_->radius;
    case Kind::HalfSpace:
      return node_->normal.dot(x) >= node_->offset;
    case Kind::Complement:
      return !node_->args[0].contains(x);
    case Kind::Intersection:
      for (const auto& r : node_->args) {
        if (!r.contains(x)) return false;
      }
      return true;
    case Kind::Union:
      for (const auto& r : node_->args) {
        if (r.contains(x)) return true;
      }
      return false;
  }
  return false;
}

std::string Region::describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case Kind::All:
      os << "all";
      break;
    case Kind::Box:
      os << "box[" << node_->lo.transpose() << " ; " << node_->hi.transpose() << "]";
      break;
    case Kind::Ball:
      os << "ball(c=" << node_->center.transpose() << ", r=" << node_->radius << ")";
      break;
    case Kind::HalfSpace:
      os << "half-space(n=" << node_->normal.transpose() << ", d=" << node_->offset << ")";
      break;
    case Kind::Complement:
      os << "not(" << node_->args[0].describe() << ")";
      break;
    case Kind::Intersection: {
      os << "and(";
      for (size_t i = 0; i < node_->args.size(); ++i) {
        if (i) os << ", ";
        os << node_->args[i].describe();
      }
      os << ")";
      break;
    }
    case Kind::Union: {
      os << "or(";
      for (size_t i = 0; i < node_->args.size(); ++i) {
        if (i) os << ", ";
        os << node_->args[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

Region::Kind Region::kind() const { return node_->kind; }
const Vec3& Region::lo() const { return node_->lo; }
const Vec3& Region::hi() const { return node_->hi; }
const Vec3& Region::center() const { return node_->center; }
double Region::radius() const { return node_->radius; }
const Vec3& Region::normal() const { return node_->normal; }
double Region::offset() const { return node_->offset; }
const std::vector<Region>& Region::args() const { return node_->args; }

}  // namespace refem
