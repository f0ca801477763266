// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/profile.hpp"

#include <utility>

namespace refem {

RefractionProfile::RefractionProfile(ValueExpr base) : base_(std::move(base)) {}

RefractionProfile::RefractionProfile(std::vector<ProfilePiece> pieces, ValueExpr base)
    : pieces_(std::move(pieces)), base_(std::move(base)) {}

RefractionProfile RefractionProfile::constant(Complex c) {
  return RefractionProfile(ValueExpr::constant(c));
}

int RefractionProfile::piece_index(const Vec3& x) const {
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].region.contains(x)) return static_cast<int>(i);
  }
  return -1;
}

Complex RefractionProfile::value_inside(const Vec3& x) const {
  for (const auto& piece : pieces_) {
    if (piece.region.contains(x)) return piece.value.value(x);
  }
  return base_.value(x);
}

Complex RefractionProfile::value(const Vec3& x, const Domain& domain) const {
  if (!domain.contains(x)) return Complex{1.0, 0.0};
  return value_inside(x);
}

DensityProfile::DensityProfile(double constant_value)
    : base_(ValueExpr::constant(Complex{constant_value, 0.0})) {}

DensityProfile::DensityProfile(std::vector<ProfilePiece> pieces, ValueExpr base)
    : pieces_(std::move(pieces)), base_(std::move(base)) {}

DensityProfile DensityProfile::constant(double value) { return DensityProfile(value); }

int DensityProfile::piece_index(const Vec3& x) const {
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].region.contains(x)) return static_cast<int>(i);
  }
  return -1;
}

Complex DensityProfile::raw_value(const Vec3& x) const {
  for (const auto& piece : pieces_) {
    if (piece.region.contains(x)) return piece.value.value(x);
  }
  return base_.value(x);
}

double DensityProfile::value_inside(const Vec3& x) const { return raw_value(x).real(); }

double DensityProfile::value(const Vec3& x, const Domain& domain) const {
  if (!domain.contains(x)) return 0.0;
  return value_inside(x);
}

std::vector<ProfilePiece> refine_pieces(
    const std::vector<ProfilePiece>& a, const ValueExpr& a_base,
    const std::vector<ProfilePiece>& b, const ValueExpr& b_base,
    const std::function<ValueExpr(const ValueExpr&, const ValueExpr&)>& combine) {
  // Virtual trailing piece for each base; lexicographic (i, j) order keeps
  // first-match semantics of both inputs.
  std::vector<std::pair<Region, ValueExpr>> av;
  for (const auto& p : a) av.emplace_back(p.region, p.value);
  av.emplace_back(Region::all(), a_base);
  std::vector<std::pair<Region, ValueExpr>> bv;
  for (const auto& p : b) bv.emplace_back(p.region, p.value);
  bv.emplace_back(Region::all(), b_base);

  std::vector<ProfilePiece> out;
  out.reserve(av.size() * bv.size());
  for (const auto& [ra, ea] : av) {
    for (const auto& [rb, eb] : bv) {
      Region r = (ra.kind() == Region::Kind::All)
                     ? rb
                     : (rb.kind() == Region::Kind::All ? ra : Region::intersection({ra, rb}));
      out.push_back(ProfilePiece{r, combine(ea, eb)});
    }
  }
  return out;
}

RefractionProfile combined_refraction(const RefractionProfile& n0_squared,
                                      const DensityProfile& density,
                                      const RefractionProfile& nu_squared) {
  // N * nu^2 first, then n0^2 + (N nu^2); the trailing all-region piece of
  // each refinement doubles as the base.
  auto product = refine_pieces(
      density.pieces(), density.base(), nu_squared.pieces(), nu_squared.base(),
      [](const ValueExpr& n, const ValueExpr& nu) { return ValueExpr::product(n, nu); });
  ValueExpr product_base = product.back().value;
  product.pop_back();

  auto total = refine_pieces(
      n0_squared.pieces(), n0_squared.base(), product, product_base,
      [](const ValueExpr& n0, const ValueExpr& add) {
        return ValueExpr::sum({n0, add});
      });
  ValueExpr total_base = total.back().value;
  total.pop_back();
  return RefractionProfile(std::move(total), std::move(total_base));
}

}  // namespace refem
