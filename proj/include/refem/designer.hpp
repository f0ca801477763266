// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refem/particles.hpp"
#include "refem/profile.hpp"

namespace refem {

struct DiagnosticEntry {
  std::string region;
  std::string check;
  bool pass = false;
  double value = 0.0;  // worst value observed for the check
};

/// A density/coefficient pair (N, nu^2) realizing a target coefficient
/// n^2 = n0^2 + N nu^2, with its realizability diagnostics.
struct DesignResult {
  DensityProfile density;
  RefractionProfile nu_squared;
  std::vector<DiagnosticEntry> diagnostics;

  bool all_pass() const;
};

enum class DesignStrategy {
  FixedDensity,        // constant N, nu^2 = (n^2 - n0^2)/N
  FixedCoefficient,    // constant nu^2, N = (n^2 - n0^2)/nu^2 (must come out real >= 0)
  ZeroDensityWhereEqual,  // N = 0 where n^2 = n0^2, FixedDensity elsewhere
};

struct DesignSpec {
  DesignStrategy strategy = DesignStrategy::FixedDensity;
  Complex value{0.1, 0.0};  // the fixed N (real) or the fixed nu^2
};

/// Failed design constraints; carries the full result so diagnostics can
/// still be reported.
class DesignError : public std::runtime_error {
 public:
  DesignError(const std::string& what, DesignResult result)
      : std::runtime_error(what), result_(std::move(result)) {}
  const DesignResult& result() const { return result_; }

 private:
  DesignResult result_;
};

/// Computes (N, nu^2) for the target coefficient. The split is non-unique;
/// the named strategies pin it down reproducibly. Throws DesignError when
/// a realizability diagnostic fails (result attached), std::invalid_argument
/// on degenerate strategy values (zero N or nu^2).
DesignResult design(const RefractionProfile& n_squared, const RefractionProfile& n0_squared,
                    const DesignSpec& spec, const Domain& domain,
                    int diagnostic_resolution = 16);

/// max over cell centers of |n0^2 + N nu^2 - n^2|.
double verify_design(const DesignResult& result, const RefractionProfile& n0_squared,
                     const RefractionProfile& n_squared, const Grid& grid);

/// Pointwise and integral constraints on a candidate design, evaluated by
/// sampling on a regular lattice: N >= 0, N within the packing bound pi/6,
/// total embedded volume at most |D|, Im nu^2 >= 0, and realness of the
/// density. Never throws; every entry reports pass/fail plus the worst
/// observed value.
std::vector<DiagnosticEntry> realizability_check(const DesignResult& result,
                                                 const Domain& domain, int resolution = 16);

}  // namespace refem
