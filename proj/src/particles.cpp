// Copyright (c) 2026 The refem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "refem/particles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "refem/parallel.hpp"

namespace refem {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, int ix, int iy, int iz) {
  std::uint64_t h = splitmix64(seed ^ 0x5bf03635d74e91aeULL);
  h = splitmix64(h ^ static_cast<std::uint64_t>(ix));
  h = splitmix64(h ^ static_cast<std::uint64_t>(iy));
  h = splitmix64(h ^ static_cast<std::uint64_t>(iz));
  return h;
}

// Uniform double in [0, 1); bit-deterministic across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string box_label(const Vec3& lo, const Vec3& hi) {
  std::ostringstream os;
  os << "box[" << lo.transpose() << " ; " << hi.transpose() << "]";
  return os.str();
}

}  // namespace

double BallConfig::min_center_distance() const {
  // Uniform hash grid of side 2a keeps this linear in the count.
  const int m = count();
  if (m < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  Vec3 lo = centers[0];
  for (const auto& c : centers) lo = lo.cwiseMin(c);
  const double cell = 2.0 * a;
  struct Key {
    long x, y, z;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return static_cast<size_t>(splitmix64(static_cast<std::uint64_t>(k.x) * 73856093ULL ^
                                            static_cast<std::uint64_t>(k.y) * 19349663ULL ^
                                            static_cast<std::uint64_t>(k.z) * 83492791ULL));
    }
  };
  std::unordered_map<Key, std::vector<int>, KeyHash> bins;
  auto key_of = [&](const Vec3& c) {
    return Key{static_cast<long>(std::floor((c[0] - lo[0]) / cell)),
               static_cast<long>(std::floor((c[1] - lo[1]) / cell)),
               static_cast<long>(std::floor((c[2] - lo[2]) / cell))};
  };
  for (int i = 0; i < m; ++i) bins[key_of(centers[i])].push_back(i);
  for (int i = 0; i < m; ++i) {
    const Key k = key_of(centers[i]);
    for (long dz = -1; dz <= 1; ++dz) {
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) {
          const auto it = bins.find(Key{k.x + dx, k.y + dy, k.z + dz});
          if (it == bins.end()) continue;
          for (int j : it->second) {
            if (j <= i) continue;
            best = std::min(best, (centers[i] - centers[j]).norm());
          }
        }
      }
    }
  }
  return best;
}

void BallConfig::validate(const Domain& domain) const {
  if (a <= 0.0) throw std::invalid_argument("BallConfig: radius must be positive");
  if (centers.size() != coeffs.size()) {
    throw std::invalid_argument("BallConfig: one coefficient per center required");
  }
  for (const auto& c : coeffs) {
    if (c.imag() < -1e-12) {
      throw std::invalid_argument("BallConfig: coefficients need nonnegative imaginary part");
    }
  }
  for (const auto& c : centers) {
    if (!domain.contains_ball(c, a)) {
      throw std::invalid_argument("BallConfig: a ball sticks out of the domain");
    }
  }
  const double dmin = min_center_distance();
  if (dmin < 2.0 * a * (1.0 - 1e-12)) {
    throw std::invalid_argument("BallConfig: intersecting balls (min distance " +
                                std::to_string(dmin) + ")");
  }
}

BallConfig place_balls(const DensityProfile& density, const RefractionProfile& nu_squared,
                       double a, const Domain& domain, std::uint64_t seed) {
  if (a <= 0.0) throw std::invalid_argument("place_balls: radius must be positive");
  if (domain.volume() <= 0.0) throw std::invalid_argument("place_balls: empty domain");

  const double v_a = ball_volume(a);
  const Vec3 extent = domain.extent();
  std::array<int, 3> macro{};
  Vec3 side;
  for (int axis = 0; axis < 3; ++axis) {
    // Rounding the macro-cell count down keeps the side at 8a or above, so
    // a full 2a sub-lattice always fits when the density is packable.
    macro[axis] = std::max(1, static_cast<int>(std::floor(extent[axis] / (8.0 * a))));
    side[axis] = extent[axis] / macro[axis];
  }

  BallConfig config;
  config.a = a;
  config.seed = seed;

  for (int iz = 0; iz < macro[2]; ++iz) {
    for (int iy = 0; iy < macro[1]; ++iy) {
      for (int ix = 0; ix < macro[0]; ++ix) {
        const Vec3 cell_lo = domain.lo() + Vec3(ix * side[0], iy * side[1], iz * side[2]);
        const Vec3 cell_hi = cell_lo + side;
        const Vec3 cell_center = 0.5 * (cell_lo + cell_hi);
        const double n_here = density.value_inside(cell_center);
        if (n_here < -1e-12) {
          throw RealizabilityError("place_balls: negative density",
                                   box_label(cell_lo, cell_hi));
        }
        if (n_here > kPackingBound + 1e-12) {
          throw RealizabilityError("place_balls: density above the packing bound pi/6",
                                   box_label(cell_lo, cell_hi));
        }
        if (n_here <= 0.0) continue;

        std::mt19937_64 rng(mix_seed(seed, ix, iy, iz));
        const double expected = n_here * side.prod() / v_a;
        int want = static_cast<int>(std::floor(expected));
        const double frac = expected - want;
        if (uniform01(rng) < frac) ++want;
        if (want == 0) continue;

        int p = std::max(1, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(want)))));
        while (p * p * p < want) ++p;
        const Vec3 pitch = side / p;
        if (pitch.minCoeff() < 2.0 * a * (1.0 - 1e-12)) {
          throw RealizabilityError("place_balls: macro cell cannot hold " +
                                       std::to_string(want) + " separated balls",
                                   box_label(cell_lo, cell_hi));
        }
        Vec3 jitter;
        for (int axis = 0; axis < 3; ++axis) {
          jitter[axis] = std::max(0.0, std::min(0.25 * pitch[axis],
                                                0.5 * (pitch[axis] - 2.0 * a)));
        }

        // Partial Fisher-Yates pick of `want` distinct sub-lattice slots.
        const int slots = p * p * p;
        std::vector<int> order(slots);
        for (int s = 0; s < slots; ++s) order[s] = s;
        for (int s = 0; s < want; ++s) {
          const int pick = s + static_cast<int>(uniform01(rng) * (slots - s));
          std::swap(order[s], order[std::min(pick, slots - 1)]);
        }

        for (int s = 0; s < want; ++s) {
          const int slot = order[s];
          const int sx = slot % p;
          const int sy = (slot / p) % p;
          const int sz = slot / (p * p);
          Vec3 x = cell_lo;
          x[0] += (sx + 0.5) * pitch[0] + (2.0 * uniform01(rng) - 1.0) * jitter[0];
          x[1] += (sy + 0.5) * pitch[1] + (2.0 * uniform01(rng) - 1.0) * jitter[1];
          x[2] += (sz + 0.5) * pitch[2] + (2.0 * uniform01(rng) - 1.0) * jitter[2];
          config.centers.push_back(x);
          config.coeffs.push_back(nu_squared.value(x, domain));
        }
      }
    }
  }
  return config;
}

int count_in_region(const BallConfig& config, const Region& region) {
  int n = 0;
  for (const auto& c : config.centers) {
    if (region.contains(c)) ++n;
  }
  return n;
}

Complex riemann_sum(const BallConfig& config, const std::function<Complex(const Vec3&)>& f) {
  Complex sum{0.0, 0.0};
  for (const auto& c : config.centers) {
    const Complex v = f(c);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("riemann_sum: non-finite sample");
    }
    sum += v;
  }
  return config.single_ball_volume() * sum;
}

VolumeFraction total_volume_fraction(const BallConfig& config, const Domain& domain) {
  VolumeFraction out;
  out.fraction = config.single_ball_volume() * config.count() / domain.volume();
  out.exceeds_domain = out.fraction > 1.0 + 1e-12;
  return out;
}

CollocationGreens::CollocationGreens(const RefractionProfile& n0_squared, double k,
                                     const Grid& grid, const SolverOptions& options)
    : n0_squared_(n0_squared), k_(k), grid_(grid), options_(options) {}

void CollocationGreens::prepare(std::span<const Vec3> sources) {
  for (const auto& y : sources) solution_for(y);
}

const GreensSolution& CollocationGreens::solution_for(const Vec3& y) const {
  for (const auto& [source, solution] : cache_) {
    if ((source - y).norm() == 0.0) return solution;
  }
  cache_.emplace_back(y, greens_function(n0_squared_, k_, y, grid_, options_));
  return cache_.back().second;
}

Complex CollocationGreens::value(const Vec3& x, const Vec3& y) const {
  return solution_for(y).value(x);
}

Complex CollocationGreens::regular(const Vec3& x, const Vec3& y) const {
  return solution_for(y).regular(x);
}

FoldySystem::FoldySystem(BallConfig config, VectorXcd rhs, double k, FoldyOptions options,
                         GammaFn gamma)
    : config_(std::move(config)), rhs_(std::move(rhs)), k_(k), options_(options),
      gamma_(std::move(gamma)) {
  const int m = config_.count();
  if (m < 1) throw std::invalid_argument("FoldySystem: needs at least one ball");
  if (m <= options_.dense_limit) {
    matrix_.emplace(m, m);
    auto& mat = *matrix_;
    parallel_for(m, [&](int begin, int end) {
      for (int row = begin; row < end; ++row) {
        for (int col = 0; col < m; ++col) mat(row, col) = entry_impl(row, col);
      }
    });
    if (!mat.allFinite()) throw std::runtime_error("FoldySystem: non-finite matrix entry");
  }
}

Complex FoldySystem::entry_impl(int m, int j) const {
  const Complex delta = (m == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  return delta - k_ * k_ * config_.coeffs[j] * gamma_(config_, m, j);
}

Complex FoldySystem::entry(int m, int j) const {
  if (matrix_) return (*matrix_)(m, j);
  return entry_impl(m, j);
}

const MatrixXcd& FoldySystem::matrix() const {
  if (!matrix_) throw std::logic_error("FoldySystem: implicit system has no dense matrix");
  return *matrix_;
}

VectorXcd FoldySystem::apply(const VectorXcd& u) const {
  const int m = size();
  if (matrix_) return (*matrix_) * u;
  VectorXcd out(m);
  parallel_for(m, [&](int begin, int end) {
    for (int row = begin; row < end; ++row) {
      Complex acc{0.0, 0.0};
      for (int col = 0; col < m; ++col) acc += entry_impl(row, col) * u[col];
      out[row] = acc;
    }
  });
  return out;
}

FoldySystem assemble_foldy(const BallConfig& config, const FieldEvaluator& u0,
                           const GreensEvaluator& greens, double k,
                           const FoldyOptions& options) {
  const int m = config.count();
  if (m < 1) throw std::invalid_argument("assemble_foldy: empty configuration");

  const double a = config.a;
  const double v_a = config.single_ball_volume();
  const Complex self = ball_self_integral(a, k);

  // Gamma entry closure over the stored configuration; the Green's
  // evaluator is captured by reference and must outlive the system.
  auto gamma = [&greens, a, v_a, self, k, options](const BallConfig& cfg, int row,
                                                   int col) -> Complex {
    const Vec3& xm = cfg.centers[row];
    if (row == col) {
      Complex g_self = self;
      if (options.regular_diagonal_correction) g_self += v_a * greens.regular(xm, xm);
      return g_self;
    }
    const Vec3& xj = cfg.centers[col];
    const double d = (xm - xj).norm();
    if (d == 0.0) throw std::invalid_argument("assemble_foldy: coincident centers");
    if (d < 4.0 * a) {
      // Exact free-space ball integral plus the smooth background part.
      return ball_kernel_integral(d, a, k) + v_a * greens.regular(xm, xj);
    }
    return v_a * greens.value(xm, xj);
  };

  VectorXcd rhs(m);
  for (int row = 0; row < m; ++row) rhs[row] = u0.value(config.centers[row]);

  return FoldySystem(config, std::move(rhs), k, options, gamma);
}

VectorXcd solve_discrete(const FoldySystem& system, const SolverOptions& options,
                         SolveReport* report) {
  if (system.dense()) {
    return solve_dense(system.matrix(), system.rhs(), options, report);
  }
  const auto apply = [&system](const VectorXcd& v) { return system.apply(v); };
  return gmres(apply, system.rhs(), options, report);
}

Complex evaluate_discrete_field(const BallConfig& config, const VectorXcd& solution,
                                const FieldEvaluator& u0, const GreensEvaluator& greens,
                                double k, const Vec3& x) {
  if (!x.allFinite()) throw std::invalid_argument("evaluate_discrete_field: non-finite point");
  if (solution.size() != config.count()) {
    throw std::invalid_argument("evaluate_discrete_field: solution size mismatch");
  }
  const double a = config.a;
  const double v_a = config.single_ball_volume();
  const double k2 = k * k;
  constexpr double four_pi = 4.0 * M_PI;

  Complex val = u0.value(x);
  for (int m = 0; m < config.count(); ++m) {
    const Vec3& xm = config.centers[m];
    const double d = (x - xm).norm();
    Complex gamma;
    if (d >= 3.0 * a) {
      gamma = v_a * greens.value(x, xm);
    } else if (d >= a) {
      gamma = ball_kernel_integral(d, a, k) + v_a * greens.regular(x, xm);
    } else {
      // Target inside the ball: exact interior Newtonian branch plus the
      // midpoint value of the smooth remainder (e^{ikr}-1)/(4 pi r).
      const double s = std::sin(0.5 * k * d);
      const Complex smooth =
          (d == 0.0) ? Complex{0.0, k} : Complex{-2.0 * s * s, std::sin(k * d)} / d;
      gamma = ball_potential(x, xm, a) / four_pi + smooth / four_pi * v_a +
              v_a * greens.regular(x, xm);
    }
    val += k2 * config.coeffs[m] * gamma * solution[m];
  }
  return val;
}

}  // namespace refem
