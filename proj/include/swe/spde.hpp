#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "swe/detwave.hpp"
#include "swe/rng.hpp"

// Explicit scheme for the noise-driven wave equation
//   u_tt = u_xx + c1 u + (c2 u + f(u)) W'(t,x)
// with space-time white noise W', plus first-passage detection of the
// sup-norm threshold L along each path.

namespace swe {

enum class Boundary { periodic, dirichlet };

struct Nonlinearity {
  enum class Kind { power, zero, constant };
  Kind kind = Kind::power;
  double value = 0.0;  // only the constant kind reads this

  // power: kappa u |u|^{r-1}, so |f(u)| = kappa |u|^r exactly
  double operator()(double u, const PhysParams& p) const {
    switch (kind) {
      case Kind::power:
        return p.kappa * u * pow_abs(u, p.r - 1.0);
      case Kind::zero:
        return 0.0;
      case Kind::constant:
        return value;
    }
    return 0.0;
  }
};

struct SpdeSpec {
  Interval domain;
  PhysParams params;
  Nonlinearity f;
  double T_bound = 0.0;  // sets the initial-data scale and the horizon
  double epsilon = 0.5;  // horizon margin past T_bound
  double L = 1e3;        // first-passage threshold on the sup-norm
  Boundary boundary = Boundary::periodic;
  // base data; the field starts at scale*(1+u0), scale*v0
  std::function<double(double)> u0, v0;

  double scale() const { return domain.J + T_bound + 1.0; }
  double horizon() const { return T_bound + epsilon; }
};

// White-noise increments on the space-time lattice, one Gaussian of variance
// dt*dx per cell (n, j). Values are pure functions of (seed, n, j), so cells
// are addressable in any order and across threads.
class NoiseField {
 public:
  NoiseField(const SpatialGrid& grid, double dt, int nt, std::uint64_t seed);

  double value(int n, int j) const;
  std::vector<std::vector<double>> materialize() const;  // [nt][nx]

  int nt() const { return nt_; }
  int nx() const { return nx_; }
  double cell_std() const { return cell_std_; }
  std::uint64_t seed() const { return seed_; }

 private:
  int nt_ = 0, nx_ = 0;
  double cell_std_ = 0.0;
  std::uint64_t seed_ = 0;
};

NoiseField sample_noise(const SpatialGrid& grid, double dt, int nt,
                        std::uint64_t seed);

struct PathResult {
  std::uint64_t seed = 0;
  std::vector<double> t, sup_norm, phi, sup_u_sq;
  std::optional<double> sigma_L;  // first recorded time with sup_norm >= L
  bool blown_up = false;
  bool overflow = false;  // stopped by non-finite values, not by reaching L
  std::vector<LatticeField> frames;
};

struct SpdeOptions {
  // keep full fields for t <= this; default keeps none
  double store_frames_until = -std::numeric_limits<double>::infinity();
};

// Leapfrog with a noise-free Taylor first step; the stochastic kick
// (dt/dx)(c2 u + f(u)) dW enters every later step. Histories stop at the
// first of: sup-norm >= L, a non-finite value, or the horizon.
PathResult simulate_path(const SpdeSpec& spec, const SpatialGrid& grid,
                         double dt, std::uint64_t seed,
                         const SpdeOptions& opts = {});

// First recorded time with sup_norm >= L_query; empty if never reached.
std::optional<double> sigma_L_of(const PathResult& path, double L_query);

}  // namespace swe
