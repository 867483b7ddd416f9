#include "swe/spde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "swe/lattice_step.hpp"

namespace swe {

NoiseField::NoiseField(const SpatialGrid& grid, double dt, int nt,
                       std::uint64_t seed)
    : nt_(nt), nx_(grid.nx), cell_std_(std::sqrt(dt * grid.dx())), seed_(seed) {
  if (!(dt > 0.0)) throw std::invalid_argument("noise: dt must be positive");
  if (nt < 1) throw std::invalid_argument("noise: need at least one step");
}

double NoiseField::value(int n, int j) const {
  return cell_std_ * rng::gauss_cell(seed_, static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(j));
}

std::vector<std::vector<double>> NoiseField::materialize() const {
  std::vector<std::vector<double>> out(nt_, std::vector<double>(nx_));
  for (int n = 0; n < nt_; ++n)
    for (int j = 0; j < nx_; ++j) out[n][j] = value(n, j);
  return out;
}

NoiseField sample_noise(const SpatialGrid& grid, double dt, int nt,
                        std::uint64_t seed) {
  return NoiseField(grid, dt, nt, seed);
}

namespace {

double sup_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const std::vector<double>& u) {
  for (double x : u)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

PathResult simulate_path(const SpdeSpec& spec, const SpatialGrid& grid,
                         double dt, std::uint64_t seed,
                         const SpdeOptions& opts) {
  const double dx = grid.dx();
  if (!(dt > 0.0) || dt > dx)
    throw std::invalid_argument("simulate_path: need 0 < dt <= dx (CFL)");
  if (spec.f.kind == Nonlinearity::Kind::power && !(spec.params.r > 1.0))
    throw std::invalid_argument("simulate_path: power nonlinearity needs r > 1");
  const double horizon = spec.horizon();
  if (!(horizon > 0.0))
    throw std::invalid_argument("simulate_path: horizon must be positive");

  const int nn = grid.n_nodes();
  const int nx = grid.nx;
  const bool periodic = spec.boundary == Boundary::periodic;
  const double scale = spec.scale();
  const double inv_dx2 = 1.0 / (dx * dx);
  const double c1 = spec.params.c1;
  const double c2 = spec.params.c2;

  std::vector<double> anchor(nn), vel(nn), cand(nn), behind(nn);
  for (int j = 0; j < nn; ++j) {
    anchor[j] = scale * (1.0 + spec.u0(grid.x(j)));
    vel[j] = scale * spec.v0(grid.x(j));
  }
  if (periodic) {
    anchor[nx] = anchor[0];
    vel[nx] = vel[0];
  } else {
    double ends = std::max(std::abs(anchor[0]), std::abs(anchor[nx]));
    // stay quiet when the ends are only round-off away from zero
    if (ends > 1e-9 * (1.0 + sup_abs(anchor)))
      std::fprintf(
          stderr, "simulate_path: initial data clamped to 0 at pinned ends\n");
    anchor[0] = anchor[nx] = 0.0;
    vel[0] = vel[nx] = 0.0;
  }

  if (!(spec.L > sup_abs(anchor)))
    throw std::invalid_argument(
        "simulate_path: threshold L must exceed the initial sup-norm");

  EigenPair eig = eigenpair(grid.domain);
  std::vector<double> w = projection_weights(grid, eig);
  auto phi_of = [&](const std::vector<double>& u) {
    double acc = 0.0;
    for (int j = 0; j < nn; ++j) acc += w[j] * u[j];
    return acc;
  };
  auto drift = [&](double u) { return c1 * u; };

  const int nt_hint = static_cast<int>(std::ceil(horizon / dt)) + 2;
  NoiseField noise = sample_noise(grid, dt, nt_hint, seed);

  PathResult out;
  out.seed = seed;
  double t = 0.0;
  auto record = [&](const std::vector<double>& u) {
    double s = sup_abs(u);
    out.t.push_back(t);
    out.sup_norm.push_back(s);
    out.phi.push_back(phi_of(u));
    out.sup_u_sq.push_back(s * s);
    if (t <= opts.store_frames_until + 0.5 * dt)
      out.frames.push_back({t, u});
  };
  record(anchor);

  const int lo = periodic ? 0 : 1;
  const int hi = periodic ? nx - 1 : nx - 1;  // inclusive update range
  auto wrap_m = [&](int j) { return j > 0 ? j - 1 : nx - 1; };
  auto wrap_p = [&](int j) { return j < nx - 1 ? j + 1 : 0; };

  for (int n = 0; t + 0.5 * dt < horizon; ++n) {
    if (n == 0) {
      const double half_dt2 = 0.5 * dt * dt;
      for (int j = lo; j <= hi; ++j) {
        int jm = periodic ? wrap_m(j) : j - 1;
        int jp = periodic ? wrap_p(j) : j + 1;
        cand[j] = stencil::taylor(anchor[j], anchor[jm], anchor[jp], vel[j],
                                  dt, half_dt2, inv_dx2, drift(anchor[j]));
      }
    } else {
      const double lam2 = (dt / dx) * (dt / dx);
      const double dt2 = dt * dt;
      const double gain = dt / dx;
      for (int j = lo; j <= hi; ++j) {
        int jm = periodic ? wrap_m(j) : j - 1;
        int jp = periodic ? wrap_p(j) : j + 1;
        double kick = gain * (c2 * anchor[j] + spec.f(anchor[j], spec.params)) *
                      noise.value(n, j);
        cand[j] = stencil::leap(behind[j], anchor[jm], anchor[j], anchor[jp],
                                lam2, dt2, drift(anchor[j]), kick);
      }
    }
    if (periodic)
      cand[nx] = cand[0];
    else
      cand[0] = cand[nx] = 0.0;

    if (!all_finite(cand)) {
      out.blown_up = true;
      out.overflow = true;
      out.sigma_L = t;
      return out;
    }

    std::swap(behind, anchor);
    std::swap(anchor, cand);
    t += dt;
    record(anchor);
    if (out.sup_norm.back() >= spec.L) {
      out.blown_up = true;
      out.sigma_L = t;
      return out;
    }
  }
  return out;
}

std::optional<double> sigma_L_of(const PathResult& path, double L_query) {
  for (std::size_t k = 0; k < path.t.size(); ++k)
    if (path.sup_norm[k] >= L_query) return path.t[k];
  return std::nullopt;
}

}  // namespace swe
