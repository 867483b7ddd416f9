#include "swe/detwave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "swe/lattice_step.hpp"

namespace swe {

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

TrajectoryRecord solve_det(const DetProblem& problem, const SpatialGrid& grid,
                           double dt, double horizon, double L,
                           const DetOptions& opts) {
  const double dx = grid.dx();
  if (!(problem.params.r > 1.0))
    throw std::invalid_argument("solve_det: exponent r must be > 1");
  if (!(dt > 0.0) || dt > dx)
    throw std::invalid_argument("solve_det: need 0 < dt <= dx (CFL)");
  if (!(horizon > 0.0)) throw std::invalid_argument("solve_det: horizon <= 0");

  const int nn = grid.n_nodes();
  const double a = 0.25 * problem.params.kappa * problem.params.kappa;
  const double b = 0.5 * (problem.params.c1 * problem.params.c1 +
                          problem.params.c2 * problem.params.c2);
  const double r = problem.params.r;
  const double inv_dx2 = 1.0 / (dx * dx);

  std::vector<double> anchor(nn), behind(nn), cand(nn), vel(nn);
  for (int j = 0; j < nn; ++j) {
    anchor[j] = problem.u0(grid.x(j));
    vel[j] = problem.v0(grid.x(j));
  }
  double ends = std::max(std::abs(anchor[0]), std::abs(anchor[nn - 1]));
  if (ends != 0.0) {
    // stay quiet when the ends are only round-off away from zero
    if (ends > 1e-9 * (1.0 + sup_abs(anchor)))
      std::fprintf(
          stderr, "solve_det: initial data clamped to 0 at the pinned ends\n");
    anchor[0] = anchor[nn - 1] = 0.0;
  }
  vel[0] = vel[nn - 1] = 0.0;

  if (!(L > sup_abs(anchor)))
    throw std::invalid_argument("solve_det: threshold L must exceed sup|u0|");

  EigenPair eig = eigenpair(grid.domain);
  std::vector<double> w = projection_weights(grid, eig);
  auto phi_of = [&](const std::vector<double>& u) {
    double acc = 0.0;
    for (int j = 0; j < nn; ++j) acc += w[j] * u[j];
    return acc;
  };
  auto drift = [&](double u) { return a * pow_abs(u, r) - b * u; };
  auto accel = [&](const std::vector<double>& u, int j) {
    return (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dx2 + drift(u[j]);
  };

  TrajectoryRecord rec;
  double t = 0.0;
  double dt_cur = dt;
  auto record = [&](const std::vector<double>& u) {
    rec.t.push_back(t);
    rec.sup_norm.push_back(sup_abs(u));
    rec.max_val.push_back(*std::max_element(u.begin(), u.end()));
    rec.phi.push_back(phi_of(u));
    if (t <= opts.store_frames_until + 0.5 * dt_cur) rec.frames.push_back({t, u});
  };
  record(anchor);

  auto propose_taylor = [&]() {
    const double half_dt2 = 0.5 * dt_cur * dt_cur;
    cand[0] = cand[nn - 1] = 0.0;
    for (int j = 1; j < nn - 1; ++j)
      cand[j] = stencil::taylor(anchor[j], anchor[j - 1], anchor[j + 1],
                                vel[j], dt_cur, half_dt2, inv_dx2,
                                drift(anchor[j]));
  };
  auto propose_leap = [&]() {
    const double lam2 = (dt_cur / dx) * (dt_cur / dx);
    const double dt2 = dt_cur * dt_cur;
    cand[0] = cand[nn - 1] = 0.0;
    for (int j = 1; j < nn - 1; ++j)
      cand[j] = stencil::leap(behind[j], anchor[j - 1], anchor[j],
                              anchor[j + 1], lam2, dt2, drift(anchor[j]), 0.0);
  };

  bool have_vel = true;  // exact initial velocity; later steps use leapfrog
  int halvings = 0;
  const long max_accepted = 20'000'000;

  for (long steps = 0; t + 0.5 * dt_cur < horizon; ++steps) {
    if (steps >= max_accepted)
      throw NumericalError("solve_det: step budget exhausted");

    if (have_vel)
      propose_taylor();
    else
      propose_leap();

    if (!all_finite(cand)) {
      rec.blown_up = true;
      rec.overflow = true;
      rec.sigma_L = t;
      return rec;
    }

    // localize the crossing: halve the step and restart from the anchor
    while (sup_abs(cand) >= L && halvings < 20) {
      if (!have_vel) {
        // second-order velocity at the anchor from the trailing level
        for (int j = 1; j < nn - 1; ++j)
          vel[j] = (anchor[j] - behind[j]) / dt_cur +
                   0.5 * dt_cur * accel(anchor, j);
        vel[0] = vel[nn - 1] = 0.0;
        have_vel = true;
      }
      dt_cur *= 0.5;
      ++halvings;
      propose_taylor();
    }

    std::swap(behind, anchor);
    std::swap(anchor, cand);
    have_vel = false;
    t += dt_cur;
    record(anchor);
    if (rec.sup_norm.back() >= L) {
      rec.blown_up = true;
      rec.sigma_L = t;
      return rec;
    }
  }
  return rec;
}

ResidualSeries projection_residual(const TrajectoryRecord& record,
                                   double lambda1, double kappa, double r) {
  if (record.t.size() < 3)
    throw std::invalid_argument(
        "projection_residual: need at least three checkpoints");
  ResidualSeries out;
  const auto& t = record.t;
  const auto& p = record.phi;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
    double ddphi = 2.0 * (p[k - 1] * h1 - p[k] * (h0 + h1) + p[k + 1] * h0) /
                   (h0 * h1 * (h0 + h1));
    out.t.push_back(t[k]);
    out.value.push_back(ddphi + lambda1 * p[k] -
                        0.25 * kappa * kappa * pow_abs(p[k], r));
  }
  return out;
}

namespace {

// odd 2J-periodic evaluation of a function given on [0, J]
double odd_eval(const std::function<double(double)>& f, double z, double J) {
  double period = 2.0 * J;
  double w = z - period * std::floor(z / period);
  if (w < 0.0) w = 0.0;
  return w <= J ? f(w) : -f(period - w);
}

}  // namespace

MarginReport comparison_margin(std::span<const LatticeField> u_frames,
                               std::span<const LatticeField> v_frames,
                               const DetProblem& problem,
                               const SpatialGrid& grid) {
  if (u_frames.size() != v_frames.size() || u_frames.size() < 2)
    throw std::invalid_argument("comparison_margin: bad frame histories");
  const int nn = grid.n_nodes();
  const double J = grid.domain.J;
  const double a = 0.25 * problem.params.kappa * problem.params.kappa;
  const double b = 0.5 * (problem.params.c1 * problem.params.c1 +
                          problem.params.c2 * problem.params.c2);
  const double r = problem.params.r;

  // odd-image smoothing windows for the forcing of each frame
  std::vector<LatticeIntegral> force;
  force.reserve(v_frames.size());
  std::vector<double> tmp(nn);
  for (const auto& f : v_frames) {
    if (static_cast<int>(f.u.size()) != nn)
      throw std::invalid_argument("comparison_margin: frame/grid mismatch");
    for (int j = 0; j < nn; ++j) tmp[j] = a * pow_abs(f.u[j], r) - b * f.u[j];
    force.emplace_back(odd_extension(tmp), 2.0 * J);
  }

  // initial-push window (the v0 part of the free evolution)
  for (int j = 0; j < nn; ++j) tmp[j] = problem.v0(grid.x(j));
  LatticeIntegral push(odd_extension(tmp), 2.0 * J);

  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const std::size_t nf = v_frames.size();
  for (std::size_t i = 0; i < nf; ++i) {
    double ti = v_frames[i].t;
    double frame_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nn; ++j) {
      double x = grid.x(j);
      double ival = 0.5 * (odd_eval(problem.u0, x + ti, J) +
                           odd_eval(problem.u0, x - ti, J)) +
                    0.5 * push.window(x - ti, x + ti);
      // trapezoid in s over the stored frame times up to ti
      double conv = 0.0;
      for (std::size_t s = 0; s <= i; ++s) {
        double wgt;
        if (i == 0)
          wgt = 0.0;
        else if (s == 0)
          wgt = 0.5 * (v_frames[1].t - v_frames[0].t);
        else if (s == i)
          wgt = 0.5 * (v_frames[i].t - v_frames[i - 1].t);
        else
          wgt = 0.5 * (v_frames[s + 1].t - v_frames[s - 1].t);
        if (wgt == 0.0) continue;
        double tau = ti - v_frames[s].t;
        conv += wgt * 0.5 * force[s].window(x - tau, x + tau);
      }
      double m = v_frames[i].u[j] - (ival + conv);
      frame_min = std::min(frame_min, m);
      if (m < rep.min_margin) {
        rep.min_margin = m;
        rep.t_at = ti;
        rep.x_at = x;
      }
    }
    rep.time_min.push_back(frame_min);
  }
  return rep;
}

std::vector<LatticeField> comparison_witness(
    std::span<const LatticeField> u_frames, const DetProblem& problem) {
  if (u_frames.empty())
    throw std::invalid_argument("comparison_witness: empty history");
  double big = 0.0;
  for (const auto& f : u_frames)
    for (double x : f.u) big = std::max(big, x);
  const double r = problem.params.r;
  const double rate = (0.25 * r * problem.params.kappa * problem.params.kappa *
                           std::pow(big + 1.0, r - 1.0) -
                       0.5 * (problem.params.c1 * problem.params.c1 +
                              problem.params.c2 * problem.params.c2)) *
                      problem.domain.J;
  const double t_f = u_frames.back().t;
  std::vector<LatticeField> out(u_frames.begin(), u_frames.end());
  for (auto& f : out) {
    double f0 = std::exp(rate * (f.t - t_f));
    for (double& u : f.u) u += f0;
  }
  return out;
}

}  // namespace swe
