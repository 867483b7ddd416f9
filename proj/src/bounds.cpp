#include "swe/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "swe/quadrature.hpp"

namespace swe {

namespace {

void check_exponents(double kappa, double r) {
  if (!(r > 1.0)) throw std::invalid_argument("bounds: exponent r must be > 1");
  if (!(kappa > 0.0))
    throw std::invalid_argument("bounds: kappa must be positive");
}

// precondition shared by the bound and the ODE: escape level reached
void check_escape(double alpha, double beta, double lambda1, double kappa,
                  double r) {
  if (!(beta > 0.0))
    throw std::domain_error("bounds: projected velocity beta must be > 0");
  if (ode_force(alpha, lambda1, kappa, r) < 0.0)
    throw std::domain_error(
        "bounds: alpha below the escape threshold (4 lambda1 / kappa^2)^(1/(r-1))");
}

}  // namespace

double pow_abs(double s, double r) { return std::pow(std::abs(s), r); }

double ode_force(double s, double lambda1, double kappa, double r) {
  return 0.25 * kappa * kappa * pow_abs(s, r) - lambda1 * s;
}

double energy_bracket(double s, double alpha, double beta, double lambda1,
                      double kappa, double r) {
  double a = kappa * kappa / (2.0 + 2.0 * r);
  return lambda1 * (alpha * alpha - s * s) + beta * beta +
         a * (std::pow(s, r + 1.0) - std::pow(alpha, r + 1.0));
}

double inverse_speed(double s, double alpha, double beta, double lambda1,
                     double kappa, double r) {
  double b = energy_bracket(s, alpha, beta, lambda1, kappa, r);
  if (!(b > 0.0))
    throw NumericalError("bounds: energy bracket vanished inside the range");
  return 1.0 / std::sqrt(b);
}

std::pair<double, double> compute_alpha_beta(std::span<const double> u0,
                                             std::span<const double> v0,
                                             const SpatialGrid& grid) {
  EigenPair eig = eigenpair(grid.domain);
  return {project(u0, grid, eig), project(v0, grid, eig)};
}

BoundReport check_hypotheses(std::span<const double> u0,
                             std::span<const double> v0,
                             const SpatialGrid& grid,
                             const PhysParams& params) {
  check_exponents(params.kappa, params.r);
  EigenPair eig = eigenpair(grid.domain);
  BoundReport rep;
  rep.mu1 = eig.mu1;
  rep.lambda1 = params.lambda1(eig.mu1);
  auto [a, b] = compute_alpha_beta(u0, v0, grid);
  rep.alpha = a;
  rep.beta = b;

  bool nonneg = true, some_velocity = false;
  for (double x : u0) nonneg = nonneg && x >= 0.0;
  for (double x : v0) {
    nonneg = nonneg && x >= 0.0;
    some_velocity = some_velocity || x > 0.0;
  }
  rep.h1_ok = nonneg && some_velocity;

  rep.threshold = std::pow(4.0 * rep.lambda1 / (params.kappa * params.kappa),
                           1.0 / (params.r - 1.0));
  rep.h2_ok = rep.alpha >= rep.threshold;
  return rep;
}

BlowupTime blowup_time(double alpha, double beta, double lambda1, double kappa,
                       double r, double rel_tol) {
  check_exponents(kappa, r);
  check_escape(alpha, beta, lambda1, kappa, r);
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::invalid_argument("blowup_time: tolerance out of range");

  auto g = [&](double s) {
    return inverse_speed(s, alpha, beta, lambda1, kappa, r);
  };

  // crude lower bound on T: the integrand decreases, so one cell suffices
  double t_lower = alpha / std::sqrt(energy_bracket(
                               2.0 * alpha, alpha, beta, lambda1, kappa, r));

  const double a_lead = kappa * kappa / (2.0 + 2.0 * r);
  const double c0 = lambda1 * alpha * alpha + beta * beta -
                    a_lead * std::pow(alpha, r + 1.0);
  const double p = 0.5 * (r + 1.0);

  // Grow the split point until the closed-form tail carries a certified
  // remainder below half the requested tolerance.
  double s_max = std::max(2.0 * alpha, alpha + 1.0);
  double tail = 0.0, tail_rem = 0.0;
  bool ok = false;
  for (int grow = 0; grow < 400; ++grow) {
    double d = lambda1 + std::abs(c0) / (s_max * s_max);
    double eps = d / (a_lead * std::pow(s_max, r - 1.0));
    if (eps <= 0.25) {
      double i1 = std::pow(s_max, 1.0 - p) / (p - 1.0);
      double i2 = std::pow(s_max, -p - r) / (p + r);
      double i3 = std::pow(s_max, 2.0 - p - r) / (p + r - 2.0);
      tail = std::pow(a_lead, -0.5) * i1 -
             0.5 * std::pow(a_lead, -1.5) * (c0 * i2 - lambda1 * i3);
      tail_rem = 0.77 * std::pow(a_lead, -2.5) * d * d *
                 std::pow(s_max, 3.0 - p - 2.0 * r) / (p + 2.0 * r - 3.0);
      if (tail_rem <= 0.5 * rel_tol * t_lower) {
        ok = true;
        break;
      }
    }
    s_max *= 2.0;
    if (!std::isfinite(s_max)) break;
  }
  if (!ok)
    throw NumericalError("blowup_time: tail split did not converge");

  QuadResult finite =
      adaptive_simpson(g, alpha, s_max, 0.5 * rel_tol * t_lower);

  BlowupTime out;
  out.T = finite.value + tail;
  out.T_error = finite.error + tail_rem + 4.0 * 1e-16 * out.T;
  if (!std::isfinite(out.T))
    throw NumericalError("blowup_time: quadrature overflowed");
  return out;
}

namespace {

struct OdeState {
  double phi, psi;
};

OdeState rk4(const OdeState& y, double dt, double lambda1, double kappa,
             double r) {
  auto acc = [&](double s) { return ode_force(s, lambda1, kappa, r); };
  double k1p = y.psi, k1v = acc(y.phi);
  double k2p = y.psi + 0.5 * dt * k1v, k2v = acc(y.phi + 0.5 * dt * k1p);
  double k3p = y.psi + 0.5 * dt * k2v, k3v = acc(y.phi + 0.5 * dt * k2p);
  double k4p = y.psi + dt * k3v, k4v = acc(y.phi + dt * k3p);
  return {y.phi + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
          y.psi + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

double potential(double s, double lambda1, double kappa, double r) {
  return kappa * kappa / (4.0 * (r + 1.0)) * std::pow(s, r + 1.0) -
         0.5 * lambda1 * s * s;
}

}  // namespace

OdeTrajectory glassey_ode(double alpha, double beta, double lambda1,
                          double kappa, double r, double cap, double dt,
                          double horizon) {
  if (!(r > 1.0)) throw std::invalid_argument("glassey_ode: r must be > 1");
  check_escape(alpha, beta, lambda1, kappa, r);
  if (!(cap > alpha)) throw std::invalid_argument("glassey_ode: cap <= alpha");
  if (!(dt > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("glassey_ode: dt and horizon must be > 0");

  const double tol = 1e-12;
  const double h_alpha = potential(alpha, lambda1, kappa, r);
  const double e0 = 0.5 * beta * beta;

  OdeTrajectory out;
  out.cap = cap;
  OdeState y{alpha, beta};
  double t = 0.0, h = dt;
  auto record = [&] {
    out.t.push_back(t);
    out.phi.push_back(y.phi);
    out.dphi.push_back(y.psi);
    double kin = 0.5 * y.psi * y.psi;
    double pot = potential(y.phi, lambda1, kappa, r) - h_alpha;
    double drift = std::abs(kin - pot - e0);
    double scale = std::max({kin, std::abs(pot), e0});
    out.max_energy_drift = std::max(out.max_energy_drift, drift / scale);
  };
  record();

  const std::size_t max_steps = 20'000'000;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (t >= horizon) return out;
    if (t + h > horizon) h = horizon - t;

    OdeState full = rk4(y, h, lambda1, kappa, r);
    OdeState half = rk4(rk4(y, 0.5 * h, lambda1, kappa, r), 0.5 * h, lambda1,
                        kappa, r);
    double ep = std::abs(full.phi - half.phi) / std::max(std::abs(y.phi), 1.0);
    double ev = std::abs(full.psi - half.psi) / std::max(std::abs(y.psi), 1.0);
    double err = std::max(ep, ev);

    if (err <= tol) {
      if (full.phi >= cap) {
        // bisect the step length to land just past the cap
        double lo = 0.0, hi = h;
        for (int it = 0; it < 80 && (hi - lo) > 1e-14 * h; ++it) {
          double mid = 0.5 * (lo + hi);
          OdeState probe = rk4(y, mid, lambda1, kappa, r);
          (probe.phi >= cap ? hi : lo) = mid;
        }
        y = rk4(y, hi, lambda1, kappa, r);
        t += hi;
        record();
        out.blowup_time = t;
        return out;
      }
      y = {half.phi + (half.phi - full.phi) / 15.0,
           half.psi + (half.psi - full.psi) / 15.0};
      t += h;
      record();
      if (y.phi >= cap) {
        out.blowup_time = t;
        return out;
      }
    }
    double shrink = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    h *= std::clamp(shrink, 0.2, 5.0);
    if (!(h > 1e-18 * std::max(1.0, t)))
      throw NumericalError("glassey_ode: step size underflow before the cap");
  }
  throw NumericalError("glassey_ode: step budget exhausted before the cap");
}

}  // namespace swe
