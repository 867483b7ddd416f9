#pragma once

// Single-node update formulas shared by the deterministic and stochastic
// engines. Keeping them in one place pins the floating-point expression
// shape, so configurations that should agree do so bit for bit.

namespace swe::stencil {

// leapfrog: next = 2 u - prev + lam2 * (laplacian) + dt^2 * drift + kick
inline double leap(double prev, double um, double uc, double up, double lam2,
                   double dt2, double drift, double kick) {
  return 2.0 * uc - prev + lam2 * (up - 2.0 * uc + um) + dt2 * drift + kick;
}

// second-order Taylor start: u + dt v + (dt^2/2) (u_xx + drift)
inline double taylor(double uc, double um, double up, double v, double dt,
                     double half_dt2, double inv_dx2, double drift) {
  return uc + dt * v + half_dt2 * ((up - 2.0 * uc + um) * inv_dx2 + drift);
}

}  // namespace swe::stencil
