#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swe/spectral.hpp"

// Projected-mode analysis: hypothesis checks on the initial data, the
// quadrature bound T on the blow-up time, and the comparison ODE that the
// bound is derived from.

namespace swe {

struct PhysParams {
  double J = 1.0;
  double c1 = 0.0;    // linear drift coefficient
  double c2 = 0.0;    // linear noise coefficient
  double kappa = 1.0; // nonlinearity strength
  double r = 2.0;     // nonlinearity exponent, > 1

  double lambda1(double mu1) const {
    return mu1 + 0.5 * (c1 * c1 + c2 * c2);
  }
};

struct BoundReport {
  double mu1 = 0.0;
  double lambda1 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double threshold = 0.0;  // minimal admissible alpha
  bool h1_ok = false;      // nonnegative data, somewhere-positive velocity
  bool h2_ok = false;      // alpha >= threshold
  std::optional<double> T;
  std::optional<double> T_error;
};

struct OdeTrajectory {
  std::vector<double> t, phi, dphi;
  std::optional<double> blowup_time;  // first time phi reached the cap
  double cap = 0.0;
  double max_energy_drift = 0.0;  // relative to the running energy scale
};

// thrown when quadrature or time stepping cannot deliver a trustworthy value
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |s|^r, kept nonnegative regardless of the sign of s
double pow_abs(double s, double r);

// h(s) = (kappa^2/4) |s|^r - lambda1 s
double ode_force(double s, double lambda1, double kappa, double r);

// beta^2 + 2 * integral_alpha^s of h; the squared speed at level s
double energy_bracket(double s, double alpha, double beta, double lambda1,
                      double kappa, double r);

// 1/sqrt(energy_bracket); equals 1/beta at s = alpha exactly
double inverse_speed(double s, double alpha, double beta, double lambda1,
                     double kappa, double r);

// weighted averages of the initial data against psi
std::pair<double, double> compute_alpha_beta(std::span<const double> u0,
                                             std::span<const double> v0,
                                             const SpatialGrid& grid);

// Fills every BoundReport field except T / T_error.
BoundReport check_hypotheses(std::span<const double> u0,
                             std::span<const double> v0,
                             const SpatialGrid& grid,
                             const PhysParams& params);

struct BlowupTime {
  double T = 0.0;
  double T_error = 0.0;
};

// T = integral_alpha^infty inverse_speed, split at a finite S_max chosen so
// the analytic power-law tail carries a certified remainder below tolerance.
BlowupTime blowup_time(double alpha, double beta, double lambda1, double kappa,
                       double r, double rel_tol = 1e-8);

// phi'' = h(phi), phi(0) = alpha, phi'(0) = beta, integrated by adaptive RK4
// until phi reaches cap or t reaches horizon.
OdeTrajectory glassey_ode(double alpha, double beta, double lambda1,
                          double kappa, double r, double cap = 1e6,
                          double dt = 1e-3, double horizon = 1e4);

}  // namespace swe
