#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "swe/bounds.hpp"
#include "swe/spectral.hpp"

// Explicit solver for the deterministic focusing wave problem
//   u_tt = u_xx + (kappa^2/4)|u|^r - ((c1^2+c2^2)/2) u,   u(t,0)=u(t,J)=0,
// plus the integral-form diagnostics used to audit it.

namespace swe {

struct DetProblem {
  Interval domain;
  PhysParams params;
  std::function<double(double)> u0, v0;
};

// nodal values at one time level
struct LatticeField {
  double t = 0.0;
  std::vector<double> u;
};

struct TrajectoryRecord {
  std::vector<double> t, sup_norm, phi;
  std::vector<double> max_val;  // signed max over nodes (sup_norm drops signs)
  std::optional<double> sigma_L;  // first recorded time with sup_norm >= L
  bool blown_up = false;
  bool overflow = false;  // stopped by non-finite values, not by reaching L
  std::vector<LatticeField> frames;  // dense history, kept while t <= frame window
};

struct DetOptions {
  double store_frames_until = 0.0;  // keep full fields for t <= this
};

// Leapfrog with a Taylor first step. dt must not exceed dx. Near the
// threshold L the step is halved (at most 20 times) to localize sigma_L.
TrajectoryRecord solve_det(const DetProblem& problem, const SpatialGrid& grid,
                           double dt, double horizon, double L,
                           const DetOptions& opts = {});

struct ResidualSeries {
  std::vector<double> t, value;
};

// Finite-difference check of phi'' + lambda1 phi - (kappa^2/4)|phi|^r >= 0
// along a recorded trajectory (the Jensen surplus of the projected mode).
ResidualSeries projection_residual(const TrajectoryRecord& record,
                                   double lambda1, double kappa, double r);

struct MarginReport {
  double min_margin = 0.0;
  double t_at = 0.0, x_at = 0.0;  // where the minimum is attained
  std::vector<double> time_min;   // min over x at each frame time
};

// m(t,x) = v - [I + S * ((kappa^2/4)|v|^r - ((c1^2+c2^2)/2) v)] evaluated on
// the frame lattice with kernels matched to the pinned-end problem (odd
// images on the doubled interval). v = U gives ~0; supersolutions give > 0.
MarginReport comparison_margin(std::span<const LatticeField> u_frames,
                               std::span<const LatticeField> v_frames,
                               const DetProblem& problem,
                               const SpatialGrid& grid);

// Supersolution candidate U + f0, f0(t) = exp(rate (t - t_f)) with
// rate = (r kappa^2/4 (M+1)^{r-1} - (c1^2+c2^2)/2) J and M = max U.
std::vector<LatticeField> comparison_witness(
    std::span<const LatticeField> u_frames, const DetProblem& problem);

}  // namespace swe
