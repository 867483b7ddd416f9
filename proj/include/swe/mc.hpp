#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swe/spde.hpp"

// Monte Carlo layer: independent paths in parallel, first-passage counting
// with a Wilson interval, trimmed second-moment curves against the
// deterministic reference field, and the discrete noise-pairing check.

namespace swe {

struct Campaign {
  SpdeSpec spec;
  int nx = 128;
  double cfl = 0.9;
  int n_paths = 512;
  std::uint64_t master_seed = 1;
  double delta = 0.0;      // trimming fraction, in [0, 1/3]
  int n_checkpoints = 33;  // evenly spaced from 0 to the horizon
  int threads = 1;
  bool with_comparison = true;  // attach the deterministic reference curve
};

struct McSummary {
  int n_paths = 0;
  int n_blowup = 0;  // paths whose sup-norm reached L before the horizon
  double p_hat = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // 95% Wilson
  double delta = 0.0;
  double t_bound = 0.0, horizon = 0.0;
  std::vector<double> checkpoints;
  std::vector<double> trimmed_sup_sq;    // E_delta[sup_x u^2] per checkpoint
  std::vector<double> untrimmed_sup_sq;  // the delta = 0 curve
  std::vector<double> comparison_max;    // signed max of the reference field
  std::vector<double> sigma_quantiles;   // 0/25/50/75/100% of recorded sigma_L
};

// Un-normalized trimmed mean: drop the ceil(delta*N) largest values, then
// divide the surviving sum by the full N (not by the kept count).
double partial_expectation(std::span<const double> values, double delta);

struct WilsonInterval {
  double low = 0.0, high = 0.0;
};
WilsonInterval wilson95(int successes, int n);

// Runs n_paths with seeds derived from (master_seed, index) and aggregates
// in index order, so the summary does not depend on the thread count.
// Truncated histories contribute their final (frozen) value to later
// checkpoints. Pass `keep` to also receive the per-path results.
McSummary run_campaign(const Campaign& c,
                       std::vector<PathResult>* keep = nullptr);

struct IsometryReport {
  int n_paths = 0;
  double mean = 0.0, mean_z = 0.0;
  double second_moment = 0.0;
  double target = 0.0;  // sum of v^2 dt dx over the lattice
  double moment_z = 0.0;
};

// Monte Carlo check that sum_{n,j} v(n,j) dW(n,j) has mean 0 and second
// moment equal to target. Zero target forces both z-scores to 0.
IsometryReport isometry_report(const SpatialGrid& grid, double dt, int nt,
                               int n_paths, std::uint64_t master_seed,
                               const std::function<double(int, int)>& v,
                               int threads = 1);

// E_delta[sup_x u^2](t) minus max_x of the reference field, per checkpoint.
std::vector<double> trimmed_vs_comparison(const McSummary& summary);

}  // namespace swe
