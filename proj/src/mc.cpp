#include "swe/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

namespace swe {

namespace {

// Runs body(0..n-1) on `threads` workers; rethrows the lowest-index failure
// so error reporting does not depend on scheduling.
void parallel_index(int n, int threads,
                    const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::vector<std::pair<int, std::exception_ptr>> errors;

  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        errors.emplace_back(i, std::current_exception());
        failed.store(true);
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (!errors.empty()) {
    auto it = std::min_element(
        errors.begin(), errors.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rethrow_exception(it->second);
  }
}

std::size_t trim_count(double delta, std::size_t n) {
  double raw = delta * static_cast<double>(n) - 1e-9;
  if (raw <= 0.0) return 0;
  auto k = static_cast<std::size_t>(std::ceil(raw));
  return std::min(k, n);
}

// value of the recorded series at the last time <= query (frozen after the
// history ends)
double frozen_at(const std::vector<double>& times,
                 const std::vector<double>& values, double query) {
  auto it = std::upper_bound(times.begin(), times.end(), query + 1e-12);
  std::size_t idx = it == times.begin() ? 0 : (it - times.begin()) - 1;
  return values[idx];
}

double quantile(const std::vector<double>& sorted, double p) {
  double h = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double partial_expectation(std::span<const double> values, double delta) {
  if (values.empty())
    throw std::domain_error("partial_expectation: empty sample");
  if (!(delta >= 0.0) || delta > 1.0)
    throw std::invalid_argument(
        "partial_expectation: trimming fraction must be in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t keep = sorted.size() - trim_count(delta, sorted.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < keep; ++k) sum += sorted[k];
  return sum / static_cast<double>(values.size());
}

WilsonInterval wilson95(int successes, int n) {
  if (n <= 0 || successes < 0 || successes > n)
    throw std::invalid_argument("wilson95: bad counts");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  WilsonInterval out;
  double nn = n;
  double p = successes / nn;
  double denom = 1.0 + z * z / nn;
  double center = (p + z * z / (2.0 * nn)) / denom;
  double half =
      (z / denom) * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
  out.low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  out.high = successes == n ? 1.0 : std::min(1.0, center + half);
  return out;
}

McSummary run_campaign(const Campaign& c, std::vector<PathResult>* keep) {
  if (c.n_paths < 30)
    throw std::invalid_argument("campaign: need at least 30 paths");
  if (!(c.delta >= 0.0) || c.delta > 1.0 / 3.0)
    throw std::invalid_argument("campaign: delta must be in [0, 1/3]");
  if (c.n_checkpoints < 2)
    throw std::invalid_argument("campaign: need at least 2 checkpoints");
  if (!(c.cfl > 0.0) || c.cfl > 1.0)
    throw std::invalid_argument("campaign: cfl must be in (0, 1]");

  SpatialGrid grid(c.spec.domain, c.nx);
  const double dt = c.cfl * grid.dx();
  const double horizon = c.spec.horizon();

  std::vector<PathResult> paths(c.n_paths);
  parallel_index(c.n_paths, c.threads, [&](int i) {
    std::uint64_t seed =
        rng::derive_seed(c.master_seed, static_cast<std::uint64_t>(i));
    try {
      paths[i] = simulate_path(c.spec, grid, dt, seed);
    } catch (const std::invalid_argument&) {
      throw;  // uniform configuration failure, not a path-specific crash
    } catch (const std::exception& e) {
      throw NumericalError("path with seed " + std::to_string(seed) +
                           " failed: " + e.what());
    }
  });

  McSummary out;
  out.n_paths = c.n_paths;
  out.delta = c.delta;
  out.t_bound = c.spec.T_bound;
  out.horizon = horizon;

  for (const auto& p : paths) out.n_blowup += p.blown_up ? 1 : 0;
  out.p_hat = static_cast<double>(out.n_blowup) / c.n_paths;
  WilsonInterval ci = wilson95(out.n_blowup, c.n_paths);
  out.ci_low = ci.low;
  out.ci_high = ci.high;

  out.checkpoints.resize(c.n_checkpoints);
  for (int k = 0; k < c.n_checkpoints; ++k)
    out.checkpoints[k] = horizon * k / (c.n_checkpoints - 1);

  // trimming set: the ceil(delta N) paths with the largest overall sup-norm,
  // ties broken by path index so the summary is schedule-independent
  std::vector<int> order(paths.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> key(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    key[i] = *std::max_element(paths[i].sup_norm.begin(),
                               paths[i].sup_norm.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return key[a] != key[b] ? key[a] > key[b] : a < b;
  });
  std::vector<char> dropped(paths.size(), 0);
  std::size_t n_drop = trim_count(c.delta, paths.size());
  for (std::size_t k = 0; k < n_drop; ++k) dropped[order[k]] = 1;

  out.trimmed_sup_sq.resize(c.n_checkpoints);
  out.untrimmed_sup_sq.resize(c.n_checkpoints);
  for (int k = 0; k < c.n_checkpoints; ++k) {
    double all = 0.0, kept = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      double v = frozen_at(paths[i].t, paths[i].sup_u_sq, out.checkpoints[k]);
      all += v;
      if (!dropped[i]) kept += v;
    }
    out.untrimmed_sup_sq[k] = all / c.n_paths;
    out.trimmed_sup_sq[k] = kept / c.n_paths;
  }

  std::vector<double> sigmas;
  for (const auto& p : paths)
    if (p.sigma_L) sigmas.push_back(*p.sigma_L);
  if (!sigmas.empty()) {
    std::sort(sigmas.begin(), sigmas.end());
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
      out.sigma_quantiles.push_back(quantile(sigmas, q));
  }

  if (c.with_comparison) {
    DetProblem prob{c.spec.domain, c.spec.params, c.spec.u0, c.spec.v0};
    TrajectoryRecord ref = solve_det(prob, grid, dt, horizon, c.spec.L, {});
    out.comparison_max.resize(c.n_checkpoints);
    for (int k = 0; k < c.n_checkpoints; ++k)
      out.comparison_max[k] = frozen_at(ref.t, ref.max_val, out.checkpoints[k]);
  }

  if (keep) *keep = std::move(paths);
  return out;
}

IsometryReport isometry_report(const SpatialGrid& grid, double dt, int nt,
                               int n_paths, std::uint64_t master_seed,
                               const std::function<double(int, int)>& v,
                               int threads) {
  if (n_paths < 2) throw std::invalid_argument("isometry: need >= 2 paths");
  if (!(dt > 0.0)) throw std::invalid_argument("isometry: dt must be positive");
  if (nt < 1) throw std::invalid_argument("isometry: need at least one step");

  double sum_v2 = 0.0;
  for (int n = 0; n < nt; ++n)
    for (int j = 0; j < grid.nx; ++j) {
      double val = v(n, j);
      sum_v2 += val * val;
    }

  IsometryReport out;
  out.n_paths = n_paths;
  out.target = sum_v2 * (dt * grid.dx());

  std::vector<double> integral(n_paths);
  parallel_index(n_paths, threads, [&](int i) {
    NoiseField noise = sample_noise(
        grid, dt, nt,
        rng::derive_seed(master_seed, static_cast<std::uint64_t>(i)));
    double acc = 0.0;
    for (int n = 0; n < nt; ++n)
      for (int j = 0; j < grid.nx; ++j) acc += v(n, j) * noise.value(n, j);
    integral[i] = acc;
  });

  double mean = 0.0, m2 = 0.0;
  for (double x : integral) mean += x;
  mean /= n_paths;
  for (double x : integral) m2 += x * x;
  m2 /= n_paths;
  out.mean = mean;
  out.second_moment = m2;
  if (out.target > 0.0) {
    out.mean_z = mean / std::sqrt(out.target / n_paths);
    out.moment_z = (m2 - out.target) / (out.target * std::sqrt(2.0 / n_paths));
  }
  return out;
}

std::vector<double> trimmed_vs_comparison(const McSummary& summary) {
  if (summary.comparison_max.size() != summary.checkpoints.size() ||
      summary.trimmed_sup_sq.size() != summary.checkpoints.size())
    throw std::invalid_argument(
        "trimmed_vs_comparison: summary lacks the comparison curve");
  std::vector<double> margin(summary.checkpoints.size());
  for (std::size_t k = 0; k < margin.size(); ++k)
    margin[k] = summary.trimmed_sup_sq[k] - summary.comparison_max[k];
  return margin;
}

}  // namespace swe
