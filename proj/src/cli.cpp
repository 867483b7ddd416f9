#include "swe/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "swe/io.hpp"

namespace swe::cli {

namespace {

std::vector<double> sample(const std::function<double(double)>& f,
                           const SpatialGrid& grid) {
  std::vector<double> out(grid.n_nodes());
  for (int j = 0; j < grid.n_nodes(); ++j) out[j] = f(grid.x(j));
  return out;
}

// Hypothesis check plus the bound T on the base data. T stays unset when a
// hypothesis fails or the caller asked only for the check.
BoundReport bound_of(const RunConfig& cfg, const SpatialGrid& grid) {
  PhysParams params = params_of(cfg);
  auto u0 = sample(cfg.u0.to_function(cfg.J), grid);
  auto v0 = sample(cfg.v0.to_function(cfg.J), grid);
  BoundReport rep = check_hypotheses(u0, v0, grid, params);
  if (rep.h1_ok && rep.h2_ok) {
    BlowupTime bt = blowup_time(rep.alpha, rep.beta, rep.lambda1, cfg.kappa,
                                cfg.r);
    rep.T = bt.T;
    rep.T_error = bt.T_error;
  }
  return rep;
}

SpdeSpec spec_of(const RunConfig& cfg, double T) {
  SpdeSpec spec;
  spec.domain = Interval{cfg.J};
  spec.params = params_of(cfg);
  spec.f = nonlinearity_of(cfg);
  spec.T_bound = T;
  spec.epsilon = cfg.epsilon;
  spec.L = cfg.L;
  spec.boundary = boundary_of(cfg);
  spec.u0 = cfg.u0.to_function(cfg.J);
  spec.v0 = cfg.v0.to_function(cfg.J);
  return spec;
}

std::string joined(const std::string& dir, const std::string& name) {
  return dir.empty() ? name : dir + "/" + name;
}

std::uint64_t canonical_hash(const RunConfig& cfg) {
  // execution-only knobs must not change the experiment's identity
  RunConfig c = cfg;
  c.threads = 1;
  c.output_dir = "";
  c.keep_paths = false;
  return io::fnv1a(emit_config(c));
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int cmd_bound(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    SpatialGrid grid(Interval{inv.cfg.J}, inv.cfg.nx);
    BoundReport rep = bound_of(inv.cfg, grid);
    out << io::bound_report_json(rep);
    if (!rep.h1_ok || !rep.h2_ok) {
      err << "hypothesis check failed (h1_ok=" << (rep.h1_ok ? "true" : "false")
          << ", h2_ok=" << (rep.h2_ok ? "true" : "false") << ")\n";
      return 2;
    }
    return 0;
  });
}

int cmd_det_solve(const Invocation& inv, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig& cfg = inv.cfg;
    SpatialGrid grid(Interval{cfg.J}, cfg.nx);
    BoundReport rep = bound_of(cfg, grid);
    double horizon;
    if (cfg.horizon) {
      horizon = *cfg.horizon;
    } else if (rep.T) {
      horizon = *rep.T + cfg.epsilon;
    } else {
      err << "hypotheses fail, so no default horizon exists; set 'horizon'\n";
      return 2;
    }

    DetProblem prob{Interval{cfg.J}, params_of(cfg), cfg.u0.to_function(cfg.J),
                    cfg.v0.to_function(cfg.J)};
    double dt = cfg.cfl * grid.dx();
    TrajectoryRecord rec = solve_det(prob, grid, dt, horizon, cfg.L);

    io::write_file(joined(inv.output_dir, "trajectory.csv"),
                   io::trajectory_csv(rec));
    io::write_file(joined(inv.output_dir, "det_summary.json"),
                   io::det_summary_json(rec, rep, horizon, cfg.nx, dt, cfg.L));
    if (rec.sigma_L)
      out << "sigma_L " << *rec.sigma_L << (rec.overflow ? " (overflow)" : "")
          << "\n";
    else
      out << "no threshold crossing before t=" << horizon << "\n";
    return 0;
  });
}

int cmd_spde_run(const Invocation& inv, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig& cfg = inv.cfg;
    SpatialGrid grid(Interval{cfg.J}, cfg.nx);
    BoundReport rep = bound_of(cfg, grid);
    if (!rep.T) {
      err << "hypotheses fail; the initial-data scale needs the bound T\n";
      return 2;
    }
    SpdeSpec spec = spec_of(cfg, *rep.T);
    double dt = cfg.cfl * grid.dx();
    std::uint64_t seed = inv.seed ? *inv.seed : cfg.master_seed;
    PathResult path = simulate_path(spec, grid, dt, seed);

    io::write_file(joined(inv.output_dir, "path.csv"), io::path_csv(path));
    io::write_file(joined(inv.output_dir, "path.json"),
                   io::path_sidecar_json(path));
    if (path.sigma_L)
      out << "sigma_L " << *path.sigma_L << (path.overflow ? " (overflow)" : "")
          << "\n";
    else
      out << "no threshold crossing before t=" << spec.horizon() << "\n";
    return 0;
  });
}

int cmd_mc(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig& cfg = inv.cfg;
    SpatialGrid grid(Interval{cfg.J}, cfg.nx);
    BoundReport rep = bound_of(cfg, grid);
    if (!rep.T) {
      err << "hypotheses fail; the initial-data scale needs the bound T\n";
      return 2;
    }

    Campaign campaign;
    campaign.spec = spec_of(cfg, *rep.T);
    campaign.nx = cfg.nx;
    campaign.cfl = cfg.cfl;
    campaign.n_paths = cfg.n_paths;
    campaign.master_seed = cfg.master_seed;
    campaign.delta = cfg.delta;
    campaign.n_checkpoints = cfg.n_checkpoints;
    campaign.threads = cfg.threads;

    std::vector<PathResult> paths;
    McSummary summary = run_campaign(campaign, &paths);

    std::string run_dir =
        joined(inv.output_dir, "run_" + std::to_string(cfg.master_seed));
    double dt = cfg.cfl * grid.dx();
    io::write_file(joined(run_dir, "mc_summary.json"),
                   io::mc_summary_json(summary));
    io::write_file(joined(run_dir, "manifest.json"),
                   io::manifest_json(canonical_hash(cfg), cfg.nx, dt,
                                     summary.horizon));
    io::write_file(joined(run_dir, "blowup_hist.csv"),
                   io::blowup_histogram_csv(paths, summary.horizon, 24));
    io::write_file(joined(run_dir, "margin.csv"), io::margin_csv(summary));
    if (cfg.keep_paths) {
      char name[32];
      for (std::size_t i = 0; i < paths.size(); ++i) {
        std::snprintf(name, sizeof name, "paths/path_%05zu", i);
        io::write_file(joined(run_dir, std::string(name) + ".csv"),
                       io::path_csv(paths[i]));
        io::write_file(joined(run_dir, std::string(name) + ".json"),
                       io::path_sidecar_json(paths[i]));
      }
    }
    out << "p_hat " << summary.p_hat << "  ci95 [" << summary.ci_low << ", "
        << summary.ci_high << "]  n_blowup " << summary.n_blowup << "/"
        << summary.n_paths << "\n";
    return 0;
  });
}

int cmd_ode_check(const Invocation& inv, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&]() {
    const RunConfig& cfg = inv.cfg;
    SpatialGrid grid(Interval{cfg.J}, cfg.nx);
    BoundReport rep = bound_of(cfg, grid);
    if (!rep.T) {
      err << "hypotheses fail; nothing to cross-check\n";
      return 2;
    }
    OdeTrajectory ode =
        glassey_ode(rep.alpha, rep.beta, rep.lambda1, cfg.kappa, cfg.r,
                    cfg.ode_cap, cfg.ode_dt, 4.0 * *rep.T + 1.0);
    if (!ode.blowup_time)
      throw NumericalError("comparison trajectory stalled below the cap");
    double rel = std::abs(*ode.blowup_time - *rep.T) / *rep.T;
    out << "T " << *rep.T << "  ode_hit " << *ode.blowup_time << "  rel_diff "
        << rel << "  energy_drift " << ode.max_energy_drift << "\n";
    return 0;
  });
}

int run(const std::string& subcommand, const std::string& config_path,
        const std::optional<std::string>& output_dir,
        const std::optional<std::uint64_t>& seed, std::ostream& out,
        std::ostream& err) {
  Invocation inv;
  try {
    inv.cfg = load_config(config_path);
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return 3;
  }
  inv.output_dir = output_dir ? *output_dir : inv.cfg.output_dir;
  inv.seed = seed;

  if (subcommand == "bound") return cmd_bound(inv, out, err);
  if (subcommand == "det-solve") return cmd_det_solve(inv, out, err);
  if (subcommand == "spde-run") return cmd_spde_run(inv, out, err);
  if (subcommand == "mc") return cmd_mc(inv, out, err);
  if (subcommand == "ode-check") return cmd_ode_check(inv, out, err);
  err << "configuration error: unknown subcommand '" << subcommand << "'\n";
  return 3;
}

}  // namespace swe::cli
