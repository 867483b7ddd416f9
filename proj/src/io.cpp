#include "swe/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace swe::io {

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json opt_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string bound_report_json(const BoundReport& r) {
  json j;
  j["mu1"] = r.mu1;
  j["lambda1"] = r.lambda1;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["threshold"] = r.threshold;
  j["h1_ok"] = r.h1_ok;
  j["h2_ok"] = r.h2_ok;
  j["T"] = opt_json(r.T);
  j["T_error"] = opt_json(r.T_error);
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
  std::string out = "t,sup_norm,phi\n";
  for (std::size_t k = 0; k < rec.t.size(); ++k)
    out += num(rec.t[k]) + "," + num(rec.sup_norm[k]) + "," +
           num(rec.phi[k]) + "\n";
  return out;
}

std::string det_summary_json(const TrajectoryRecord& rec,
                             const BoundReport& bound, double horizon, int nx,
                             double dt, double L) {
  json j;
  j["sigma_L"] = opt_json(rec.sigma_L);
  j["blown_up"] = rec.blown_up;
  j["overflow"] = rec.overflow;
  j["T"] = opt_json(bound.T);
  j["T_error"] = opt_json(bound.T_error);
  j["h1_ok"] = bound.h1_ok;
  j["h2_ok"] = bound.h2_ok;
  j["horizon"] = horizon;
  j["nx"] = nx;
  j["dt"] = dt;
  j["L"] = L;
  return j.dump(2) + "\n";
}

std::string path_csv(const PathResult& p) {
  std::string out = "t,sup_norm,phi,sup_u_sq\n";
  for (std::size_t k = 0; k < p.t.size(); ++k)
    out += num(p.t[k]) + "," + num(p.sup_norm[k]) + "," + num(p.phi[k]) +
           "," + num(p.sup_u_sq[k]) + "\n";
  return out;
}

std::string path_sidecar_json(const PathResult& p) {
  json j;
  j["seed"] = p.seed;
  j["sigma_L"] = opt_json(p.sigma_L);
  j["blown_up"] = p.blown_up;
  j["overflow"] = p.overflow;
  return j.dump(2) + "\n";
}

std::string mc_summary_json(const McSummary& s) {
  json j;
  j["n_paths"] = s.n_paths;
  j["n_blowup"] = s.n_blowup;
  j["p_hat"] = s.p_hat;
  j["ci_low"] = s.ci_low;
  j["ci_high"] = s.ci_high;
  j["delta"] = s.delta;
  j["t_bound"] = s.t_bound;
  j["horizon"] = s.horizon;
  j["checkpoints"] = s.checkpoints;
  j["trimmed_sup_sq"] = s.trimmed_sup_sq;
  j["untrimmed_sup_sq"] = s.untrimmed_sup_sq;
  j["comparison_max"] = s.comparison_max;
  j["sigma_quantiles"] = s.sigma_quantiles;
  return j.dump(2) + "\n";
}

std::string isometry_json(const IsometryReport& r) {
  json j;
  j["n_paths"] = r.n_paths;
  j["mean"] = r.mean;
  j["mean_z"] = r.mean_z;
  j["second_moment"] = r.second_moment;
  j["target"] = r.target;
  j["moment_z"] = r.moment_z;
  return j.dump(2) + "\n";
}

std::string blowup_histogram_csv(const std::vector<PathResult>& paths,
                                 double horizon, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  std::vector<int> count(bins, 0);
  for (const auto& p : paths) {
    if (!p.sigma_L) continue;
    double pos = *p.sigma_L / horizon * bins;
    int b = pos >= bins ? bins - 1 : static_cast<int>(pos);
    ++count[b];
  }
  std::string out = "bin_lo,bin_hi,count\n";
  for (int b = 0; b < bins; ++b)
    out += num(horizon * b / bins) + "," + num(horizon * (b + 1) / bins) +
           "," + std::to_string(count[b]) + "\n";
  return out;
}

std::string margin_csv(const McSummary& s) {
  std::string out = "t,trimmed_sup_sq,comparison_max,margin\n";
  for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
    double cmp = k < s.comparison_max.size() ? s.comparison_max[k] : 0.0;
    out += num(s.checkpoints[k]) + "," + num(s.trimmed_sup_sq[k]) + "," +
           num(cmp) + "," + num(s.trimmed_sup_sq[k] - cmp) + "\n";
  }
  return out;
}

std::string manifest_json(std::uint64_t config_hash, int nx, double dt,
                          double horizon) {
  char hex[19];
  std::snprintf(hex, sizeof hex, "0x%016llx",
                static_cast<unsigned long long>(config_hash));
  json j;
  j["config_hash"] = hex;
  j["nx"] = nx;
  j["dt"] = dt;
  j["horizon"] = horizon;
  j["versions"] = {{"swelab", "0.1.0"}};
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x00000100000001B3ULL;
  }
  return h;
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec)
      throw std::invalid_argument("cannot create directory '" +
                                  p.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' to write");
  out << content;
  out.close();
  if (!out) throw std::invalid_argument("short write to '" + path + "'");
}

}  // namespace swe::io
