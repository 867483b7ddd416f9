#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swe/mc.hpp"

// Flat JSON run configuration shared by every subcommand. Parsing validates
// all numeric fields up front; emit/parse round-trips to an identical
// document.

namespace swe {

// Initial-data descriptor: a named preset ("sine_1 4" for 4 sin(pi x / J),
// "const -1", "zero") or nodal samples interpolated linearly on a uniform
// grid over [0, J].
struct DataSpec {
  std::variant<std::string, std::vector<double>> value = std::string("zero");

  std::function<double(double)> to_function(double J) const;
};

struct RunConfig {
  double J = 1.0;
  double c1 = 0.0, c2 = 0.0;
  double kappa = 1.0;
  double r = 2.0;
  std::string f_choice = "power";  // power | zero | const <C>
  DataSpec u0, v0;
  int nx = 128;
  double cfl = 0.9;
  double L = 1e3;
  double epsilon = 0.5;
  std::optional<double> horizon;  // explicit det-solve horizon
  int n_paths = 512;
  double delta = 0.0;
  std::uint64_t master_seed = 1;
  std::string boundary = "periodic";
  int threads = 1;
  int n_checkpoints = 33;
  std::string output_dir = "out";
  bool keep_paths = false;
  double ode_cap = 1e6;
  double ode_dt = 1e-3;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);

PhysParams params_of(const RunConfig& cfg);
Nonlinearity nonlinearity_of(const RunConfig& cfg);
Boundary boundary_of(const RunConfig& cfg);

}  // namespace swe
