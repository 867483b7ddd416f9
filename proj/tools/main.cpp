#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swe/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Blow-up laboratory for the noise-driven semilinear wave "
               "equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir_flag;
  bool output_dir_set = false;
  std::uint64_t seed_flag = 0;
  bool seed_set = false;

  const char* names[] = {"bound", "det-solve", "spde-run", "mc", "ode-check"};
  const char* blurbs[] = {
      "hypothesis check and the blow-up-time bound T (JSON on stdout)",
      "deterministic comparison run: trajectory CSV and summary JSON",
      "one noise-driven path: history CSV and sidecar JSON",
      "Monte Carlo campaign: summary JSON, histogram and margin CSVs",
      "cross-check of the bound T against the comparison trajectory"};
  for (int k = 0; k < 5; ++k) {
    CLI::App* sub = app.add_subcommand(names[k], blurbs[k]);
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
    sub->add_option_function<std::string>(
        "--output-dir",
        [&](const std::string& v) {
          output_dir_flag = v;
          output_dir_set = true;
        },
        "directory for artifacts (default: config output_dir)");
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&](std::uint64_t v) {
          seed_flag = v;
          seed_set = true;
        },
        "path seed override (default: config master_seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  std::optional<std::string> output_dir;
  if (output_dir_set) output_dir = output_dir_flag;
  std::optional<std::uint64_t> seed;
  if (seed_set) seed = seed_flag;

  return swe::cli::run(app.get_subcommands().front()->get_name(), config_path,
                       output_dir, seed, std::cout, std::cerr);
}
