#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "swe/config.hpp"

// Subcommand bodies behind the executable. Each returns the process exit
// code: 0 success, 2 failed data hypotheses, 3 configuration error,
// 4 numerical failure. Nothing is written to output_dir on code 3.

namespace swe::cli {

struct Invocation {
  RunConfig cfg;
  std::string output_dir;              // already resolved against the flag
  std::optional<std::uint64_t> seed;   // --seed override for spde-run
};

int cmd_bound(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_det_solve(const Invocation& inv, std::ostream& out,
                  std::ostream& err);
int cmd_spde_run(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_mc(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_ode_check(const Invocation& inv, std::ostream& out,
                  std::ostream& err);

// Loads the config, dispatches to the subcommand, and maps exceptions to
// exit codes.
int run(const std::string& subcommand, const std::string& config_path,
        const std::optional<std::string>& output_dir,
        const std::optional<std::uint64_t>& seed, std::ostream& out,
        std::ostream& err);

}  // namespace swe::cli
