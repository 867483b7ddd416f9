#include "swe/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace {

using swe::Boundary;
using swe::DataSpec;
using swe::Nonlinearity;
using swe::PhysParams;
using swe::RunConfig;

TEST(ParseConfig, EmptyObjectYieldsDefaults) {
  RunConfig cfg = swe::parse_config("{}");
  EXPECT_DOUBLE_EQ(cfg.J, 1.0);
  EXPECT_DOUBLE_EQ(cfg.c1, 0.0);
  EXPECT_DOUBLE_EQ(cfg.c2, 0.0);
  EXPECT_DOUBLE_EQ(cfg.kappa, 1.0);
  EXPECT_DOUBLE_EQ(cfg.r, 2.0);
  EXPECT_EQ(cfg.f_choice, "power");
  EXPECT_EQ(std::get<std::string>(cfg.u0.value), "zero");
  EXPECT_EQ(std::get<std::string>(cfg.v0.value), "zero");
  EXPECT_EQ(cfg.nx, 128);
  EXPECT_DOUBLE_EQ(cfg.cfl, 0.9);
  EXPECT_DOUBLE_EQ(cfg.L, 1e3);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.5);
  EXPECT_FALSE(cfg.horizon.has_value());
  EXPECT_EQ(cfg.n_paths, 512);
  EXPECT_DOUBLE_EQ(cfg.delta, 0.0);
  EXPECT_EQ(cfg.master_seed, 1u);
  EXPECT_EQ(cfg.boundary, "periodic");
  EXPECT_EQ(cfg.threads, 1);
  EXPECT_EQ(cfg.n_checkpoints, 33);
  EXPECT_EQ(cfg.output_dir, "out");
  EXPECT_FALSE(cfg.keep_paths);
  EXPECT_DOUBLE_EQ(cfg.ode_cap, 1e6);
  EXPECT_DOUBLE_EQ(cfg.ode_dt, 1e-3);
}

TEST(ParseConfig, EmitthenParseIsIdentity) {
  const std::string doc = R"({
    "J": 3.141592653589793, "c1": 0.25, "c2": -0.5, "kappa": 2.0, "r": 2.5,
    "f_choice": "const 1.5", "u0": "sine_1 4", "v0": [0.0, 1.0, 0.5, 0.0],
    "nx": 96, "cfl": 0.85, "L": 500.0, "epsilon": 0.25, "horizon": 2.5,
    "n_paths": 64, "delta": 0.25, "master_seed": 31337,
    "boundary": "dirichlet", "threads": 4, "n_checkpoints": 17,
    "output_dir": "scratch", "keep_paths": true,
    "ode_cap": 100000.0, "ode_dt": 0.0005
  })";
  std::string once = swe::emit_config(swe::parse_config(doc));
  std::string twice = swe::emit_config(swe::parse_config(once));
  EXPECT_EQ(once, twice);

  RunConfig cfg = swe::parse_config(once);
  EXPECT_DOUBLE_EQ(cfg.cfl, 0.85);
  ASSERT_TRUE(cfg.horizon.has_value());
  EXPECT_DOUBLE_EQ(*cfg.horizon, 2.5);
  EXPECT_TRUE(cfg.keep_paths);
  auto table = std::get<std::vector<double>>(cfg.v0.value);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_DOUBLE_EQ(table[1], 1.0);

  // absent horizon survives the round trip as null
  std::string bare = swe::emit_config(swe::parse_config("{}"));
  EXPECT_EQ(bare, swe::emit_config(swe::parse_config(bare)));
  EXPECT_FALSE(swe::parse_config(bare).horizon.has_value());
  EXPECT_TRUE(swe::parse_config(R"({"horizon": null})").horizon ==
              std::nullopt);
}

TEST(DataSpec, NamedPresets) {
  double J = swe::pi;
  DataSpec sine{std::string("sine_1 4")};
  EXPECT_NEAR(sine.to_function(J)(swe::pi / 2.0), 4.0, 1e-12);
  DataSpec second{std::string("sine_2 1.5")};
  EXPECT_NEAR(second.to_function(J)(swe::pi / 4.0), 1.5, 1e-12);
  DataSpec flat{std::string("const -2.5")};
  EXPECT_DOUBLE_EQ(flat.to_function(J)(0.3), -2.5);
  DataSpec zero{std::string("zero")};
  EXPECT_DOUBLE_EQ(zero.to_function(J)(0.3), 0.0);

  for (const char* bad : {"sine_x 1", "sine_1", "const", "wiggle 3",
                          "sine_0 1", "const 1x"}) {
    DataSpec d{std::string(bad)};
    EXPECT_THROW(d.to_function(J), std::invalid_argument) << bad;
  }
}

TEST(DataSpec, TableInterpolatesAndClamps) {
  DataSpec d{std::vector<double>{0.0, 1.0, 0.0}};
  auto f = d.to_function(2.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.0);
  EXPECT_DOUBLE_EQ(f(0.5), 0.5);
  EXPECT_DOUBLE_EQ(f(1.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.5), 0.5);
  EXPECT_DOUBLE_EQ(f(-0.1), 0.0);
  EXPECT_DOUBLE_EQ(f(2.3), 0.0);
  DataSpec bad{std::vector<double>{5.0}};
  EXPECT_THROW(bad.to_function(2.0), std::invalid_argument);
}

TEST(ParseConfig, RejectsUnknownAndMistypedFields) {
  EXPECT_THROW(swe::parse_config(R"({"mystery": 1})"), std::invalid_argument);
  EXPECT_THROW(swe::parse_config(R"({"nx": "many"})"), std::invalid_argument);
  EXPECT_THROW(swe::parse_config(R"({"u0": 5})"), std::invalid_argument);
  EXPECT_THROW(swe::parse_config("{,"), std::invalid_argument);
  EXPECT_THROW(swe::parse_config("[1, 2]"), std::invalid_argument);
  EXPECT_THROW(swe::parse_config("42"), std::invalid_argument);
}

TEST(ParseConfig, ValidatesEveryNumericField) {
  for (const char* doc : {
           R"({"cfl": 1.5})", R"({"cfl": 0.0})", R"({"nx": 4})",
           R"({"r": 1.0})", R"({"delta": 0.34})", R"({"epsilon": -1.0})",
           R"({"horizon": -2.0})", R"({"boundary": "open"})",
           R"({"f_choice": "cubic"})", R"({"threads": 0})",
           R"({"n_checkpoints": 1})", R"({"n_paths": 0})", R"({"J": 0.0})",
           R"({"kappa": -1.0})", R"({"L": 0.0})", R"({"ode_cap": 0.0})",
           R"({"ode_dt": 0.0})", R"({"u0": "sine_1"})",
       }) {
    EXPECT_THROW(swe::parse_config(doc), std::invalid_argument) << doc;
  }
  // kappa = 0 is a legitimate noise-free configuration
  EXPECT_NO_THROW(swe::parse_config(R"({"kappa": 0.0})"));
}

TEST(Adapters, MapConfigOntoSolverTypes) {
  RunConfig cfg = swe::parse_config(
      R"({"J": 2.0, "c1": 0.5, "c2": -1.0, "kappa": 3.0, "r": 2.5,
          "f_choice": "const 2.5", "boundary": "dirichlet"})");
  PhysParams p = swe::params_of(cfg);
  EXPECT_DOUBLE_EQ(p.J, 2.0);
  EXPECT_DOUBLE_EQ(p.c1, 0.5);
  EXPECT_DOUBLE_EQ(p.c2, -1.0);
  EXPECT_DOUBLE_EQ(p.kappa, 3.0);
  EXPECT_DOUBLE_EQ(p.r, 2.5);
  // lambda1 folds the damping shift into the principal eigenvalue
  EXPECT_DOUBLE_EQ(p.lambda1(1.0), 1.0 + 0.5 * (0.25 + 1.0));

  Nonlinearity f = swe::nonlinearity_of(cfg);
  EXPECT_EQ(f.kind, Nonlinearity::Kind::constant);
  EXPECT_DOUBLE_EQ(f.value, 2.5);
  EXPECT_DOUBLE_EQ(f(123.0, p), 2.5);
  EXPECT_EQ(swe::boundary_of(cfg), Boundary::dirichlet);

  RunConfig power = swe::parse_config(R"({"kappa": 2.0, "r": 2.0})");
  Nonlinearity fp = swe::nonlinearity_of(power);
  EXPECT_EQ(fp.kind, Nonlinearity::Kind::power);
  EXPECT_DOUBLE_EQ(fp(-3.0, swe::params_of(power)), -18.0);
  EXPECT_EQ(swe::boundary_of(power), Boundary::periodic);

  RunConfig off = swe::parse_config(R"({"f_choice": "zero"})");
  EXPECT_EQ(swe::nonlinearity_of(off).kind, Nonlinearity::Kind::zero);
}

}  // namespace
