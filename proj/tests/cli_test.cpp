#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Res {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  out << text;
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::path(::testing::TempDir()) / ("swelab_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Res run_cli(const std::string& args, const fs::path& scratch) {
  fs::path of = scratch / "stdout.txt", ef = scratch / "stderr.txt";
  std::string cmd = std::string(SWELAB_BIN) + " " + args + " > " +
                    of.string() + " 2> " + ef.string();
  int rc = std::system(cmd.c_str());
  Res r;
  if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(of);
  r.err = slurp(ef);
  return r;
}

const char* kGoldenData = R"("J": 3.141592653589793, "kappa": 2.0, "r": 2.0,
  "u0": "sine_1 4", "v0": "sine_1 1")";

// first number following `key` in free-form "key value" console output
double value_after(const std::string& text, const std::string& key) {
  auto pos = text.find(key);
  EXPECT_NE(pos, std::string::npos) << "missing " << key << " in:\n" << text;
  if (pos == std::string::npos) return 0.0;
  return std::stod(text.substr(pos + key.size()));
}

TEST(CliBound, GoldenDataSatisfiesBothHypotheses) {
  fs::path dir = scratch_dir("bound_golden");
  fs::path cfg = dir / "cfg.json";
  spit(cfg, std::string("{") + kGoldenData + ", \"nx\": 512}");
  Res r = run_cli("bound --config " + cfg.string(), dir);
  EXPECT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["h1_ok"].get<bool>());
  EXPECT_TRUE(j["h2_ok"].get<bool>());
  EXPECT_DOUBLE_EQ(j["threshold"].get<double>(), 1.0);
  EXPECT_NEAR(j["alpha"].get<double>(), 3.14159265, 1e-4);
  ASSERT_TRUE(j["T"].is_number());
  EXPECT_NEAR(j["T"].get<double>(), 1.7403355492896130, 1e-4);
}

TEST(CliBound, FailedHypothesesExitTwoButStillReport) {
  fs::path dir = scratch_dir("bound_flat");
  fs::path cfg = dir / "cfg.json";
  spit(cfg, R"({"J": 3.141592653589793, "kappa": 2.0, "r": 2.0,
                "u0": "sine_1 4", "v0": "zero"})");
  Res r = run_cli("bound --config " + cfg.string(), dir);
  EXPECT_EQ(r.code, 2);
  json j = json::parse(r.out);
  EXPECT_FALSE(j["h1_ok"].get<bool>());
  EXPECT_TRUE(j["T"].is_null());
}

TEST(CliErrors, ConfigProblemsExitThreeAndWriteNothing) {
  fs::path dir = scratch_dir("errors");
  fs::path out_dir = dir / "results";

  fs::path broken = dir / "broken.json";
  spit(broken, "{,");
  Res r = run_cli(
      "det-solve --config " + broken.string() + " --output-dir " +
          out_dir.string(),
      dir);
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(out_dir));

  fs::path bad_cfl = dir / "bad_cfl.json";
  spit(bad_cfl, std::string("{") + kGoldenData + ", \"cfl\": 1.5}");
  r = run_cli(
      "det-solve --config " + bad_cfl.string() + " --output-dir " +
          out_dir.string(),
      dir);
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(out_dir));

  r = run_cli("det-solve --config " + (dir / "absent.json").string(), dir);
  EXPECT_EQ(r.code, 3);

  r = run_cli("frobnicate --config " + bad_cfl.string(), dir);
  EXPECT_EQ(r.code, 3);

  r = run_cli("bound", dir);  // --config is required
  EXPECT_EQ(r.code, 3);
}

TEST(CliDetSolve, ZeroDataNeedsAnExplicitHorizon) {
  fs::path dir = scratch_dir("det_zero");
  fs::path cfg = dir / "cfg.json";
  fs::path out_dir = dir / "results";
  spit(cfg, R"({"J": 2.0, "kappa": 2.0, "r": 2.0, "u0": "zero", "v0": "zero",
                "nx": 64, "horizon": 1.0})");
  Res r = run_cli(
      "det-solve --config " + cfg.string() + " --output-dir " +
          out_dir.string(),
      dir);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("no threshold crossing"), std::string::npos);

  json j = json::parse(slurp(out_dir / "det_summary.json"));
  EXPECT_TRUE(j["sigma_L"].is_null());
  EXPECT_FALSE(j["blown_up"].get<bool>());

  std::istringstream csv(slurp(out_dir / "trajectory.csv"));
  std::string line;
  ASSERT_TRUE(std::getline(csv, line));
  EXPECT_EQ(line, "t,sup_norm,phi");
  int rows = 0;
  while (std::getline(csv, line)) {
    auto c1 = line.find(','), c2 = line.rfind(',');
    ASSERT_NE(c1, std::string::npos);
    EXPECT_DOUBLE_EQ(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), 0.0);
    EXPECT_DOUBLE_EQ(std::stod(line.substr(c2 + 1)), 0.0);
    ++rows;
  }
  EXPECT_GT(rows, 10);

  // without a horizon the failed hypotheses leave no default stop time
  fs::path cfg2 = dir / "cfg2.json";
  spit(cfg2, R"({"J": 2.0, "kappa": 2.0, "r": 2.0, "u0": "zero",
                 "v0": "zero", "nx": 64})");
  r = run_cli("det-solve --config " + cfg2.string(), dir);
  EXPECT_EQ(r.code, 2);
}

TEST(CliDetSolve, GoldenDataCrossesBeforeTheBound) {
  fs::path dir = scratch_dir("det_golden");
  fs::path cfg = dir / "cfg.json";
  fs::path out_dir = dir / "results";
  spit(cfg, std::string("{") + kGoldenData + ", \"nx\": 128}");
  Res r = run_cli(
      "det-solve --config " + cfg.string() + " --output-dir " +
          out_dir.string(),
      dir);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("sigma_L"), std::string::npos);
  json j = json::parse(slurp(out_dir / "det_summary.json"));
  ASSERT_TRUE(j["sigma_L"].is_number());
  ASSERT_TRUE(j["T"].is_number());
  EXPECT_TRUE(j["blown_up"].get<bool>());
  EXPECT_LT(j["sigma_L"].get<double>(), j["T"].get<double>());
}

std::string mc_config(int threads, const std::string& extra = "") {
  std::ostringstream ss;
  ss << "{" << kGoldenData
     << R"(, "f_choice": "zero", "nx": 32, "n_paths": 32,
        "n_checkpoints": 5, "epsilon": 0.25, "master_seed": 9, "threads": )"
     << threads << extra << "}";
  return ss.str();
}

TEST(CliMc, ZeroNoiseCampaignNeverBlowsUpAndRerunsIdentically) {
  fs::path dir = scratch_dir("mc_zero_noise");
  fs::path cfg = dir / "cfg.json";
  spit(cfg, mc_config(2, R"(, "keep_paths": true)"));

  fs::path out_a = dir / "a", out_b = dir / "b";
  Res r = run_cli(
      "mc --config " + cfg.string() + " --output-dir " + out_a.string(), dir);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("p_hat 0"), std::string::npos);

  fs::path run_dir = out_a / "run_9";
  json j = json::parse(slurp(run_dir / "mc_summary.json"));
  EXPECT_EQ(j["n_blowup"].get<int>(), 0);
  EXPECT_DOUBLE_EQ(j["p_hat"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(j["ci_low"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(run_dir / "manifest.json"));
  EXPECT_TRUE(fs::exists(run_dir / "blowup_hist.csv"));
  EXPECT_TRUE(fs::exists(run_dir / "margin.csv"));
  EXPECT_TRUE(fs::exists(run_dir / "paths" / "path_00000.csv"));
  EXPECT_TRUE(fs::exists(run_dir / "paths" / "path_00031.json"));

  Res r2 = run_cli(
      "mc --config " + cfg.string() + " --output-dir " + out_b.string(), dir);
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(r.out, r2.out);
  EXPECT_EQ(slurp(run_dir / "mc_summary.json"),
            slurp(out_b / "run_9" / "mc_summary.json"));
  EXPECT_EQ(slurp(run_dir / "manifest.json"),
            slurp(out_b / "run_9" / "manifest.json"));
}

TEST(CliMc, ExecutionKnobsDoNotLeakIntoTheArtifacts) {
  fs::path dir = scratch_dir("mc_knobs");
  fs::path cfg1 = dir / "one.json", cfg8 = dir / "eight.json";
  spit(cfg1, mc_config(1, R"(, "output_dir": "somewhere")"));
  spit(cfg8, mc_config(8, R"(, "output_dir": "elsewhere")"));
  fs::path out_a = dir / "a", out_b = dir / "b";
  Res r1 = run_cli(
      "mc --config " + cfg1.string() + " --output-dir " + out_a.string(),
      dir);
  Res r8 = run_cli(
      "mc --config " + cfg8.string() + " --output-dir " + out_b.string(),
      dir);
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r8.code, 0);
  EXPECT_EQ(slurp(out_a / "run_9" / "mc_summary.json"),
            slurp(out_b / "run_9" / "mc_summary.json"));
  EXPECT_EQ(slurp(out_a / "run_9" / "manifest.json"),
            slurp(out_b / "run_9" / "manifest.json"));
}

TEST(CliSpdeRun, SeedFlagControlsThePath) {
  fs::path dir = scratch_dir("spde_seed");
  fs::path cfg = dir / "cfg.json";
  spit(cfg, std::string("{") + kGoldenData +
                ", \"nx\": 32, \"epsilon\": 0.1}");
  fs::path a = dir / "a", b = dir / "b", c = dir / "c";
  Res ra = run_cli(
      "spde-run --config " + cfg.string() + " --seed 42 --output-dir " +
          a.string(),
      dir);
  EXPECT_EQ(ra.code, 0) << ra.err;
  Res rb = run_cli(
      "spde-run --config " + cfg.string() + " --seed 42 --output-dir " +
          b.string(),
      dir);
  Res rc = run_cli(
      "spde-run --config " + cfg.string() + " --seed 43 --output-dir " +
          c.string(),
      dir);
  EXPECT_EQ(rb.code, 0);
  EXPECT_EQ(rc.code, 0);

  std::string csv_a = slurp(a / "path.csv");
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a, slurp(b / "path.csv"));
  EXPECT_NE(csv_a, slurp(c / "path.csv"));
  json ja = json::parse(slurp(a / "path.json"));
  EXPECT_EQ(ja["seed"].get<std::uint64_t>(), 42u);
}

TEST(CliOdeCheck, CapHitTracksTheBound) {
  fs::path dir = scratch_dir("ode_check");
  fs::path cfg = dir / "cfg.json";
  spit(cfg, std::string("{") + kGoldenData + ", \"nx\": 256}");
  Res r = run_cli("ode-check --config " + cfg.string(), dir);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_LT(value_after(r.out, "rel_diff"), 0.01);
  EXPECT_LT(value_after(r.out, "energy_drift"), 1e-6);
  double T = value_after(r.out, "T");
  double hit = value_after(r.out, "ode_hit");
  EXPECT_LT(hit, T);
  EXPECT_NEAR(T, 1.7403355492896130, 1e-4);
}

}  // namespace
