#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsfrac/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = TSFRAC_TEST_DATA;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tsfrac_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(TSFRAC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_config(tsfrac::cli::RunConfig cfg) {
  std::ostringstream out, err;
  return tsfrac::cli::run(cfg, out, err);
}

}  // namespace

TEST(Cli, FracintOnIntegers) {
  const auto out = scratch("fracint");
  ASSERT_EQ(run_tool("fracint --input " + kData + "/fracint_integers.json --out " + out.string()), 0);
  std::istringstream csv(slurp(out / "fracint.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,value");
  bool found = false;
  while (std::getline(csv, line)) {
    if (line.rfind("2,", 0) == 0) {
      EXPECT_NEAR(std::stod(line.substr(2)), 0.96313, 5e-6);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, FracintFromCsvRightSide) {
  const auto out = scratch("fracint_csv");
  ASSERT_EQ(run_tool("fracint --input " + kData + "/fracint_csv.json --grid-N 2 --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "fracint.json"));
  EXPECT_EQ(report["side"], "right");
}

TEST(Cli, FracderivWithPointValue) {
  const auto out = scratch("fracderiv");
  ASSERT_EQ(run_tool("fracderiv --input " + kData + "/fracderiv_power.json --grid-N 1024 --t 1 --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "fracderiv.json"));
  // Gamma(3)/Gamma(2.5) (psi(1) - psi(0))^{1.5}
  EXPECT_NEAR(report["value"].get<double>(), 2.0 / std::tgamma(2.5), 2e-3);
}

TEST(Cli, DescribeTimescale) {
  const auto out = scratch("describe");
  ASSERT_EQ(run_tool("describe-timescale --input " + kData + "/timescale_gap.json --t 0 --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "timescale.json"));
  EXPECT_EQ(report["at"]["sigma"], 1.0);
  EXPECT_EQ(report["isolated_points"].size(), 1u);
}

TEST(Cli, SolveIvpConstant) {
  const auto out = scratch("ivp");
  ASSERT_EQ(run_tool("solve-ivp --input " + kData + "/ivp_constant.json --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "report.json"));
  EXPECT_TRUE(report["converged"].get<bool>());
  EXPECT_LE(report["residual"].get<double>(), 1e-6);
  EXPECT_NEAR(report["y_at_1"].get<double>(), 1.0 / std::tgamma(1.5), 1e-4);
  EXPECT_EQ(slurp(out / "solution.csv").substr(0, 8), "t,value\n");
}

TEST(Cli, SynthesizeControl) {
  const auto out = scratch("control");
  ASSERT_EQ(run_tool("synthesize-control --input " + kData + "/control_discrete.json --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "control.json"));
  EXPECT_LE(report["terminal_error"].get<double>(), 1e-8);
  EXPECT_EQ(slurp(out / "control.csv").substr(0, 4), "t,u\n");
}

TEST(Cli, Verify) {
  const auto out = scratch("verify");
  ASSERT_EQ(run_tool("verify --seed 5 --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "verify.json"));
  EXPECT_TRUE(report.is_array());
  EXPECT_GE(report.size(), 10u);
  EXPECT_FALSE(slurp(out / "verify.txt").empty());
}

TEST(Cli, DeterministicOutputs) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    ASSERT_EQ(run_tool("solve-ivp --input " + kData + "/ivp_cosine.json --grid-N 128 --out " + dir.string()), 0);
    ASSERT_EQ(run_tool("verify --seed 9 --out " + dir.string()), 0);
  }
  for (const char* f : {"solution.csv", "report.json", "verify.json", "verify.txt"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Cli, UnknownKeyIsValidationError) {
  EXPECT_EQ(run_tool("solve-ivp --input " + kData + "/unknown_key.json --out " + scratch("bad").string()), 2);
}

TEST(Cli, ExitCodes) {
  const auto out = scratch("codes").string();
  EXPECT_EQ(run_tool("fracint --input /nonexistent.json --out " + out), 2);
  EXPECT_EQ(run_tool("fracint --input " + kData + "/fracint_integers.json --grid-N 0 --out " + out), 2);
  EXPECT_EQ(run_tool("fracint --input " + kData + "/fracint_integers.json --psi cubic --out " + out), 2);
  EXPECT_EQ(run_tool("solve-ivp --input " + kData + "/ivp_constant.json --alpha 1.5 --out " + out), 2);
  EXPECT_EQ(run_tool("frobnicate"), 2);
  EXPECT_EQ(run_tool("solve-ivp --input " + kData + "/ivp_constant.json --tol -1 --out " + out), 2);
}

TEST(Cli, NumericalFailureExitCode) {
  const auto dir = scratch("numerical");
  fs::create_directories(dir);
  std::ofstream(dir / "ivp.json") << R"({"timescale": {"components": [{"interval": [0, 1]}]},
    "alpha": 1, "rhs": {"form": "linear", "params": {"slope": 2000, "intercept": 1}}})";
  EXPECT_EQ(run_tool("solve-ivp --input " + (dir / "ivp.json").string() + " --out " + dir.string()), 3);
}

TEST(Cli, PsiFlagOverride) {
  const auto out = scratch("psi_flag");
  ASSERT_EQ(run_tool("fracint --input " + kData + "/fracint_integers.json --psi affine:2,0 --t 2 --out " + out.string()), 0);
  const auto report = json::parse(slurp(out / "fracint.json"));
  EXPECT_EQ(report["psi"]["form"], "affine");
  // psi = 2x scales the kernel integral by 2^alpha.
  EXPECT_NEAR(report["value"].get<double>(), 0.96313186394918893 * std::sqrt(2.0), 1e-12);
}

TEST(Cli, RunConfigValidation) {
  tsfrac::cli::RunConfig cfg;
  cfg.command = "verify";
  cfg.output_dir = scratch("cfg").string();
  cfg.grid_N = 0;
  EXPECT_EQ(run_config(cfg), 2);
  cfg.grid_N = 8;
  cfg.command = "nope";
  EXPECT_EQ(run_config(cfg), 2);
  cfg.command = "verify";
  EXPECT_EQ(run_config(cfg), 0);
}
