// SPDX-License-Identifier: Apache-2.0
//
// Drives the `fas` binary at FAS_CLI.
#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(FAS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fas_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("analytic curve writes csv files", "[cli]") {
  const auto dir = scratch("curve");
  REQUIRE(run("curve --no-sim --thresholds 0.1:5:20:log --lengths 1 --out " + dir.string()) == 0);
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++n;
    CHECK(e.path().extension() == ".csv");
    CHECK(slurp(e.path()).rfind("# {", 0) == 0);
  }
  CHECK(n >= 3);
}

TEST_CASE("config errors exit with 2", "[cli]") {
  const auto dir = scratch("bad");
  CHECK(run("curve --thresholds 5:1:10:log --out " + dir.string()) == 2);
  CHECK(run("curve --scenario '{\"kind\":\"nope\"}' --out " + dir.string()) == 2);
  CHECK(run("figures fig1 --no-sim --out " + dir.string()) == 2);
  CHECK(run("simulate --trials 0 --out " + dir.string()) == 2);
  CHECK(run("--no-such-flag") == 2);
  CHECK(run("curve --config " + (dir / "missing.json").string()) == 2);
}

TEST_CASE("db suffix on flags", "[cli]") {
  const auto dir = scratch("db");
  CHECK(run("reduce --pT 0.1 --lengths 0,1 --gamma0 5db --out " + dir.string()) == 0);
  CHECK(run("reduce --pT 0.1 --lengths 0,1 --gamma0 5dbm --out " + dir.string()) == 2);
}

TEST_CASE("simulation rerun is identical given the seed", "[cli]") {
  const auto a = scratch("sim_a"), b = scratch("sim_b");
  const std::string args = "simulate --trials 300 --seed 17 --lengths 0.5 --thresholds 0.1:5:8:log --out ";
  REQUIRE(run(args + a.string()) == 0);
  REQUIRE(run(args + b.string()) == 0);
  int n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++n;
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
  CHECK(n > 0);
}

TEST_CASE("figure presets run analytically", "[cli]") {
  const auto dir = scratch("fig");
  for (const char* f : {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}) {
    INFO(f);
    CHECK(run(std::string("figures ") + f + " --no-sim --out " + dir.string()) == 0);
  }
  CHECK(fs::exists(dir / "fig3__snr_approx_L1.csv"));
}
