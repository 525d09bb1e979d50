#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyad/cli.hpp"
#include "dyad/scenarios.hpp"
#include "oracles.hpp"

using namespace dyad;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = std::string(DYAD_SOURCE_DIR) + "/configs/";

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dyad_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("validate reports the axioms") {
  const auto r = run({"validate", "--kind", "atan", "--saturation", "1"});
  CHECK(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc.at("all_passed") == true);
  CHECK(run({"validate", "--kind", "tanh", "--saturation", "2.5"}).code == cli::kExitOk);
  // A narrow window cannot witness the vanishing slope.
  CHECK(run({"validate", "--kind", "atan", "--width", "0.5"}).code == cli::kExitNumerical);
  CHECK(run({"validate", "--kind", "relu"}).code == cli::kExitConfig);
  CHECK(run({"validate", "--saturation", "-1"}).code == cli::kExitConfig);
}

TEST_CASE("equilibria from a config file") {
  const auto r = run({"equilibria", "--config", kConfigs + "fig3left.json"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = json::parse(r.out);
  const Parameters p{1, 1, -5, -4.19, -5, -3};
  const double radius = invariant_radius(p);
  const auto roots = oracle::sign_scan_roots([&](double x) { return oracle::composite(p, x); },
                                             -radius, radius, 100001);
  REQUIRE(doc.size() == roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    CHECK(std::abs(doc[k].at("x").get<double>() - roots[k]) < 1e-6);
    CHECK(doc[k].contains("eigenvalues"));
    CHECK(doc[k].at("eigenvalues").size() == 2);
  }

  const auto sym = run({"equilibria", "--m1", "1", "--m2", "1", "--c1", "2", "--c2", "2"});
  REQUIRE(sym.code == cli::kExitOk);
  const auto states = json::parse(sym.out);
  REQUIRE(states.size() == 3);
  CHECK(states[1].at("class") == "saddle");
  CHECK(states[0].at("class") == "stable-node");

  const auto csv = run({"equilibria", "--c1", "2", "--c2", "2", "--format", "csv"});
  CHECK(csv.out.rfind("x,y,A,B,discriminant", 0) == 0);
}

TEST_CASE("flags override the config file") {
  const auto r = run({"equilibria", "--config", kConfigs + "fig3left.json", "--b1", "0", "--b2",
                      "0", "--c1", "2", "--c2", "2"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out).size() == 3);
}

TEST_CASE("stockholm scenario switches at 6 and 7") {
  TempDir dir;
  ::setenv(cli::kOutputDirEnv, dir.path.c_str(), 1);
  const auto r = run({"scenario", "--name", "stockholm", "--out", "run.csv"});
  ::unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  const auto rows = csv_rows(slurp(dir.path / "run.csv"));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == std::vector<std::string>{"t", "x", "y", "segment"});
  std::vector<double> changes;
  for (std::size_t k = 2; k < rows.size(); ++k)
    if (rows[k][3] != rows[k - 1][3]) changes.push_back(std::stod(rows[k][0]));
  CHECK(changes == std::vector<double>{6.0, 7.0});
  CHECK(std::stod(rows.back()[0]) == 20.0);
  CHECK_FALSE(fs::exists(dir.path / "run.csv.tmp"));
}

TEST_CASE("simulate writes json or csv") {
  const auto csv = run({"simulate", "--c1", "2", "--c2", "2", "--x0", "3", "--y0", "-3",
                        "--t-end", "5", "--sample-interval", "1"});
  REQUIRE(csv.code == cli::kExitOk);
  const auto rows = csv_rows(csv.out);
  CHECK(rows.size() == 7);
  CHECK(rows[1][1] == "3");
  const auto js = run({"simulate", "--config", kConfigs + "befriend_switch.json", "--format", "json",
                       "--method", "rk4"});
  REQUIRE(js.code == cli::kExitOk);
  const auto doc = json::parse(js.out);
  CHECK(doc.at("samples").size() == 2001);
  CHECK(doc.at("schedule_marks").size() == 2);
}

TEST_CASE("basin writes raster and legend") {
  TempDir dir;
  const fs::path raster = dir.path / "basin.csv";
  const auto r = run({"basin", "--c1", "2", "--c2", "2", "--nx", "9", "--ny", "9", "--out",
                      raster.string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = csv_rows(slurp(raster));
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) CHECK(row.size() == 9);
  CHECK(rows[4][4] == "-2");
  const auto legend = json::parse(slurp(dir.path / "basin.legend.json"));
  CHECK(legend.at("attractors").size() == 2);
}

TEST_CASE("scan reports folds on stderr") {
  const auto r = run({"scan", "--c1", "2", "--c2", "2", "--param", "b1", "--lo", "-6", "--hi",
                      "0", "--n", "121"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("param_value,n_states,classes", 0) == 0);
  CHECK(csv_rows(r.out).size() == 122);
  CHECK(r.err.find("fold in") != std::string::npos);
  CHECK(run({"scan", "--param", "m1", "--lo", "-1", "--hi", "1"}).code == cli::kExitConfig);
}

TEST_CASE("separatrix needs a saddle") {
  const auto r = run({"separatrix", "--c1", "2", "--c2", "2", "--arc-length", "3"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("branch,x,y", 0) == 0);
  CHECK(run({"separatrix", "--c1", "1", "--c2", "-1"}).code == cli::kExitConfig);
}

TEST_CASE("discrete rounds") {
  const auto r = run({"discrete", "--config", kConfigs + "discrete_rounds.json", "--rounds", "5"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = csv_rows(r.out);
  CHECK(rows[0] == std::vector<std::string>{"t", "W", "H"});
  CHECK(rows.size() == 7);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == cli::kExitConfig);
  CHECK(run({"frobnicate"}).code == cli::kExitConfig);
  CHECK(run({"simulate", "--bogus"}).code == cli::kExitConfig);
  CHECK(run({"simulate", "--m1", "-1"}).code == cli::kExitConfig);
  CHECK(run({"simulate", "--config", "/nonexistent.json"}).code == cli::kExitConfig);
  CHECK(run({"scenario", "--name", "nope"}).code == cli::kExitConfig);
  CHECK(run({"scenario"}).code == cli::kExitConfig);
  CHECK(run({"simulate", "--format", "xml"}).code == cli::kExitConfig);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("outputs are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"scenario", "--name", "switch-revert"},
           {"basin", "--c1", "2", "--c2", "2", "--nx", "15", "--ny", "15", "--threads", "4"},
           {"scan", "--c1", "2", "--c2", "2", "--param", "b1", "--lo", "-6", "--hi", "0"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("every preset finishes quickly") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const auto start = std::chrono::steady_clock::now();
    const auto r = run({"scenario", "--name", name});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(r.code == cli::kExitOk);
    CHECK(secs < 10.0);
  }
}
