#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dyad/config.hpp"
#include "dyad/errors.hpp"
#include "dyad/scenarios.hpp"

using namespace dyad;
using nlohmann::json;

namespace {

const std::string kConfigs = std::string(DYAD_SOURCE_DIR) + "/configs/";

json full_doc() {
  return json::parse(R"({
    "model": {"m1": 1, "m2": 2, "b1": -4, "b2": -2, "c1": -5, "c2": -4,
              "f1": {"kind": "tanh", "saturation": 2}, "f2": {"kind": "atan", "saturation": 1}},
    "initial_state": {"x": 0.5, "y": -1},
    "schedule": [{"t": 3, "overrides": {"c1": 5}}, {"t": 4.5, "overrides": {"b2": 1, "f2": {"kind": "tanh", "saturation": 1}}}],
    "integrator": {"method": "rk4", "step": 0.01, "abs_tol": 1e-8, "rel_tol": 1e-7, "t_end": 12, "sample_interval": 0.1},
    "grid": {"x_min": -2, "x_max": 3, "y_min": -1, "y_max": 1, "nx": 7, "ny": 9},
    "basin": {"tol": 1e-7, "t_max": 50, "match_radius": 0.01, "threads": 2},
    "scan": {"param": "c2", "lo": -3, "hi": -1, "n": 11},
    "separatrix": {"arc_length": 2.5},
    "discrete": {"r1": 0.1, "r2": -0.2, "a": 1, "b": 2, "impact_hw": {"kind": "atan", "saturation": 3},
                 "impact_wh": {"kind": "tanh", "saturation": 1}, "gain_hw": 2, "gain_wh": 0.5,
                 "w0": 1, "h0": -1, "rounds": 7},
    "scenario": "fig3-right",
    "output": {"path": "out.json", "format": "json"}
  })");
}

}  // namespace

TEST_CASE("round trip is the identity up to key order") {
  const json doc = full_doc();
  const RunConfig cfg = parse_config(doc);
  CHECK(to_json(cfg) == doc);
  CHECK(to_json(parse_config(to_json(cfg))) == to_json(cfg));
}

TEST_CASE("defaults are filled in") {
  const RunConfig cfg = parse_config(json::object());
  CHECK(cfg.integrator.method == Method::AdaptiveRk45);
  CHECK(cfg.integrator.abs_tol == 1e-9);
  CHECK(cfg.grid.nx == 101);
  const json back = to_json(cfg);
  CHECK(to_json(parse_config(back)) == back);
}

TEST_CASE("parsed fields") {
  const RunConfig cfg = parse_config(full_doc());
  CHECK(cfg.model.f1 == InfluenceFunction::tanh(2));
  CHECK(cfg.integrator.method == Method::FixedRk4);
  CHECK(cfg.scan.param == ParamName::C2);
  CHECK(cfg.discrete.params.gain_hw == 2.0);
  CHECK(cfg.discrete.rounds == 7);
  CHECK(cfg.separatrix_arc_length == 2.5);

  const auto sched = cfg.build_schedule();
  REQUIRE(sched.segment_count() == 3);
  CHECK(sched.params_at(3.0).c1 == 5.0);
  CHECK(sched.params_at(5.0).c1 == 5.0);  // overrides accumulate
  CHECK(sched.params_at(5.0).b2 == 1.0);
  CHECK(sched.params_at(5.0).f2 == InfluenceFunction::tanh(1));
  CHECK(sched.params_at(2.9).c1 == -5.0);
}

TEST_CASE("unknown keys are rejected") {
  for (const char* bad : {R"({"modle": {}})", R"({"model": {"m3": 1}})",
                          R"({"integrator": {"tolerance": 1e-6}})",
                          R"({"schedule": [{"t": 1, "params": {}}]})",
                          R"({"model": {"f1": {"kind": "atan", "scale": 1}}})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_config(json::parse(bad)), ConfigError);
  }
}

TEST_CASE("invalid values are rejected") {
  for (const char* bad :
       {R"({"model": {"m1": 0}})", R"({"model": {"c2": 0}})",
        R"({"model": {"f1": {"kind": "relu"}}})", R"({"model": {"f1": {"saturation": -1}}})",
        R"({"integrator": {"abs_tol": 0.5}})", R"({"integrator": {"method": "euler"}})",
        R"({"integrator": {"t_end": 1, "step": 2, "method": "rk4"}})",
        R"({"grid": {"nx": 0}})", R"({"grid": {"x_min": 1, "x_max": 0}})",
        R"({"schedule": [{"t": 2, "overrides": {}}, {"t": 1, "overrides": {}}]})",
        R"({"schedule": [{"overrides": {}}]})", R"({"discrete": {"r1": 1.0}})",
        R"({"scan": {"param": "q"}})", R"({"output": {"format": "xml"}})",
        R"({"model": {"m1": "one"}})", R"({"scenario": 3})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_config(json::parse(bad)), ConfigError);
  }
}

TEST_CASE("config files load") {
  for (const auto& entry : std::filesystem::directory_iterator(kConfigs)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
  }
  CHECK_THROWS_AS(load_config(kConfigs + "missing.json"), ConfigError);
  const auto tmp = std::filesystem::temp_directory_path() / "dyad_bad_config.json";
  std::ofstream(tmp) << "{ not json";
  CHECK_THROWS_AS(load_config(tmp.string()), ConfigError);
  std::filesystem::remove(tmp);
}

TEST_CASE("presets") {
  const auto names = scenario_names();
  CHECK(names.size() == 7);
  for (const auto& n : names) {
    CAPTURE(n);
    const RunConfig cfg = load_scenario(n);
    CHECK_NOTHROW(cfg.validate());
    CHECK(to_json(parse_config(to_json(cfg))) == to_json(cfg));
  }
  const auto right = load_scenario("fig3-right").model;
  CHECK(right == Parameters{1, 2, -4, -2, -5, -4});
  const auto left = load_scenario("fig3-left").model;
  CHECK(left == Parameters{1, 1, -5, -4.19, -5, -3});
  const auto enemies = load_scenario("enemies-focus").model;
  CHECK(enemies == Parameters{1, 1, 0, 0, 1, -1});
  CHECK(load_scenario("stockholm").schedule.size() == 2);
  try {
    (void)load_scenario("nope");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("switch-revert") != std::string::npos);
  }
}
