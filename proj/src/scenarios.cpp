#include "dyad/scenarios.hpp"

#include "dyad/errors.hpp"

namespace dyad {
namespace {

Parameters params(double m1, double m2, double b1, double b2, double c1, double c2) {
  return Parameters{m1, m2, b1, b2, c1, c2, InfluenceFunction::atan(), InfluenceFunction::atan()};
}

RunConfig base(Parameters p, State start, double t_end) {
  RunConfig cfg;
  cfg.model = p;
  cfg.initial_state = start;
  cfg.integrator.t_end = t_end;
  cfg.integrator.sample_interval = 0.01;
  return cfg;
}

// Attitude switches between two mutual enemies. Constants are reconstructed:
// flipping c1 at t = 6 drives both moods towards neutral, a revert at t = 6.4
// falls back into the original basin and a revert at t = 7 lands in the
// mirrored one.
constexpr double kEnemyRate = 2.0;
constexpr double kEnemyPull = 4.0;

RunConfig enemies_switch(std::vector<double> revert_times) {
  RunConfig cfg = base(params(kEnemyRate, kEnemyRate, 0.0, 0.0, -kEnemyPull, -kEnemyPull),
                       {-0.5, 1.0}, 20.0);
  ParameterOverride befriend;
  befriend.c1 = kEnemyPull;
  cfg.schedule.push_back({6.0, befriend});
  for (double t : revert_times) {
    ParameterOverride revert;
    revert.c1 = -kEnemyPull;
    cfg.schedule.push_back({t, revert});
  }
  return cfg;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"fig3-left",    "fig3-right",           "switch-success", "switch-early",
          "switch-revert", "symmetric-separatrix", "enemies-focus"};
}

RunConfig load_scenario(std::string_view name) {
  RunConfig cfg;
  if (name == "fig3-left") {
    cfg = base(params(1.0, 1.0, -5.0, -4.19, -5.0, -3.0), {0.0, 0.0}, 20.0);
    cfg.grid = {-15.0, 5.0, -12.0, 8.0, 101, 101};
  } else if (name == "fig3-right") {
    cfg = base(params(1.0, 2.0, -4.0, -2.0, -5.0, -4.0), {0.0, 0.0}, 20.0);
    cfg.grid = {-12.0, 6.0, -5.0, 4.0, 101, 101};
    cfg.scan = {ParamName::B2, -3.0, -1.0, 201};
  } else if (name == "switch-success") {
    cfg = enemies_switch({});
  } else if (name == "switch-early") {
    cfg = enemies_switch({6.4});
  } else if (name == "switch-revert" || name == "stockholm") {
    cfg = enemies_switch({7.0});
  } else if (name == "symmetric-separatrix") {
    cfg = base(params(1.0, 1.0, 0.0, 0.0, 2.0, 2.0), {3.0, -3.0}, 30.0);
    cfg.grid = {-4.0, 4.0, -4.0, 4.0, 101, 101};
    cfg.scan = {ParamName::B1, -6.0, 0.0, 121};
  } else if (name == "enemies-focus") {
    cfg = base(params(1.0, 1.0, 0.0, 0.0, 1.0, -1.0), {2.0, 1.0}, 20.0);
  } else {
    std::string list;
    for (const auto& n : scenario_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown scenario '" + std::string(name) + "'; available: " + list);
  }
  cfg.scenario = std::string(name);
  cfg.validate();
  return cfg;
}

}  // namespace dyad
