#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyad/analysis.hpp"
#include "dyad/discrete.hpp"
#include "dyad/integrate.hpp"
#include "dyad/model.hpp"

namespace dyad {

// Partial parameter set applied on top of the previous schedule segment.
struct ParameterOverride {
  std::optional<double> m1, m2, b1, b2, c1, c2;
  std::optional<InfluenceFunction> f1, f2;

  Parameters applied_to(Parameters p) const;
};

struct ScheduledOverride {
  double time = 0.0;
  ParameterOverride overrides;
};

struct ScanSpec {
  ParamName param = ParamName::B1;
  double lo = -1.0, hi = 1.0;
  int n = 101;
};

struct DiscreteRun {
  DiscreteParams params;
  RoundState start;
  int rounds = 50;
};

struct OutputSpec {
  std::string path;    // empty: standard output
  std::string format;  // empty: command default
};

/**
 * Everything a CLI run needs. Parsed from a single JSON document; every
 * section is optional and unknown keys are rejected.
 */
struct RunConfig {
  Parameters model{};
  State initial_state{};
  std::vector<ScheduledOverride> schedule;
  IntegratorConfig integrator{Method::AdaptiveRk45, 1e-3, 1e-9, 1e-9, 20.0, 0.01};
  GridSpec grid{-4.0, 4.0, -4.0, 4.0, 101, 101};
  BasinOptions basin{};
  ScanSpec scan{};
  double separatrix_arc_length = 5.0;
  DiscreteRun discrete{};
  std::optional<std::string> scenario;
  OutputSpec output{};

  // Checks every nested invariant; throws ConfigError.
  void validate() const;
  ParameterSchedule build_schedule() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

nlohmann::json to_json(const InfluenceFunction& f);
InfluenceFunction parse_influence(const nlohmann::json& j, const std::string& where);
nlohmann::json to_json(const Parameters& p);
Parameters parse_parameters(const nlohmann::json& j);

}  // namespace dyad
