#include "dyad/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "dyad/errors.hpp"

namespace dyad {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known |= (a == key);
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + " must be finite");
  return d;
}

int integer(const json& j, const std::string& key, const std::string& where, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string text(const json& j, const std::string& key, const std::string& where,
                 const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

ParameterOverride parse_override(const json& j, const std::string& where) {
  require_object(j, where, {"m1", "m2", "b1", "b2", "c1", "c2", "f1", "f2"});
  ParameterOverride o;
  auto opt = [&](const char* key, std::optional<double>& slot) {
    if (j.contains(key)) slot = number(j, key, where, 0.0);
  };
  opt("m1", o.m1);
  opt("m2", o.m2);
  opt("b1", o.b1);
  opt("b2", o.b2);
  opt("c1", o.c1);
  opt("c2", o.c2);
  if (j.contains("f1")) o.f1 = parse_influence(j.at("f1"), where + ".f1");
  if (j.contains("f2")) o.f2 = parse_influence(j.at("f2"), where + ".f2");
  return o;
}

json to_json(const ParameterOverride& o) {
  json j = json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("m1", o.m1);
  put("m2", o.m2);
  put("b1", o.b1);
  put("b2", o.b2);
  put("c1", o.c1);
  put("c2", o.c2);
  if (o.f1) j["f1"] = to_json(*o.f1);
  if (o.f2) j["f2"] = to_json(*o.f2);
  return j;
}

}  // namespace

Parameters ParameterOverride::applied_to(Parameters p) const {
  if (m1) p.m1 = *m1;
  if (m2) p.m2 = *m2;
  if (b1) p.b1 = *b1;
  if (b2) p.b2 = *b2;
  if (c1) p.c1 = *c1;
  if (c2) p.c2 = *c2;
  if (f1) p.f1 = *f1;
  if (f2) p.f2 = *f2;
  return p;
}

json to_json(const InfluenceFunction& f) {
  if (f.kind() == InfluenceKind::Custom)
    throw ConfigError("custom influence functions cannot be serialized");
  return {{"kind", std::string(to_string(f.kind()))}, {"saturation", f.saturation()}};
}

InfluenceFunction parse_influence(const json& j, const std::string& where) {
  require_object(j, where, {"kind", "saturation"});
  const auto kind = parse_influence_kind(text(j, "kind", where, "atan"));
  return InfluenceFunction(kind, number(j, "saturation", where, 1.0));
}

json to_json(const Parameters& p) {
  return {{"m1", p.m1}, {"m2", p.m2}, {"b1", p.b1}, {"b2", p.b2}, {"c1", p.c1},
          {"c2", p.c2}, {"f1", to_json(p.f1)}, {"f2", to_json(p.f2)}};
}

Parameters parse_parameters(const json& j) {
  const std::string where = "model";
  require_object(j, where, {"m1", "m2", "b1", "b2", "c1", "c2", "f1", "f2"});
  Parameters p;
  p.m1 = number(j, "m1", where, p.m1);
  p.m2 = number(j, "m2", where, p.m2);
  p.b1 = number(j, "b1", where, p.b1);
  p.b2 = number(j, "b2", where, p.b2);
  p.c1 = number(j, "c1", where, p.c1);
  p.c2 = number(j, "c2", where, p.c2);
  if (j.contains("f1")) p.f1 = parse_influence(j.at("f1"), "model.f1");
  if (j.contains("f2")) p.f2 = parse_influence(j.at("f2"), "model.f2");
  return p;
}

void RunConfig::validate() const {
  model.validate();
  if (!std::isfinite(initial_state.x) || !std::isfinite(initial_state.y))
    throw ConfigError("initial_state must be finite");
  (void)build_schedule();
  integrator.validate();
  grid.validate();
  if (!(basin.tol > 0.0) || !(basin.t_max > 0.0) || !(basin.match_radius > 0.0))
    throw ConfigError("basin tol, t_max and match_radius must be positive");
  if (!(scan.lo < scan.hi) || scan.n < 2) throw ConfigError("scan needs lo < hi and n >= 2");
  if (!(separatrix_arc_length > 0.0)) throw ConfigError("separatrix.arc_length must be positive");
  discrete.params.validate();
  if (discrete.rounds < 1) throw ConfigError("discrete.rounds must be positive");
  for (const char* f : {"", "csv", "json"})
    if (output.format == f) return;
  throw ConfigError("output.format must be csv or json");
}

ParameterSchedule RunConfig::build_schedule() const {
  std::vector<ParameterSchedule::Switch> switches;
  Parameters current = model;
  for (const auto& entry : schedule) {
    current = entry.overrides.applied_to(current);
    switches.push_back({entry.time, current});
  }
  return ParameterSchedule(model, std::move(switches));
}

RunConfig parse_config(const json& doc) {
  require_object(doc, "config",
                 {"model", "initial_state", "schedule", "integrator", "grid", "basin", "scan",
                  "separatrix", "discrete", "scenario", "output"});
  RunConfig cfg;
  if (doc.contains("model")) cfg.model = parse_parameters(doc.at("model"));

  if (doc.contains("initial_state")) {
    const auto& j = doc.at("initial_state");
    require_object(j, "initial_state", {"x", "y"});
    cfg.initial_state = {number(j, "x", "initial_state", 0.0), number(j, "y", "initial_state", 0.0)};
  }

  if (doc.contains("schedule")) {
    const auto& arr = doc.at("schedule");
    if (!arr.is_array()) throw ConfigError("schedule must be an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string where = "schedule[" + std::to_string(k) + "]";
      require_object(arr[k], where, {"t", "overrides"});
      if (!arr[k].contains("t")) throw ConfigError(where + ".t is required");
      cfg.schedule.push_back({number(arr[k], "t", where, 0.0),
                              parse_override(arr[k].value("overrides", json::object()),
                                             where + ".overrides")});
    }
  }

  if (doc.contains("integrator")) {
    const auto& j = doc.at("integrator");
    const std::string where = "integrator";
    require_object(j, where, {"method", "step", "abs_tol", "rel_tol", "t_end", "sample_interval"});
    auto& ic = cfg.integrator;
    ic.method = parse_method(text(j, "method", where, std::string(to_string(ic.method))));
    ic.step = number(j, "step", where, ic.step);
    ic.abs_tol = number(j, "abs_tol", where, ic.abs_tol);
    ic.rel_tol = number(j, "rel_tol", where, ic.rel_tol);
    ic.t_end = number(j, "t_end", where, ic.t_end);
    ic.sample_interval = number(j, "sample_interval", where, ic.sample_interval);
  }

  if (doc.contains("grid")) {
    const auto& j = doc.at("grid");
    const std::string where = "grid";
    require_object(j, where, {"x_min", "x_max", "y_min", "y_max", "nx", "ny"});
    auto& g = cfg.grid;
    g.x_min = number(j, "x_min", where, g.x_min);
    g.x_max = number(j, "x_max", where, g.x_max);
    g.y_min = number(j, "y_min", where, g.y_min);
    g.y_max = number(j, "y_max", where, g.y_max);
    g.nx = integer(j, "nx", where, g.nx);
    g.ny = integer(j, "ny", where, g.ny);
  }

  if (doc.contains("basin")) {
    const auto& j = doc.at("basin");
    const std::string where = "basin";
    require_object(j, where, {"tol", "t_max", "match_radius", "threads"});
    auto& b = cfg.basin;
    b.tol = number(j, "tol", where, b.tol);
    b.t_max = number(j, "t_max", where, b.t_max);
    b.match_radius = number(j, "match_radius", where, b.match_radius);
    const int threads = integer(j, "threads", where, static_cast<int>(b.threads));
    if (threads < 0) throw ConfigError("basin.threads must be non-negative");
    b.threads = static_cast<unsigned>(threads);
  }

  if (doc.contains("scan")) {
    const auto& j = doc.at("scan");
    const std::string where = "scan";
    require_object(j, where, {"param", "lo", "hi", "n"});
    auto& s = cfg.scan;
    s.param = parse_param_name(text(j, "param", where, std::string(to_string(s.param))));
    s.lo = number(j, "lo", where, s.lo);
    s.hi = number(j, "hi", where, s.hi);
    s.n = integer(j, "n", where, s.n);
  }

  if (doc.contains("separatrix")) {
    const auto& j = doc.at("separatrix");
    require_object(j, "separatrix", {"arc_length"});
    cfg.separatrix_arc_length = number(j, "arc_length", "separatrix", cfg.separatrix_arc_length);
  }

  if (doc.contains("discrete")) {
    const auto& j = doc.at("discrete");
    const std::string where = "discrete";
    require_object(j, where,
                   {"r1", "r2", "a", "b", "impact_hw", "impact_wh", "gain_hw", "gain_wh", "w0",
                    "h0", "rounds"});
    auto& d = cfg.discrete;
    d.params.r1 = number(j, "r1", where, d.params.r1);
    d.params.r2 = number(j, "r2", where, d.params.r2);
    d.params.a = number(j, "a", where, d.params.a);
    d.params.b = number(j, "b", where, d.params.b);
    if (j.contains("impact_hw")) d.params.impact_hw = parse_influence(j.at("impact_hw"), "discrete.impact_hw");
    if (j.contains("impact_wh")) d.params.impact_wh = parse_influence(j.at("impact_wh"), "discrete.impact_wh");
    d.params.gain_hw = number(j, "gain_hw", where, d.params.gain_hw);
    d.params.gain_wh = number(j, "gain_wh", where, d.params.gain_wh);
    d.start = {number(j, "w0", where, d.start.w), number(j, "h0", where, d.start.h)};
    d.rounds = integer(j, "rounds", where, d.rounds);
  }

  if (doc.contains("scenario")) {
    if (!doc.at("scenario").is_string()) throw ConfigError("scenario must be a string");
    cfg.scenario = doc.at("scenario").get<std::string>();
  }

  if (doc.contains("output")) {
    const auto& j = doc.at("output");
    require_object(j, "output", {"path", "format"});
    cfg.output.path = text(j, "path", "output", "");
    cfg.output.format = text(j, "format", "output", "");
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc;
  doc["model"] = to_json(cfg.model);
  doc["initial_state"] = {{"x", cfg.initial_state.x}, {"y", cfg.initial_state.y}};
  json sched = json::array();
  for (const auto& e : cfg.schedule) sched.push_back({{"t", e.time}, {"overrides", to_json(e.overrides)}});
  doc["schedule"] = sched;
  const auto& ic = cfg.integrator;
  doc["integrator"] = {{"method", std::string(to_string(ic.method))},
                       {"step", ic.step},
                       {"abs_tol", ic.abs_tol},
                       {"rel_tol", ic.rel_tol},
                       {"t_end", ic.t_end},
                       {"sample_interval", ic.sample_interval}};
  const auto& g = cfg.grid;
  doc["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
                 {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
  const auto& b = cfg.basin;
  doc["basin"] = {{"tol", b.tol}, {"t_max", b.t_max}, {"match_radius", b.match_radius},
                  {"threads", b.threads}};
  doc["scan"] = {{"param", std::string(to_string(cfg.scan.param))},
                 {"lo", cfg.scan.lo},
                 {"hi", cfg.scan.hi},
                 {"n", cfg.scan.n}};
  doc["separatrix"] = {{"arc_length", cfg.separatrix_arc_length}};
  const auto& d = cfg.discrete;
  doc["discrete"] = {{"r1", d.params.r1},
                     {"r2", d.params.r2},
                     {"a", d.params.a},
                     {"b", d.params.b},
                     {"impact_hw", to_json(d.params.impact_hw)},
                     {"impact_wh", to_json(d.params.impact_wh)},
                     {"gain_hw", d.params.gain_hw},
                     {"gain_wh", d.params.gain_wh},
                     {"w0", d.start.w},
                     {"h0", d.start.h},
                     {"rounds", d.rounds}};
  if (cfg.scenario) doc["scenario"] = *cfg.scenario;
  doc["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
  return doc;
}

}  // namespace dyad
