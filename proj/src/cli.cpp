#include "dyad/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "dyad/analysis.hpp"
#include "dyad/config.hpp"
#include "dyad/discrete.hpp"
#include "dyad/equilibria.hpp"
#include "dyad/errors.hpp"
#include "dyad/influence.hpp"
#include "dyad/integrate.hpp"
#include "dyad/io.hpp"
#include "dyad/scenarios.hpp"

namespace dyad::cli {
namespace {

namespace fs = std::filesystem;

// Flag values; unset optionals leave the config untouched.
struct Flags {
  std::string config_path;
  std::string scenario_name;
  std::optional<std::string> out, format;
  std::optional<double> m1, m2, b1, b2, c1, c2;
  std::optional<double> x0, y0, t_end, sample_interval;
  std::optional<std::string> method;
  std::optional<int> nx, ny;
  std::optional<unsigned> threads;
  std::optional<double> arc_length;
  std::optional<std::string> scan_param;
  std::optional<double> scan_lo, scan_hi;
  std::optional<int> scan_n;
  std::optional<int> rounds;
  std::optional<double> w0, h0;
  // validate
  std::string kind = "atan";
  double saturation = 1.0, width = 100.0, tol = 1e-9;
  int points = 10001;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--out", f.out, "Output file (default: standard output)");
  cmd->add_option("--format", f.format, "Output format: csv or json");
  cmd->add_option("--m1", f.m1);
  cmd->add_option("--m2", f.m2);
  cmd->add_option("--b1", f.b1);
  cmd->add_option("--b2", f.b2);
  cmd->add_option("--c1", f.c1);
  cmd->add_option("--c2", f.c2);
}

void add_integration(CLI::App* cmd, Flags& f) {
  cmd->add_option("--x0", f.x0, "Initial x");
  cmd->add_option("--y0", f.y0, "Initial y");
  cmd->add_option("--t-end", f.t_end);
  cmd->add_option("--method", f.method, "rk45 or rk4");
  cmd->add_option("--sample-interval", f.sample_interval);
}

void apply(const Flags& f, RunConfig& cfg) {
  auto put = [](const std::optional<double>& v, double& slot) {
    if (v) slot = *v;
  };
  put(f.m1, cfg.model.m1);
  put(f.m2, cfg.model.m2);
  put(f.b1, cfg.model.b1);
  put(f.b2, cfg.model.b2);
  put(f.c1, cfg.model.c1);
  put(f.c2, cfg.model.c2);
  put(f.x0, cfg.initial_state.x);
  put(f.y0, cfg.initial_state.y);
  put(f.t_end, cfg.integrator.t_end);
  put(f.sample_interval, cfg.integrator.sample_interval);
  if (f.method) cfg.integrator.method = parse_method(*f.method);
  if (f.nx) cfg.grid.nx = *f.nx;
  if (f.ny) cfg.grid.ny = *f.ny;
  if (f.threads) cfg.basin.threads = *f.threads;
  put(f.arc_length, cfg.separatrix_arc_length);
  if (f.scan_param) cfg.scan.param = parse_param_name(*f.scan_param);
  put(f.scan_lo, cfg.scan.lo);
  put(f.scan_hi, cfg.scan.hi);
  if (f.scan_n) cfg.scan.n = *f.scan_n;
  if (f.rounds) cfg.discrete.rounds = *f.rounds;
  put(f.w0, cfg.discrete.start.w);
  put(f.h0, cfg.discrete.start.h);
  if (f.out) cfg.output.path = *f.out;
  if (f.format) cfg.output.format = *f.format;
  cfg.validate();
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = load_config(f.config_path);
  apply(f, cfg);
  return cfg;
}

fs::path output_path(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return fs::path(dir) / p;
  }
  return p;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output.path.empty())
    out << content;
  else
    write_atomic(output_path(cfg.output.path), content);
}

bool wants_json(const RunConfig& cfg, bool json_default) {
  if (cfg.output.format.empty()) return json_default;
  return cfg.output.format == "json";
}

void simulate(const RunConfig& cfg, std::ostream& out) {
  const auto traj = integrate(cfg.initial_state, cfg.build_schedule(), cfg.integrator);
  emit(cfg, wants_json(cfg, false) ? trajectory_json(traj).dump(2) + "\n" : trajectory_csv(traj), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled emotional-state dynamics of two interacting partners", "dyad"};
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "Integrate the model and write the trajectory");
  add_common(sim, f);
  add_integration(sim, f);

  auto* eq = app.add_subcommand("equilibria", "Enumerate and classify steady states");
  add_common(eq, f);

  auto* basin = app.add_subcommand("basin", "Basin-of-attraction raster");
  add_common(basin, f);
  basin->add_option("--nx", f.nx);
  basin->add_option("--ny", f.ny);
  basin->add_option("--threads", f.threads);

  auto* sep = app.add_subcommand("separatrix", "Trace the stable manifolds of every saddle");
  add_common(sep, f);
  sep->add_option("--arc-length", f.arc_length);

  auto* scan = app.add_subcommand("scan", "One-parameter steady-state scan with fold detection");
  add_common(scan, f);
  scan->add_option("--param", f.scan_param, "m1, m2, b1, b2, c1 or c2");
  scan->add_option("--lo", f.scan_lo);
  scan->add_option("--hi", f.scan_hi);
  scan->add_option("--n", f.scan_n);
  scan->add_option("--threads", f.threads);

  auto* validate = app.add_subcommand("validate", "Check the influence-function axioms");
  validate->add_option("--kind", f.kind, "atan or tanh");
  validate->add_option("--saturation", f.saturation);
  validate->add_option("--width", f.width, "Half-width of the check grid");
  validate->add_option("--points", f.points);
  validate->add_option("--tol", f.tol);
  validate->add_option("--out", f.out);

  auto* disc = app.add_subcommand("discrete", "Iterate the round-by-round model");
  add_common(disc, f);
  disc->add_option("--rounds", f.rounds);
  disc->add_option("--w0", f.w0);
  disc->add_option("--h0", f.h0);

  auto* scen = app.add_subcommand("scenario", "Run a named preset");
  scen->add_option("--name", f.scenario_name, "Preset name");
  add_common(scen, f);
  add_integration(scen, f);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) {
      simulate(resolve(f), out);
    } else if (*eq) {
      const auto cfg = resolve(f);
      const auto states = find_steady_states(cfg.model);
      (void)count_regime(cfg.model, states);
      emit(cfg, wants_json(cfg, true) ? equilibria_json(states).dump(2) + "\n" : equilibria_csv(states), out);
    } else if (*basin) {
      const auto cfg = resolve(f);
      const auto map = basin_map(cfg.model, cfg.grid, cfg.basin);
      const auto legend = basin_legend_json(map).dump(2) + "\n";
      if (cfg.output.path.empty()) {
        out << basin_raster_csv(map) << "\n" << legend;
      } else {
        const fs::path raster = output_path(cfg.output.path);
        fs::path legend_path = raster;
        legend_path.replace_extension(".legend.json");
        write_atomic(raster, basin_raster_csv(map));
        write_atomic(legend_path, legend);
      }
    } else if (*sep) {
      const auto cfg = resolve(f);
      IntegratorConfig ic = cfg.integrator;
      nlohmann::json all = nlohmann::json::array();
      std::string csv;
      for (const auto& ss : find_steady_states(cfg.model)) {
        if (ss.cls != StabilityClass::Saddle) continue;
        const auto s = separatrix(ss, cfg.model, cfg.separatrix_arc_length, ic);
        all.push_back(separatrix_json(s));
        csv += separatrix_csv(s);
      }
      if (all.empty()) throw ConfigError("the configured system has no saddle");
      emit(cfg, wants_json(cfg, false) ? all.dump(2) + "\n" : csv, out);
    } else if (*scan) {
      auto cfg = resolve(f);
      const auto result = scan_parameter(cfg.model, cfg.scan.param, cfg.scan.lo, cfg.scan.hi,
                                         cfg.scan.n, cfg.basin.threads);
      emit(cfg, wants_json(cfg, false) ? scan_json(result).dump(2) + "\n" : scan_csv(result), out);
      for (const auto& fold : result.folds)
        err << "fold in [" << format_number(fold.lo) << ", " << format_number(fold.hi) << "]: "
            << fold.count_before << " -> " << fold.count_after << " states\n";
    } else if (*validate) {
      const InfluenceFunction fn(parse_influence_kind(f.kind), f.saturation);
      const auto report = validate_axioms(fn, f.width, f.points, f.tol);
      const std::string text = axiom_report_json(fn, report).dump(2) + "\n";
      if (f.out)
        write_atomic(output_path(*f.out), text);
      else
        out << text;
      return report.all_passed() ? kExitOk : kExitNumerical;
    } else if (*disc) {
      const auto cfg = resolve(f);
      const auto seq = iterate(cfg.discrete.start, cfg.discrete.params, cfg.discrete.rounds);
      emit(cfg, wants_json(cfg, false) ? discrete_json(seq).dump(2) + "\n" : discrete_csv(seq), out);
    } else if (*scen) {
      RunConfig cfg;
      if (!f.config_path.empty()) cfg = load_config(f.config_path);
      std::string name = f.scenario_name;
      if (name.empty() && cfg.scenario) name = *cfg.scenario;
      if (name.empty()) throw ConfigError("scenario needs --name (available: fig3-left, fig3-right, "
                                          "switch-success, switch-early, switch-revert, "
                                          "symmetric-separatrix, enemies-focus)");
      RunConfig preset = load_scenario(name);
      if (!f.config_path.empty()) preset.output = cfg.output;
      apply(f, preset);
      simulate(preset, out);
    }
  } catch (const ConfigError& e) {
    err << "dyad: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "dyad: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "dyad: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace dyad::cli
