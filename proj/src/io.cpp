#include "dyad/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "dyad/errors.hpp"

namespace dyad {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x,y,segment\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_number(traj.times[k]) + ',' + format_number(traj.states[k].x) + ',' +
           format_number(traj.states[k].y) + ',' + std::to_string(traj.segments[k]) + '\n';
  }
  return out;
}

json trajectory_json(const Trajectory& traj) {
  json rows = json::array();
  for (std::size_t k = 0; k < traj.size(); ++k)
    rows.push_back({{"t", traj.times[k]}, {"x", traj.states[k].x}, {"y", traj.states[k].y},
                    {"segment", traj.segments[k]}});
  return {{"samples", rows}, {"schedule_marks", traj.schedule_marks}};
}

json equilibria_json(std::span<const SteadyState> states) {
  json arr = json::array();
  for (const auto& ss : states) {
    arr.push_back({{"x", ss.point.x},
                   {"y", ss.point.y},
                   {"A", ss.trace},
                   {"B", ss.determinant},
                   {"discriminant", ss.discriminant},
                   {"eigenvalues",
                    {{ss.eigenvalues[0].real(), ss.eigenvalues[0].imag()},
                     {ss.eigenvalues[1].real(), ss.eigenvalues[1].imag()}}},
                   {"class", std::string(to_string(ss.cls))}});
  }
  return arr;
}

std::string equilibria_csv(std::span<const SteadyState> states) {
  std::string out = "x,y,A,B,discriminant,re1,im1,re2,im2,class\n";
  for (const auto& ss : states) {
    for (double v : {ss.point.x, ss.point.y, ss.trace, ss.determinant, ss.discriminant,
                     ss.eigenvalues[0].real(), ss.eigenvalues[0].imag(), ss.eigenvalues[1].real(),
                     ss.eigenvalues[1].imag()})
      out += format_number(v) + ',';
    out += std::string(to_string(ss.cls)) + '\n';
  }
  return out;
}

std::string basin_raster_csv(const BasinMap& map) {
  std::string out;
  for (int j = 0; j < map.grid.ny; ++j) {
    for (int i = 0; i < map.grid.nx; ++i) {
      if (i) out += ',';
      out += std::to_string(map.label(i, j));
    }
    out += '\n';
  }
  return out;
}

json basin_legend_json(const BasinMap& map) {
  const auto& g = map.grid;
  return {{"grid",
           {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min}, {"y_max", g.y_max},
            {"nx", g.nx}, {"ny", g.ny}, {"row_order", "row 0 is y_min"}}},
          {"labels", {{"-1", "unresolved"}, {"-2", "saddle-bound"}}},
          {"attractors", equilibria_json(map.attractors)},
          {"saddles", equilibria_json(map.saddles)}};
}

namespace {
std::string joined_classes(const std::vector<StabilityClass>& classes) {
  std::string s;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (k) s += ';';
    s += to_string(classes[k]);
  }
  return s;
}
}  // namespace

std::string scan_csv(const ScanResult& scan) {
  std::string out = "param_value,n_states,classes\n";
  for (std::size_t k = 0; k < scan.values.size(); ++k)
    out += format_number(scan.values[k]) + ',' + std::to_string(scan.count(k)) + ',' +
           joined_classes(scan.classes[k]) + '\n';
  return out;
}

json scan_json(const ScanResult& scan) {
  json samples = json::array();
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    json classes = json::array();
    for (auto c : scan.classes[k]) classes.push_back(std::string(to_string(c)));
    samples.push_back({{"value", scan.values[k]}, {"n_states", scan.count(k)}, {"classes", classes}});
  }
  json folds = json::array();
  for (const auto& f : scan.folds)
    folds.push_back({{"lo", f.lo}, {"hi", f.hi}, {"count_before", f.count_before},
                     {"count_after", f.count_after}});
  return {{"parameter", std::string(to_string(scan.parameter))}, {"samples", samples}, {"folds", folds}};
}

std::string separatrix_csv(const Separatrix& sep) {
  std::string out = "branch,x,y\n";
  for (std::size_t b = 0; b < sep.branches.size(); ++b)
    for (const auto& s : sep.branches[b])
      out += std::to_string(b) + ',' + format_number(s.x) + ',' + format_number(s.y) + '\n';
  return out;
}

json separatrix_json(const Separatrix& sep) {
  json branches = json::array();
  for (std::size_t b = 0; b < sep.branches.size(); ++b) {
    json pts = json::array();
    for (const auto& s : sep.branches[b]) pts.push_back({s.x, s.y});
    branches.push_back({{"points", pts}, {"arc_length", sep.arc_lengths[b]}});
  }
  return {{"saddle", {sep.saddle.x, sep.saddle.y}},
          {"stable_direction", {sep.stable_direction.x, sep.stable_direction.y}},
          {"branches", branches}};
}

std::string discrete_csv(std::span<const RoundState> seq) {
  std::string out = "t,W,H\n";
  for (std::size_t t = 0; t < seq.size(); ++t)
    out += std::to_string(t) + ',' + format_number(seq[t].w) + ',' + format_number(seq[t].h) + '\n';
  return out;
}

json discrete_json(std::span<const RoundState> seq) {
  json rows = json::array();
  for (std::size_t t = 0; t < seq.size(); ++t) rows.push_back({{"t", t}, {"W", seq[t].w}, {"H", seq[t].h}});
  return rows;
}

json axiom_report_json(const InfluenceFunction& f, const AxiomReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item = {{"axiom", std::string(to_string(c.axiom))}, {"passed", c.passed}, {"value", c.worst}};
    if (c.witness) item["witness"] = *c.witness;
    checks.push_back(item);
  }
  return {{"kind", f.name()}, {"saturation", f.saturation()}, {"all_passed", report.all_passed()},
          {"checks", checks}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace dyad
