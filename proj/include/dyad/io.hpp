#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dyad/analysis.hpp"
#include "dyad/discrete.hpp"
#include "dyad/equilibria.hpp"
#include "dyad/influence.hpp"
#include "dyad/integrate.hpp"

namespace dyad {

// %.17g: 17 significant digits, reads back bit-exact.
std::string format_number(double v);

std::string trajectory_csv(const Trajectory& traj);                 // t,x,y,segment
nlohmann::json trajectory_json(const Trajectory& traj);

nlohmann::json equilibria_json(std::span<const SteadyState> states);
std::string equilibria_csv(std::span<const SteadyState> states);

std::string basin_raster_csv(const BasinMap& map);                  // ny rows of nx labels
nlohmann::json basin_legend_json(const BasinMap& map);

std::string scan_csv(const ScanResult& scan);                       // param_value,n_states,classes
nlohmann::json scan_json(const ScanResult& scan);

std::string separatrix_csv(const Separatrix& sep);                  // branch,x,y
nlohmann::json separatrix_json(const Separatrix& sep);

std::string discrete_csv(std::span<const RoundState> seq);          // t,W,H
nlohmann::json discrete_json(std::span<const RoundState> seq);

nlohmann::json axiom_report_json(const InfluenceFunction& f, const AxiomReport& report);

// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dyad
