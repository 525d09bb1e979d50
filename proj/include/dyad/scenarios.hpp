#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dyad/config.hpp"

namespace dyad {

// Names accepted by load_scenario (aliases excluded).
std::vector<std::string> scenario_names();

// Fully populated run config for a named preset. Throws ConfigError listing
// the available names when `name` is unknown.
RunConfig load_scenario(std::string_view name);

}  // namespace dyad
