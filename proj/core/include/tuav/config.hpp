// Flat key-value configuration files and the built-in scenarios.
//
// Format: one `key = value` per line, `#` starts a comment, keys carry a
// dotted section prefix (`uav.m`, `sim.dt`). Vectors are comma separated
// (`1, 1, 5`); waypoint lists separate points with `;`. Missing keys keep
// their defaults. A `scenario` key selects the built-in base configuration
// and `trajectory.type` selects the trajectory kind; both are applied before
// any other key regardless of their position in the file.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tuav/sim_engine.hpp"

namespace tuav {

/// Names of the built-in scenarios, in listing order.
const std::vector<std::string>& builtin_scenario_names();

/// Throws Error(config) for an unknown name.
SimConfig builtin_scenario(const std::string& name);

/// Throws Error(config) on malformed lines (with the line number), unknown
/// keys, unparsable values and violated invariants.
SimConfig parse_config_text(std::string_view text);

/// Throws Error(io) when the file cannot be read.
SimConfig parse_config(const std::string& path);

/// Every recognised key, sorted.
std::vector<std::string> config_keys();

} // namespace tuav
