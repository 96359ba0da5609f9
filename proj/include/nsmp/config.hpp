#pragma once

#include <filesystem>
#include <string>

#include "nsmp/errors.hpp"
#include "nsmp/scenario.hpp"

namespace nsmp {

/// Scenario files are sectioned key = value text:
///
///   [scenario]  name, preset (optional base, applied before other keys)
///   [grid]      n = [nx, ny, nz], length = [lx, ly, lz], boundary, scheme
///   [physics]   viscosity, horizon, dt, integrator
///   [initial]   kind, amplitude, seed, path
///   [forcing]   kind, amplitude, vector = [fx, fy, fz], wavenumber, path
///
/// Values are numbers, double-quoted strings, bare words or bracketed lists.
/// '#' starts a comment. Unknown sections or keys raise ParseError.
ScenarioSpec parse_scenario_text(const std::string& text);

/// Reads a scenario file; a preset name is accepted in place of a path.
ScenarioSpec parse_scenario_spec(const std::string& path_or_preset);

/// parse_scenario_spec followed by instantiate.
Scenario parse_scenario(const std::string& path_or_preset, const InstantiateOptions& opts = {});

/// Text that parse_scenario_text maps back to the same spec.
std::string emit_scenario(const ScenarioSpec& spec);

std::string to_string(Assumption a);

}  // namespace nsmp
