#pragma once

#include <string>

#include "binloc/scenario.hpp"

namespace binloc {

// Parses the INI-style scenario file. Missing file content falls back to the
// reference defaults; unknown sections or keys are rejected with line
// diagnostics (ConfigError). An empty file yields ScenarioConfig{}.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<string>");

// Canonical emission; parse_config_text(emit_config(c)) reproduces c and the
// emitted text is stable (shortest round-trip float formatting).
std::string emit_config(const ScenarioConfig& cfg);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace binloc
