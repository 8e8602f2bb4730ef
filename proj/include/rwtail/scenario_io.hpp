#ifndef RWTAIL_SCENARIO_IO_HPP
#define RWTAIL_SCENARIO_IO_HPP

#include "rwtail/dependence.hpp"
#include "rwtail/montecarlo.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace rwtail {

struct ScenarioFile {
    Scenario scenario;
    // Present when the file has a "diagnostics" block.
    std::optional<DiagnosticsConfig> diagnostics;
};

// Parses the JSON scenario format. Unknown keys, malformed values and invalid
// models all raise ValidationError (or a subclass) with a message naming the field.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

} // namespace rwtail

#endif
