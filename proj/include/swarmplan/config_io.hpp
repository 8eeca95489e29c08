#pragma once

#include <filesystem>
#include <string>

#include "swarmplan/baselines.hpp"
#include "swarmplan/coevolution.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

// Malformed scenario text (bad line syntax, bad number).
class ConfigParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverSettings {
    CoevolutionConfig coevolution;
    CgaConfig cga;
    SaConfig sa;
};

// A parsed scenario file: physical parameters plus solver settings.
struct ScenarioFile {
    ScenarioParams params;
    SolverSettings solver;
};

// Flat sectioned key=value text. Unknown keys are rejected with a
// ScenarioError naming the key; missing keys keep the built-in defaults.
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario_file(const std::filesystem::path& path);

// Applies one "section.key=value" override on top of a parsed file.
void apply_override(ScenarioFile& file, const std::string& assignment);

// Canonical serialization (SI linear units, radians). Parsing the output
// reproduces the same ScenarioParams bit for bit.
std::string serialize_scenario(const ScenarioFile& file);

}  // namespace swarmplan
