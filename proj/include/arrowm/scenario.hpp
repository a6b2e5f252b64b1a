#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arrowm/config.hpp"
#include "arrowm/output.hpp"

namespace arrowm {

enum class Subcommand { spectrum, evolve, eigden, fig1, fig2, verify };

Subcommand parse_subcommand(const std::string& s);
std::string to_string(Subcommand c);

struct ScenarioResult {
    Summary summary;
    std::vector<std::filesystem::path> files;
    bool ok = true;  // false when a verify check failed
};

/// Runs one subcommand, writing CSV/SVG outputs and summary.txt into
/// config.output.dir (created if missing).
ScenarioResult run_scenario(Subcommand command, const ScenarioConfig& config);

/// Built-in configuration for each subcommand (used when no --config is given).
ScenarioConfig default_config(Subcommand command);

}  // namespace arrowm
