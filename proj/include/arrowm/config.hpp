#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "arrowm/freeparticle.hpp"

namespace arrowm {

enum class PathSelection { direct, fast, both };

std::string to_string(PathSelection p);
PathSelection parse_path_selection(const std::string& s);

struct GridConfig {
    double e_min = 1e-18;
    double e_max = 50.0;
    std::size_t n = 4096;
};

struct EigenfunctionConfig {
    double m = 0.5;
    std::string channel = "+";
    double window = 0.6;  // flat fraction of the Tukey window
};

struct TimesConfig {
    double t_start = 0.0;
    double t_end = 20.0;
    std::size_t steps = 200;  // number of samples, both ends included
};

struct FramesConfig {
    std::size_t count = 7;
    double t_end = 12.0;
    std::size_t x_points = 2001;
    double x_span_widths = 14.0;  // half-width of the x window in packet widths
    std::optional<double> nu_min;
    std::optional<double> nu_max;
    std::size_t nu_points = 4001;
};

struct OutputConfig {
    std::filesystem::path dir = "out";
    bool svg = true;
};

struct ScenarioConfig {
    enum class StateKind { gaussian, eigenfunction };

    GridConfig grid;
    StateKind state = StateKind::gaussian;
    GaussianPacketParams gaussian;
    EigenfunctionConfig eigenfunction;
    TimesConfig times;
    PathSelection path = PathSelection::both;
    FramesConfig frames;
    OutputConfig output;
    std::size_t padding = 4;
    std::uint64_t seed = 20100222;
    double doubled_horizon = 2.0;  // fig1: extra run at doubled_horizon * t_end

    // Cross-field checks (n power of two for fast paths, ordering of times, ...).
    // Throws ConfigError carrying line 0.
    void validate() const;
};

/// Parse `key = value` lines with `#` comments and dotted keys. Unknown keys,
/// malformed lines and bad values raise ConfigError with the offending line.
/// Keys not present keep their value from `base`.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base = {});

}  // namespace arrowm
