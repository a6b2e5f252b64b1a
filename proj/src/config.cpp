#include "arrowm/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "arrowm/errors.hpp"

namespace arrowm {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& v, std::size_t line) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "expected a number, got '" + v + "'");
    return out;
}

std::size_t to_count(const std::string& v, std::size_t line) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError(line, "expected a non-negative integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(line, "expected true or false, got '" + v + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"grid.e_min", [](auto& c, auto& v, auto l) { c.grid.e_min = to_double(v, l); }},
        {"grid.e_max", [](auto& c, auto& v, auto l) { c.grid.e_max = to_double(v, l); }},
        {"grid.n", [](auto& c, auto& v, auto l) { c.grid.n = to_count(v, l); }},
        {"state.kind",
         [](auto& c, auto& v, auto l) {
             if (v == "gaussian")
                 c.state = ScenarioConfig::StateKind::gaussian;
             else if (v == "eigenfunction")
                 c.state = ScenarioConfig::StateKind::eigenfunction;
             else
                 throw ConfigError(l, "state.kind must be gaussian or eigenfunction");
         }},
        {"state.gaussian.eta", [](auto& c, auto& v, auto l) { c.gaussian.eta = to_double(v, l); }},
        {"state.gaussian.p0", [](auto& c, auto& v, auto l) { c.gaussian.p0 = to_double(v, l); }},
        {"state.gaussian.xi0", [](auto& c, auto& v, auto l) { c.gaussian.xi0 = to_double(v, l); }},
        {"state.eigenfunction.m", [](auto& c, auto& v, auto l) { c.eigenfunction.m = to_double(v, l); }},
        {"state.eigenfunction.channel",
         [](auto& c, auto& v, auto l) {
             if (v != "+" && v != "-") throw ConfigError(l, "channel must be + or -");
             c.eigenfunction.channel = v;
         }},
        {"state.eigenfunction.window",
         [](auto& c, auto& v, auto l) { c.eigenfunction.window = to_double(v, l); }},
        {"times.t_start", [](auto& c, auto& v, auto l) { c.times.t_start = to_double(v, l); }},
        {"times.t_end", [](auto& c, auto& v, auto l) { c.times.t_end = to_double(v, l); }},
        {"times.steps", [](auto& c, auto& v, auto l) { c.times.steps = to_count(v, l); }},
        {"path",
         [](auto& c, auto& v, auto l) {
             try {
                 c.path = parse_path_selection(v);
             } catch (const DomainError& e) {
                 throw ConfigError(l, e.what());
             }
         }},
        {"frames.count", [](auto& c, auto& v, auto l) { c.frames.count = to_count(v, l); }},
        {"frames.t_end", [](auto& c, auto& v, auto l) { c.frames.t_end = to_double(v, l); }},
        {"frames.x_points", [](auto& c, auto& v, auto l) { c.frames.x_points = to_count(v, l); }},
        {"frames.x_span_widths",
         [](auto& c, auto& v, auto l) { c.frames.x_span_widths = to_double(v, l); }},
        {"frames.nu_min", [](auto& c, auto& v, auto l) { c.frames.nu_min = to_double(v, l); }},
        {"frames.nu_max", [](auto& c, auto& v, auto l) { c.frames.nu_max = to_double(v, l); }},
        {"frames.nu_points", [](auto& c, auto& v, auto l) { c.frames.nu_points = to_count(v, l); }},
        {"output.dir", [](auto& c, auto& v, auto) { c.output.dir = v; }},
        {"output.svg", [](auto& c, auto& v, auto l) { c.output.svg = to_bool(v, l); }},
        {"mellin.padding", [](auto& c, auto& v, auto l) { c.padding = to_count(v, l); }},
        {"seed", [](auto& c, auto& v, auto l) { c.seed = to_count(v, l); }},
        {"fig1.doubled_horizon",
         [](auto& c, auto& v, auto l) { c.doubled_horizon = to_double(v, l); }},
    };
    return table;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string to_string(PathSelection p) {
    switch (p) {
        case PathSelection::direct: return "direct";
        case PathSelection::fast: return "fast";
        case PathSelection::both: return "both";
    }
    return "both";
}

PathSelection parse_path_selection(const std::string& s) {
    if (s == "direct") return PathSelection::direct;
    if (s == "fast") return PathSelection::fast;
    if (s == "both") return PathSelection::both;
    throw DomainError("path must be direct, fast or both (got '" + s + "')");
}

void ScenarioConfig::validate() const {
    if (!(grid.e_min > 0.0)) throw ConfigError(0, "grid.e_min must be positive");
    if (!(grid.e_max > grid.e_min)) throw ConfigError(0, "grid.e_max must exceed grid.e_min");
    if (grid.n < 2) throw ConfigError(0, "grid.n must be at least 2");
    if (path != PathSelection::direct && !is_power_of_two(grid.n))
        throw ConfigError(0, "grid.n must be a power of two when the fast path is used");
    if (padding == 0) throw ConfigError(0, "mellin.padding must be at least 1");
    if (times.t_start < 0.0) throw ConfigError(0, "times.t_start must be >= 0");
    if (!(times.t_end > times.t_start)) throw ConfigError(0, "times.t_end must exceed times.t_start");
    if (times.steps < 2) throw ConfigError(0, "times.steps must be at least 2");
    if (!(gaussian.eta > 0.0) || !(gaussian.xi0 > 0.0))
        throw ConfigError(0, "state.gaussian.eta and state.gaussian.xi0 must be positive");
    if (!(eigenfunction.m > 0.0 && eigenfunction.m < 1.0))
        throw ConfigError(0, "state.eigenfunction.m must lie in (0, 1)");
    if (!(eigenfunction.window >= 0.0 && eigenfunction.window < 1.0))
        throw ConfigError(0, "state.eigenfunction.window must lie in [0, 1)");
    if (frames.count < 1 || frames.x_points < 2 || frames.nu_points < 2)
        throw ConfigError(0, "frames.count >= 1, frames.x_points >= 2, frames.nu_points >= 2 required");
    if (frames.nu_min && frames.nu_max && !(*frames.nu_max > *frames.nu_min))
        throw ConfigError(0, "frames.nu_max must exceed frames.nu_min");
    if (!(doubled_horizon > 1.0)) throw ConfigError(0, "fig1.doubled_horizon must exceed 1");
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
    ScenarioConfig cfg = std::move(base);
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "empty key");
        if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(line_no, "unknown key '" + key + "'");
        it->second(cfg, value, line_no);
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

}  // namespace arrowm
