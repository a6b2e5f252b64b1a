#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "arrowm/config.hpp"
#include "arrowm/dynamics.hpp"
#include "arrowm/errors.hpp"
#include "arrowm/scenario.hpp"

namespace {

int run(arrowm::Subcommand command, const std::string& config_path,
        const std::optional<std::string>& out_dir, const std::optional<std::string>& path) {
    auto cfg = arrowm::default_config(command);
    if (!config_path.empty()) cfg = arrowm::load_config(config_path, cfg);
    if (out_dir) cfg.output.dir = *out_dir;
    if (path) cfg.path = arrowm::parse_path_selection(*path);
    const auto result = arrowm::run_scenario(command, cfg);
    for (const auto& [key, value] : result.summary.entries()) std::cout << key << " = " << value << '\n';
    return result.ok ? EXIT_SUCCESS : EXIT_FAILURE;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of the Lyapunov operator M"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> path;
    struct Entry {
        arrowm::Subcommand command;
        const char* help;
    };
    const Entry entries[] = {
        {arrowm::Subcommand::spectrum, "Eigenvalues of the dense discretization"},
        {arrowm::Subcommand::evolve, "<M>(t) along the free evolution"},
        {arrowm::Subcommand::eigden, "Eigen-density of a state"},
        {arrowm::Subcommand::fig1, "Monotone decay of <M>(t) for a Gaussian packet"},
        {arrowm::Subcommand::fig2, "Position and eigen-density frames"},
        {arrowm::Subcommand::verify, "Invariant suite; nonzero exit on failure"},
    };
    std::optional<arrowm::Subcommand> chosen;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(arrowm::to_string(e.command), e.help);
        sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--path", path, "direct, fast or both")
            ->check(CLI::IsMember({"direct", "fast", "both"}));
        sub->callback([&chosen, c = e.command] { chosen = c; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return run(*chosen, config_path, out_dir, path);
    } catch (const arrowm::ConfigError& e) {
        std::cerr << "arrow-m: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "arrow-m: " << e.what() << '\n';
        return 3;
    }
}
