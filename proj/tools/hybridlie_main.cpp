#include <CLI11.hpp>

#include "hybridlie/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hybridlie: quantum-classical hybrid bracket scenarios"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    uint64_t seed = 0;
    int points = 0;
    bool quiet = false;

    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"evolve", "Heisenberg/Schrodinger trajectories and a conservation table"},
        {"spin-orbit", "closed-form spin-orbit evolution cross-checked against the Lie series"},
        {"positivity", "positivity margins over a point scan and the violation time"},
        {"jacobi", "Jacobi-identity residual suite for the configured bracket"},
        {"uniqueness", "bracket-family residual landscape, tensor and functional checks"},
    };

    for (const auto& [name, desc] : subcommands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "scenario file")->required();
        sub->add_option("--out", out_dir, "output directory (default: config output_dir or ./out)");
        sub->add_option("--seed", seed, "override the scenario seed");
        sub->add_option("--points", points, "override the scan point count");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    }

    CLI11_PARSE(app, argc, argv);
    auto* sub = app.get_subcommands().front();

    hybridlie::Scenario config;
    try {
        config = hybridlie::Scenario::load(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return hybridlie::kExitConfigError;
    }

    hybridlie::RunOptions options;
    options.quiet = quiet;
    if (!out_dir.empty())
        options.out_dir = out_dir;
    else
        options.out_dir = config.get_or("", "output_dir", "out");
    if (sub->count("--seed")) options.seed_override = seed;
    if (sub->count("--points")) options.points_override = points;

    return hybridlie::run_subcommand(sub->get_name(), config, options);
}
