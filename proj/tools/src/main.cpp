#include "gaia_cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace gaia::cli;
    CLI::App app{"GAIA S-matrices, LZSM traces and exact-propagator comparisons"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string sweep_text;
    std::string window_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", spec.model_path, "Model JSON file")->required();
        sub->add_option("--out", spec.out_path, "Output CSV path (default: stdout)");
        sub->add_option("--sweep", sweep_text, "Sweep NAME=A:B:N");
        sub->add_option("--crossings", spec.crossings, "Number of crossing groups (LZSM)");
        sub->add_option("--tol", spec.tol, "Tolerance (oracle step, quadrature or phase)");
        sub->add_option("--window", window_text, "Time window A:B");
        sub->add_option("--max-steps", spec.max_steps, "Step limit of the exact propagator");
        sub->add_option("--seed", spec.seed, "Seed (accepted for reproducible runs)");
        sub->add_option("--initial", spec.initial, "Initial diabatic level, 1-based");
    };

    auto* grid = app.add_subcommand("grid", "S-matrix of a grid model");
    add_common(grid);
    grid->add_option("--method", spec.method, "gaia | legacy | aia | closed");
    auto* lzsm = app.add_subcommand("lzsm", "GAIA trace of a driven (LZSM) model");
    add_common(lzsm);
    auto* compare = app.add_subcommand("compare", "GAIA against the exact propagator");
    add_common(compare);
    auto* interference = app.add_subcommand("interference", "P_34 zeros or destructive-interference eta");
    add_common(interference);
    auto* random = app.add_subcommand("random", "Write a random grid model");
    random->add_option("--out", spec.out_path, "Output JSON path (default: stdout)");
    random->add_option("--seed", spec.seed, "Random seed");
    random->add_option("--levels", spec.random_n, "Levels per band");
    random->add_option("--kappa-max", spec.random_kappa_max, "Upper bound on kappa");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    spec.command = app.get_subcommands().front()->get_name();
    try {
        if (!sweep_text.empty()) spec.sweep = parse_sweep(sweep_text);
        if (!window_text.empty()) spec.window = parse_window(window_text);
    } catch (const UsageError& e) {
        std::cerr << "error: Usage: " << e.what() << "\n";
        return kExitUsage;
    }
    return run_guarded(spec, std::cerr);
}
