// Command-line front end: finnet <command> --scenario file.json [flags]

#include <iostream>

#include <CLI11.hpp>

#include "finnet/cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace finnet::cli;

    CLI::App app{"Financial network dynamics: equilibria, invariant sets, cycles, interventions"};
    app.set_version_flag("--version", std::string(kToolVersion));

    RunRequest req;
    std::uint64_t seed = 0;
    double tol = 0.0, rho = 0.0;
    std::size_t horizon = 0, hmax = 0, trials = 0;
    std::string sampler;
    bool nonnegative = false, verbatim = false, clamped = false;

    app.add_option("command", req.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--scenario", req.scenario_path, "Scenario JSON file");
    app.add_option("--out", req.out_dir, "Output directory for the JSON report and CSV files");
    auto* o_seed = app.add_option("--seed", seed, "Random seed");
    auto* o_tol = app.add_option("--tol", tol, "Closure tolerance for cycle detection");
    auto* o_horizon = app.add_option("--horizon", horizon, "Simulation horizon T");
    auto* o_hmax = app.add_option("--hmax", hmax, "Largest period searched");
    auto* o_rho = app.add_option("--rho", rho, "Criticality margin");
    auto* o_trials = app.add_option("--trials", trials, "Random trials for the period-2 check");
    auto* o_sampler = app.add_option("--sampler", sampler,
                                     "constant-lower | constant-upper | iid-uniform | user-sequence");
    auto* o_nonneg = app.add_flag("--nonnegative-injection", nonnegative, "Require v >= 0");
    auto* o_verbatim = app.add_flag("--verbatim-v-update", verbatim, "v <- v - x (default)");
    auto* o_clamped = app.add_flag("--clamped-v-update", clamped, "v <- max(v - x, 0)");
    o_verbatim->excludes(o_clamped);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    Options& ov = req.overrides;
    if (o_seed->count()) ov.seed = seed;
    if (o_tol->count()) ov.tol = tol;
    if (o_horizon->count()) ov.horizon = horizon;
    if (o_hmax->count()) ov.hmax = hmax;
    if (o_rho->count()) ov.rho = rho;
    if (o_trials->count()) ov.trials = trials;
    if (o_sampler->count()) ov.sampler = sampler;
    if (o_nonneg->count()) ov.nonnegative_injection = true;
    if (o_clamped->count()) ov.clamped_v_update = true;
    if (o_verbatim->count()) ov.clamped_v_update = false;

    const auto outcome = run(req, std::cerr);
    for (const auto& f : outcome.files) std::cout << f << '\n';
    return outcome.exit_code;
}
