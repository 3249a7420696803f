// Command line front end. Subcommands: gen, solve, sweep.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "eosched/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"energy-aware satellite downlink scheduling toolkit"};
    app.require_subcommand(1);

    eosched::GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic scenario");
    gen_cmd->add_option("-c,--config", gen.config_path, "generator config JSON");
    gen_cmd->add_option("-o,--output", gen.out_path, "scenario output path (- for stdout)");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--tasks", gen.tasks, "number of tasks");
    gen_cmd->add_option("--eoses", gen.eoses, "number of satellites");
    gen_cmd->add_option("--antennas", gen.antennas, "number of ground antennas");
    gen_cmd->add_option("--slots", gen.slots, "horizon length in slots");

    eosched::SolveOptions solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one scenario");
    solve_cmd->add_option("scenario", solve.scenario_path, "scenario JSON path")
        ->required();
    solve_cmd->add_option("-o,--output", solve.out_path, "schedule output path (- for stdout)");
    solve_cmd->add_option("--solver", solve.solver, "edo | ga | random");
    double lambda_flag = -1.0;
    CLI::Option* lambda_opt =
        solve_cmd->add_option("--lambda", lambda_flag, "energy/weight trade-off in [0,1)");
    solve_cmd->add_option("--trace", solve.trace_path, "per-generation trace CSV path");
    solve_cmd->add_option("--manifest", solve.manifest_path, "run manifest JSON path");
    solve_cmd->add_option("--population", solve.ga.population_size, "population size");
    solve_cmd->add_option("--generations", solve.ga.generations, "generation count");
    solve_cmd->add_option("--crossover", solve.ga.crossover_prob, "crossover probability");
    solve_cmd->add_option("--mutation", solve.ga.mutation_prob, "mutation probability");
    solve_cmd->add_option("--tournament", solve.ga.tournament_size, "tournament size");
    solve_cmd->add_option("--elite", solve.ga.elite_count, "elites kept per generation");
    solve_cmd->add_option("--levels", solve.ga.level_count, "power grid size");
    solve_cmd->add_option("--samples", solve.random_samples,
                          "random baseline sample count");
    solve_cmd->add_option("--seed", solve.ga.seed, "solver seed");

    eosched::SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the benchmark sweeps");
    sweep_cmd->add_option("-c,--config", sweep.config_path, "sweep config JSON");
    sweep_cmd->add_option("-o,--out-dir", sweep.out_dir,
                          "output directory (default $EOSCHED_OUT_DIR or results)");
    sweep_cmd->add_option("--seed", sweep.seed, "seed when the config lists none");
    sweep_cmd->add_option("--jobs", sweep.jobs, "worker thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : eosched::kExitBadInput;
    }

    if (gen_cmd->parsed()) return eosched::cmd_gen(gen, std::cout, std::cerr);
    if (solve_cmd->parsed()) {
        if (lambda_opt->count() > 0) solve.lambda = lambda_flag;
        return eosched::cmd_solve(solve, std::cout, std::cerr);
    }
    return eosched::cmd_sweep(sweep, std::cout, std::cerr);
}
