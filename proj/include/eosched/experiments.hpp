#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eosched/edo.hpp"
#include "eosched/scenario.hpp"

namespace eosched {

// One benchmark cell: a scenario axis point, a solver, a lambda, a seed.
struct SweepCell {
    std::string sweep;   // "lambda" or "tasks"
    std::string solver;  // "edo", "ga", "random"
    double lambda = 0.0;
    int task_count = 0;
    std::uint64_t seed = 0;
};

// One output CSV row. Column order: solver, lambda, task_count, seed,
// objective_max_form, weight_total, energy_total, generations, wall_time.
struct SweepRow {
    std::string solver;
    double lambda = 0.0;
    int task_count = 0;
    std::uint64_t seed = 0;
    double objective_max_form = 0.0;
    double weight_total = 0.0;
    double energy_total = 0.0;
    int generations = 0;  // 0 for the random baseline
    double wall_time = 0.0;
};

struct CellResult {
    SweepRow row;
    std::string trace_csv;  // empty for the random baseline
    std::string trace_name;
};

struct SweepConfig {
    std::vector<std::string> sweeps = {"lambda", "tasks"};
    std::vector<std::string> solvers = {"edo", "ga", "random"};
    std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<int> task_counts = {10, 20, 30, 40};
    double fixed_lambda = 0.3;  // used by the task-count sweep
    int fixed_tasks = 40;       // used by the lambda sweep
    std::vector<std::uint64_t> seeds = {1};
    GaParams ga;                // per-cell seed overrides ga.seed
    int random_samples = 1;     // draws per random-baseline cell
    GeneratorConfig generator;  // task count overridden per cell
    int jobs = 1;
};

// Deterministic cell enumeration: lambda sweep first, then the task-count
// sweep, each sorted by (solver, sweep value, seed).
std::vector<SweepCell> enumerate_cells(const SweepConfig& config);

CellResult run_cell(const SweepCell& cell, const SweepConfig& config);

// Runs every cell (optionally on a small thread pool) and returns results in
// enumeration order regardless of completion order.
std::vector<CellResult> run_sweep(const SweepConfig& config);

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows);

SweepConfig sweep_config_from_file(const std::string& path);

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;  // instance cannot satisfy C1/C2
inline constexpr int kExitBadInput = 3;    // bad flags or malformed input file
inline constexpr int kExitIo = 4;          // unreadable/unwritable path

struct GenOptions {
    std::string config_path;  // optional JSON overrides
    std::string out_path;     // "-" or empty means stdout
    std::uint64_t seed = 1;
    int tasks = -1;  // <0 keeps the config value
    int eoses = -1;
    int antennas = -1;
    int slots = -1;
};

struct SolveOptions {
    std::string scenario_path;
    std::string out_path;        // schedule JSON; empty skips the file
    std::string trace_path;      // optional per-generation CSV
    std::string manifest_path;   // optional run manifest JSON
    std::string solver = "edo";  // edo | ga | random
    GaParams ga;
    int random_samples = 1;
    std::optional<double> lambda;
};

struct SweepOptions {
    std::string config_path;  // optional JSON overrides
    std::string out_dir;      // empty falls back to $EOSCHED_OUT_DIR or "results"
    std::uint64_t seed = 1;   // used when the config lists no seeds
    int jobs = 0;             // 0 keeps the config value
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

}  // namespace eosched
