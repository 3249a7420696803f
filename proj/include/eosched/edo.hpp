#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eosched/power.hpp"
#include "eosched/rng.hpp"
#include "eosched/schedule.hpp"
#include "eosched/scenario.hpp"

namespace eosched {

struct GaParams {
    int population_size = 60;
    int generations = 200;
    double crossover_prob = 0.5;
    double mutation_prob = 0.8;  // per chromosome; genes flip at 1/genome_length
    int tournament_size = 2;
    int elite_count = 2;
    std::uint64_t seed = 1;
    int level_count = 8;
};

// Binary genome: per-task power index bits first, then one inclusion bit per
// feasible (task, ttw, start) triple. fitness/selected are caches filled by
// the repair step.
struct Chromosome {
    std::vector<std::uint8_t> genes;
    double fitness = 0.0;
    bool evaluated = false;
    std::vector<std::int32_t> selected;  // repaired triple ids, sorted
};

struct TripleRef {
    std::int32_t task = -1;
    std::int32_t ttw = -1;
    std::int32_t start_slot = -1;
};

// How the per-task power levels are laid out.
enum class GridMode {
    reduced,     // levels span [per-task optimum, max power]
    full_range,  // levels span [0, max power); low levels may be infeasible
};

// Frozen per-run context: the genome layout, per-task power grids, and the
// triple enumeration (taken at each task's minimum feasible power, the
// largest blocking any decodable power can need under the reduced grid).
// Tasks whose rate requirement is unreachable at the power cap are dropped
// up front and reported in warnings.
struct SolverContext {
    const Scenario* scenario = nullptr;
    double lambda = 0.0;
    double weight_norm = 1.0;
    double energy_norm = 1.0;
    GridMode mode = GridMode::reduced;

    std::vector<int> kept_tasks;          // task indices still in play
    std::vector<std::uint8_t> task_kept;  // by task index
    std::vector<std::string> warnings;

    std::vector<double> min_power;   // by task; per-task feasible minimum
    std::vector<PowerGrid> grids;    // by task; empty for dropped tasks
    std::vector<int> power_offset;   // by task; first gene of the power field
    std::vector<int> power_bits;     // by task

    std::vector<TripleRef> triples;  // lexicographic (task, ttw, start)
    // Per (kept task, ttw) contiguous triple ranges: [begin, end) into triples.
    struct TripleGroup {
        std::int32_t task = -1;
        std::int32_t ttw = -1;
        std::int32_t begin = 0;
        std::int32_t end = 0;
    };
    std::vector<TripleGroup> groups;

    std::vector<double> ttw_beta;  // by ttw index
    int power_genes_total = 0;
    int genome_length = 0;

    int inclusion_offset(std::int32_t triple_id) const {
        return power_genes_total + triple_id;
    }
};

SolverContext build_solver_context(const Scenario& scenario, const GaParams& params,
                                   GridMode mode,
                                   std::optional<double> lambda_override = {});

struct DecodeResult {
    std::vector<double> powers;            // by task; 0 for dropped tasks
    std::vector<std::int32_t> candidates;  // triple ids feasible at the powers
};

// Maps a genome to (powers, candidate triples). Power bits wrap modulo the
// level count; inclusion bits whose triple is infeasible at the decoded
// power (rate below the window requirement, or blocking grown past the
// window) are dropped. Throws std::invalid_argument on length mismatch.
DecodeResult decode(const Chromosome& chromosome, const SolverContext& context);

// Scores a chromosome: solves the induced conflict subgraph on its candidate
// triples, writes the surviving bits back into the genome (repair), caches
// the selected triples, and returns the objective value of the repaired
// schedule in maximization form.
double fitness(Chromosome& chromosome, const SolverContext& context);

// One generation: clone, pairwise single-point crossover, per-gene mutation,
// offspring evaluation, then elitism + tournament selection over the merged
// parent/offspring pool. Returns the number of fitness evaluations spent.
std::uint64_t evolve(std::vector<Chromosome>& population, const GaParams& params,
                     const SolverContext& context, Rng& rng);

struct TracePoint {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
};

struct SolveResult {
    Schedule schedule;
    std::vector<TracePoint> trace;
    std::vector<std::string> warnings;
    std::uint64_t fitness_evaluations = 0;
    double solve_lambda = 0.0;
};

// Two-layer solver: per-task optimal powers bound the grids, a genetic
// search drives (power levels, candidate triples), and the greedy
// independent-set repair scores each genome. Deterministic for a fixed
// (scenario, params) pair.
SolveResult run_edo(const Scenario& scenario, const GaParams& params,
                    std::optional<double> lambda_override = {});

// Same loop over the unreduced power interval [0, max power); levels below
// a window's feasible minimum decode to no candidates for it.
SolveResult run_baseline_ga(const Scenario& scenario, const GaParams& params,
                            std::optional<double> lambda_override = {});

// Draws `samples` random genomes over the unreduced grid, repairs each, and
// keeps the best repaired schedule.
SolveResult run_baseline_random(const Scenario& scenario, std::uint64_t seed,
                                int samples, int level_count = 8,
                                std::optional<double> lambda_override = {});

std::string trace_to_csv(const std::vector<TracePoint>& trace);

}  // namespace eosched
