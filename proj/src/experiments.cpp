#include "eosched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eosched/errors.hpp"
#include "eosched/evaluation.hpp"
#include "textio.hpp"

namespace eosched {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kKnownSolvers = {"edo", "ga", "random"};

void check_config(const SweepConfig& config) {
    if (config.solvers.empty()) throw ParseError("sweep config: no solvers selected");
    for (const std::string& s : config.solvers)
        if (std::find(kKnownSolvers.begin(), kKnownSolvers.end(), s) ==
            kKnownSolvers.end())
            throw ParseError("sweep config: unknown solver " + s);
    for (const std::string& s : config.sweeps)
        if (s != "lambda" && s != "tasks")
            throw ParseError("sweep config: unknown sweep " + s);
    for (double l : config.lambdas)
        if (!(l >= 0.0) || !(l < 1.0))
            throw ParseError("sweep config: lambda values must lie in [0, 1)");
    if (!(config.fixed_lambda >= 0.0) || !(config.fixed_lambda < 1.0))
        throw ParseError("sweep config: fixed_lambda must lie in [0, 1)");
    for (int n : config.task_counts)
        if (n < 0) throw ParseError("sweep config: negative task count");
    if (config.fixed_tasks < 0) throw ParseError("sweep config: negative fixed_tasks");
    if (config.random_samples < 1 &&
        std::find(config.solvers.begin(), config.solvers.end(), "random") !=
            config.solvers.end())
        throw ParseError("sweep config: random_samples must be >= 1");
}

}  // namespace

std::vector<SweepCell> enumerate_cells(const SweepConfig& config) {
    check_config(config);
    std::vector<std::string> solvers = config.solvers;
    std::sort(solvers.begin(), solvers.end());
    solvers.erase(std::unique(solvers.begin(), solvers.end()), solvers.end());
    std::vector<std::uint64_t> seeds = config.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::vector<SweepCell> cells;
    for (const std::string& sweep : config.sweeps) {
        if (sweep == "lambda") {
            std::vector<double> lambdas = config.lambdas;
            std::sort(lambdas.begin(), lambdas.end());
            for (const std::string& solver : solvers)
                for (double lambda : lambdas)
                    for (std::uint64_t seed : seeds)
                        cells.push_back(
                            {sweep, solver, lambda, config.fixed_tasks, seed});
        } else {
            std::vector<int> counts = config.task_counts;
            std::sort(counts.begin(), counts.end());
            for (const std::string& solver : solvers)
                for (int count : counts)
                    for (std::uint64_t seed : seeds)
                        cells.push_back(
                            {sweep, solver, config.fixed_lambda, count, seed});
        }
    }
    return cells;
}

CellResult run_cell(const SweepCell& cell, const SweepConfig& config) {
    GeneratorConfig gen = config.generator;
    gen.num_tasks = cell.task_count;
    const Scenario scenario = generate_synthetic(gen, cell.seed);

    GaParams params = config.ga;
    params.seed = cell.seed;

    const auto started = std::chrono::steady_clock::now();
    SolveResult solved;
    if (cell.solver == "edo") {
        solved = run_edo(scenario, params, cell.lambda);
    } else if (cell.solver == "ga") {
        solved = run_baseline_ga(scenario, params, cell.lambda);
    } else {
        solved = run_baseline_random(scenario, cell.seed, config.random_samples,
                                     params.level_count, cell.lambda);
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - started;

    CellResult result;
    result.row.solver = cell.solver;
    result.row.lambda = cell.lambda;
    result.row.task_count = cell.task_count;
    result.row.seed = cell.seed;
    result.row.objective_max_form = solved.schedule.objective_max_form;
    result.row.weight_total = solved.schedule.weight_total;
    result.row.energy_total = solved.schedule.energy_total;
    result.row.generations = cell.solver == "random" ? 0 : params.generations;
    result.row.wall_time = elapsed.count();

    if (!solved.trace.empty()) {
        result.trace_csv = trace_to_csv(solved.trace);
        std::ostringstream name;
        name << cell.sweep << "_" << cell.solver << "_lambda"
             << format_double(cell.lambda) << "_tasks" << cell.task_count << "_seed"
             << cell.seed << ".csv";
        result.trace_name = name.str();
    }
    return result;
}

std::vector<CellResult> run_sweep(const SweepConfig& config) {
    const std::vector<SweepCell> cells = enumerate_cells(config);
    std::vector<CellResult> results(cells.size());

    const int jobs = std::max(1, std::min<int>(config.jobs,
                                               static_cast<int>(cells.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            results[i] = run_cell(cells[i], config);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                results[i] = run_cell(cells[i], config);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::string sweep_rows_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream ss;
    ss << "solver,lambda,task_count,seed,objective_max_form,weight_total,"
          "energy_total,generations,wall_time\n";
    for (const SweepRow& r : rows) {
        ss << r.solver << "," << format_double(r.lambda) << "," << r.task_count
           << "," << r.seed << "," << format_double(r.objective_max_form) << ","
           << format_double(r.weight_total) << "," << format_double(r.energy_total)
           << "," << r.generations << "," << format_double(r.wall_time) << "\n";
    }
    return ss.str();
}

SweepConfig sweep_config_from_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("sweep config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("sweep config: top level must be an object");

    SweepConfig c;
    auto strings = [&](const char* key, std::vector<std::string>& field) {
        if (!j.contains(key)) return;
        field.clear();
        for (const json& v : j.at(key)) field.push_back(v.get<std::string>());
    };
    strings("sweeps", c.sweeps);
    strings("solvers", c.solvers);
    if (j.contains("lambdas")) {
        c.lambdas.clear();
        for (const json& v : j.at("lambdas")) c.lambdas.push_back(v.get<double>());
    }
    if (j.contains("task_counts")) {
        c.task_counts.clear();
        for (const json& v : j.at("task_counts"))
            c.task_counts.push_back(v.get<int>());
    }
    if (j.contains("fixed_lambda")) c.fixed_lambda = j.at("fixed_lambda").get<double>();
    if (j.contains("fixed_tasks")) c.fixed_tasks = j.at("fixed_tasks").get<int>();
    if (j.contains("seeds")) {
        c.seeds.clear();
        for (const json& v : j.at("seeds"))
            c.seeds.push_back(v.get<std::uint64_t>());
    }
    if (j.contains("ga")) {
        const json& g = j.at("ga");
        auto integer = [&](const char* key, int& field) {
            if (g.contains(key)) field = g.at(key).get<int>();
        };
        auto real = [&](const char* key, double& field) {
            if (g.contains(key)) field = g.at(key).get<double>();
        };
        integer("population_size", c.ga.population_size);
        integer("generations", c.ga.generations);
        real("crossover_prob", c.ga.crossover_prob);
        real("mutation_prob", c.ga.mutation_prob);
        integer("tournament_size", c.ga.tournament_size);
        integer("elite_count", c.ga.elite_count);
        integer("level_count", c.ga.level_count);
    }
    if (j.contains("random_samples"))
        c.random_samples = j.at("random_samples").get<int>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (j.contains("generator"))
        c.generator = generator_config_from_string(j.at("generator").dump());
    check_config(c);
    return c;
}

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

json ga_to_json(const GaParams& p) {
    return {{"population_size", p.population_size},
            {"generations", p.generations},
            {"crossover_prob", p.crossover_prob},
            {"mutation_prob", p.mutation_prob},
            {"tournament_size", p.tournament_size},
            {"elite_count", p.elite_count},
            {"level_count", p.level_count},
            {"seed", p.seed}};
}

}  // namespace

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        GeneratorConfig config;
        if (!options.config_path.empty())
            config = generator_config_from_file(options.config_path);
        if (options.tasks >= 0) config.num_tasks = options.tasks;
        if (options.eoses >= 0) config.num_eoses = options.eoses;
        if (options.antennas >= 0) config.num_antennas = options.antennas;
        if (options.slots >= 0) config.num_slots = options.slots;

        const Scenario scenario = generate_synthetic(config, options.seed);
        const std::string text = scenario_to_string(scenario);
        if (options.out_path.empty() || options.out_path == "-") {
            out << text;
        } else {
            write_text_file(options.out_path, text);
            out << "wrote " << options.out_path << " (" << scenario.tasks.size()
                << " tasks, " << scenario.ttws.size() << " ttws, hash "
                << scenario_hash(scenario) << ")\n";
        }
        return kExitOk;
    });
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.solver != "edo" && options.solver != "ga" &&
            options.solver != "random")
            throw std::invalid_argument("unknown solver " + options.solver);
        if (options.lambda && (!(*options.lambda >= 0.0) || !(*options.lambda < 1.0)))
            throw std::invalid_argument("lambda must lie in [0, 1)");

        const Scenario scenario = load_scenario(options.scenario_path);

        SolveResult solved;
        if (options.solver == "edo") {
            solved = run_edo(scenario, options.ga, options.lambda);
        } else if (options.solver == "ga") {
            solved = run_baseline_ga(scenario, options.ga, options.lambda);
        } else {
            solved = run_baseline_random(scenario, options.ga.seed,
                                         options.random_samples,
                                         options.ga.level_count, options.lambda);
        }
        for (const std::string& w : solved.warnings) err << "warning: " << w << "\n";

        const std::vector<Violation> violations =
            validate_schedule(solved.schedule, scenario);
        if (!violations.empty()) {
            err << "internal error: solver produced an invalid schedule\n"
                << violations_to_string(violations);
            return 1;
        }

        if (!options.out_path.empty()) {
            if (options.out_path == "-")
                out << schedule_to_string(solved.schedule, scenario);
            else
                save_schedule(solved.schedule, scenario, options.out_path);
        }
        if (!options.trace_path.empty())
            write_text_file(options.trace_path, trace_to_csv(solved.trace));
        if (!options.manifest_path.empty()) {
            json manifest;
            manifest["solver"] = options.solver;
            manifest["lambda"] = solved.solve_lambda;
            manifest["scenario_hash"] = scenario_hash(scenario);
            manifest["ga"] = ga_to_json(options.ga);
            if (options.solver == "random")
                manifest["samples"] = options.random_samples;
            manifest["fitness_evaluations"] = solved.fitness_evaluations;
            manifest["dropped_tasks"] = solved.warnings.size();
            write_text_file(options.manifest_path, manifest.dump(2) + "\n");
        }

        out << "solver: " << options.solver << "\n";
        out << "scenario_hash: " << scenario_hash(scenario) << "\n";
        out << "lambda: " << format_double(solved.solve_lambda) << "\n";
        out << "scheduled_tasks: " << solved.schedule.assignments.size() << "\n";
        out << "weight_total: " << format_double(solved.schedule.weight_total)
            << "\n";
        out << "energy_total_joules: "
            << format_double(solved.schedule.energy_total) << "\n";
        out << "objective_max_form: "
            << format_double(solved.schedule.objective_max_form) << "\n";
        out << "fitness_evaluations: " << solved.fitness_evaluations << "\n";
        out << "validator: ok\n";
        return kExitOk;
    });
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SweepConfig config;
        if (!options.config_path.empty())
            config = sweep_config_from_file(options.config_path);
        if (config.seeds.empty()) config.seeds = {options.seed};
        if (options.jobs > 0) config.jobs = options.jobs;

        std::string out_dir = options.out_dir;
        if (out_dir.empty()) {
            const char* env = std::getenv("EOSCHED_OUT_DIR");
            out_dir = env && *env ? env : "results";
        }
        fs::create_directories(out_dir);

        const std::vector<SweepCell> cells = enumerate_cells(config);
        const std::vector<CellResult> results = run_sweep(config);

        bool have_traces = false;
        for (const CellResult& r : results)
            if (!r.trace_csv.empty()) have_traces = true;
        if (have_traces) fs::create_directories(fs::path(out_dir) / "traces");

        for (const std::string& sweep : config.sweeps) {
            std::vector<SweepRow> rows;
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i].sweep == sweep) rows.push_back(results[i].row);
            const fs::path path = fs::path(out_dir) / (sweep + "_sweep.csv");
            write_text_file(path.string(), sweep_rows_to_csv(rows));
            out << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
        }
        std::size_t traces = 0;
        for (const CellResult& r : results) {
            if (r.trace_csv.empty()) continue;
            const fs::path path = fs::path(out_dir) / "traces" / r.trace_name;
            write_text_file(path.string(), r.trace_csv);
            ++traces;
        }
        if (traces) out << "wrote " << traces << " trace files\n";

        json manifest;
        manifest["sweeps"] = config.sweeps;
        manifest["solvers"] = config.solvers;
        manifest["lambdas"] = config.lambdas;
        manifest["task_counts"] = config.task_counts;
        manifest["fixed_lambda"] = config.fixed_lambda;
        manifest["fixed_tasks"] = config.fixed_tasks;
        manifest["seeds"] = config.seeds;
        manifest["ga"] = ga_to_json(config.ga);
        manifest["random_samples"] = config.random_samples;
        manifest["cells"] = cells.size();
        const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
        write_text_file(manifest_path.string(), manifest.dump(2) + "\n");
        out << "wrote " << manifest_path.string() << "\n";
        return kExitOk;
    });
}

}  // namespace eosched
