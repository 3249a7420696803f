#include "eosched/edo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "eosched/channel.hpp"
#include "eosched/confgraph.hpp"
#include "eosched/errors.hpp"
#include "eosched/evaluation.hpp"
#include "textio.hpp"

namespace eosched {

namespace {

int bits_for(int level_count) {
    int bits = 0;
    while ((1 << bits) < level_count) ++bits;
    return bits;
}

void check_params(const GaParams& p, bool evolutionary) {
    if (evolutionary && p.population_size < 2)
        throw std::invalid_argument("population_size must be >= 2");
    if (p.generations < 0) throw std::invalid_argument("generations must be >= 0");
    if (p.crossover_prob < 0.0 || p.crossover_prob > 1.0 || p.mutation_prob < 0.0 ||
        p.mutation_prob > 1.0)
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (p.tournament_size < 1)
        throw std::invalid_argument("tournament_size must be >= 1");
    if (p.elite_count < 0) throw std::invalid_argument("elite_count must be >= 0");
    if (p.level_count < 1) throw std::invalid_argument("level_count must be >= 1");
}

}  // namespace

SolverContext build_solver_context(const Scenario& scenario, const GaParams& params,
                                   GridMode mode,
                                   std::optional<double> lambda_override) {
    SolverContext ctx;
    ctx.scenario = &scenario;
    ctx.lambda = lambda_override.value_or(scenario.globals.lambda);
    ctx.mode = mode;
    const Norms norms = resolve_norms(scenario);
    ctx.weight_norm = norms.weight_norm;
    ctx.energy_norm = norms.energy_norm;

    ctx.ttw_beta.resize(scenario.ttws.size());
    for (std::size_t k = 0; k < scenario.ttws.size(); ++k) {
        const Ttw& ttw = scenario.ttws[k];
        const Eos& eos = scenario.eoses[ttw.eos_index];
        const double gains_db =
            eos.transmit_gain_db + ttw.antenna_gain_db - ttw.path_loss_db;
        ctx.ttw_beta[k] = db_to_linear(gains_db) * scenario.globals.free_space_loss /
                          scenario.globals.noise_power;
    }

    const int num_tasks = static_cast<int>(scenario.tasks.size());
    ctx.task_kept.assign(num_tasks, 0);
    ctx.min_power.assign(num_tasks, 0.0);
    ctx.grids.resize(num_tasks);
    ctx.power_offset.assign(num_tasks, 0);
    ctx.power_bits.assign(num_tasks, 0);

    for (int j = 0; j < num_tasks; ++j) {
        const Task& task = scenario.tasks[j];
        if (scenario.ttws_of_eos[task.eos_index].empty()) {
            ctx.warnings.push_back("task " + task.id +
                                   " dropped: its satellite has no contact windows");
            continue;
        }
        TaskPower tp;
        try {
            tp = task_min_power(task, scenario);
        } catch (const InfeasibleError& e) {
            ctx.warnings.push_back(std::string("task ") + task.id +
                                   " dropped: " + e.what());
            continue;
        }
        const Eos& eos = scenario.eoses[task.eos_index];
        ctx.task_kept[j] = 1;
        ctx.kept_tasks.push_back(j);
        ctx.min_power[j] = tp.power;
        ctx.grids[j] = mode == GridMode::reduced
                           ? uniform_power_grid(tp.power, eos.max_power,
                                                params.level_count)
                           : uniform_power_grid(0.0, eos.max_power,
                                                params.level_count);
        ctx.power_bits[j] = bits_for(params.level_count);
    }

    int offset = 0;
    for (int j : ctx.kept_tasks) {
        ctx.power_offset[j] = offset;
        offset += ctx.power_bits[j];
    }
    ctx.power_genes_total = offset;

    // Triples in (task, ttw, start) order, with processing time taken at the
    // per-task feasible minimum: the widest enumeration any decodable power
    // can keep.
    for (int j : ctx.kept_tasks) {
        const Task& task = scenario.tasks[j];
        for (int k : scenario.ttws_of_eos[task.eos_index]) {
            const Ttw& ttw = scenario.ttws[k];
            LinkParams lp;
            lp.beta = ctx.ttw_beta[k];
            lp.bandwidth = scenario.globals.bandwidth;
            lp.rate_requirement = ttw.rate_requirement;
            lp.max_power = scenario.eoses[task.eos_index].max_power;
            const double rate = sgl_rate(ctx.min_power[j], lp);
            const int proc = proc_slots_for(task.data_bits / rate,
                                            scenario.grid.slot_duration);
            const SlotInterval feas = feasible_slots(task, ttw, proc);
            if (feas.empty()) continue;
            SolverContext::TripleGroup group;
            group.task = j;
            group.ttw = k;
            group.begin = static_cast<std::int32_t>(ctx.triples.size());
            for (int t = feas.first; t <= feas.last; ++t)
                ctx.triples.push_back({j, k, t});
            group.end = static_cast<std::int32_t>(ctx.triples.size());
            ctx.groups.push_back(group);
        }
    }

    ctx.genome_length =
        ctx.power_genes_total + static_cast<int>(ctx.triples.size());
    return ctx;
}

DecodeResult decode(const Chromosome& chromosome, const SolverContext& context) {
    if (static_cast<int>(chromosome.genes.size()) != context.genome_length)
        throw std::invalid_argument("chromosome length does not match the context");

    const Scenario& sc = *context.scenario;
    DecodeResult out;
    out.powers.assign(sc.tasks.size(), 0.0);

    for (int j : context.kept_tasks) {
        int index = 0;
        for (int b = 0; b < context.power_bits[j]; ++b)
            index |= chromosome.genes[context.power_offset[j] + b] << b;
        const int levels = context.grids[j].level_count();
        out.powers[j] = context.grids[j].levels[index % levels];
    }

    for (const SolverContext::TripleGroup& group : context.groups) {
        const double power = out.powers[group.task];
        // The per-task minimum enforces every window's rate requirement;
        // lower levels leave the whole task out of this chromosome.
        if (power < context.min_power[group.task]) continue;
        const Task& task = sc.tasks[group.task];
        const Ttw& ttw = sc.ttws[group.ttw];
        LinkParams lp;
        lp.beta = context.ttw_beta[group.ttw];
        lp.bandwidth = sc.globals.bandwidth;
        lp.rate_requirement = ttw.rate_requirement;
        lp.max_power = sc.eoses[task.eos_index].max_power;
        const double rate = sgl_rate(power, lp);
        const int proc =
            proc_slots_for(task.data_bits / rate, sc.grid.slot_duration);
        const SlotInterval feas = feasible_slots(task, ttw, proc);
        for (std::int32_t id = group.begin; id < group.end; ++id) {
            if (!chromosome.genes[context.inclusion_offset(id)]) continue;
            if (!feas.contains(context.triples[id].start_slot)) continue;
            out.candidates.push_back(id);
        }
    }
    return out;
}

namespace {

// Reused buffers for the per-chromosome independent-set repair. The solve
// loop is single-threaded per run; thread_local keeps concurrent sweep cells
// apart.
struct RepairWorkspace {
    std::vector<double> weight;     // per candidate
    std::vector<int> task_of;       // per candidate
    std::vector<int> occ_first, occ_last;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> cross_offset;  // CSR over candidates
    std::vector<int> cross_edges;
    std::vector<char> alive;
    std::vector<int> cross_deg;
    std::vector<int> task_alive;    // per task index
    std::vector<int> task_begin, task_end;  // candidate ranges per task
    std::vector<std::vector<int>> antenna_bucket;
    std::vector<std::vector<int>> eos_bucket;
    std::vector<int> touched_antenna, touched_eos;
};

thread_local RepairWorkspace ws;

}  // namespace

double fitness(Chromosome& chromosome, const SolverContext& context) {
    const Scenario& sc = *context.scenario;
    const DecodeResult dec = decode(chromosome, context);
    const std::vector<std::int32_t>& cand = dec.candidates;
    const int n = static_cast<int>(cand.size());
    const int num_tasks = static_cast<int>(sc.tasks.size());
    const int slots = sc.grid.num_slots;

    ws.weight.resize(n);
    ws.task_of.resize(n);
    ws.occ_first.resize(n);
    ws.occ_last.resize(n);
    ws.task_begin.assign(num_tasks, 0);
    ws.task_end.assign(num_tasks, 0);
    ws.task_alive.assign(num_tasks, 0);

    // Per-(task, ttw) link data; candidates arrive grouped by (task, ttw).
    {
        int i = 0;
        std::size_t gi = 0;
        while (i < n) {
            const TripleRef& ref = context.triples[cand[i]];
            while (context.groups[gi].task != ref.task ||
                   context.groups[gi].ttw != ref.ttw)
                ++gi;
            const SolverContext::TripleGroup& group = context.groups[gi];
            const Task& task = sc.tasks[group.task];
            const Ttw& ttw = sc.ttws[group.ttw];
            LinkParams lp;
            lp.beta = context.ttw_beta[group.ttw];
            lp.bandwidth = sc.globals.bandwidth;
            lp.rate_requirement = ttw.rate_requirement;
            lp.max_power = sc.eoses[task.eos_index].max_power;
            const double power = dec.powers[group.task];
            const double rate = sgl_rate(power, lp);
            const double proc_seconds = task.data_bits / rate;
            const int proc = proc_slots_for(proc_seconds, sc.grid.slot_duration);
            const double energy = power * proc_seconds;
            const double weight =
                (1.0 - context.lambda) * task.weight / context.weight_norm -
                context.lambda * energy / context.energy_norm;
            while (i < n) {
                const TripleRef& r = context.triples[cand[i]];
                if (r.task != group.task || r.ttw != group.ttw) break;
                ws.weight[i] = weight;
                ws.task_of[i] = r.task;
                ws.occ_first[i] = r.start_slot;
                ws.occ_last[i] = r.start_slot + proc - 1;
                ++i;
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        const int j = ws.task_of[i];
        if (ws.task_alive[j] == 0) ws.task_begin[j] = i;
        ws.task_end[j] = i + 1;
        ++ws.task_alive[j];
    }

    // Cross-task conflicts through per-(resource, slot) buckets. Stale
    // buckets are cleared before any resize so their indices stay valid.
    for (int b : ws.touched_antenna) ws.antenna_bucket[b].clear();
    for (int b : ws.touched_eos) ws.eos_bucket[b].clear();
    ws.touched_antenna.clear();
    ws.touched_eos.clear();
    ws.antenna_bucket.resize(static_cast<std::size_t>(sc.antennas.size()) * slots);
    ws.eos_bucket.resize(static_cast<std::size_t>(sc.eoses.size()) * slots);
    ws.pairs.clear();
    for (int i = 0; i < n; ++i) {
        const TripleRef& ref = context.triples[cand[i]];
        const Ttw& ttw = sc.ttws[ref.ttw];
        const int last = std::min(ws.occ_last[i], slots - 1);
        for (int t = std::max(ws.occ_first[i], 0); t <= last; ++t) {
            const int ab = ttw.antenna_index * slots + t;
            if (ws.antenna_bucket[ab].empty()) ws.touched_antenna.push_back(ab);
            ws.antenna_bucket[ab].push_back(i);
            const int eb = ttw.eos_index * slots + t;
            if (ws.eos_bucket[eb].empty()) ws.touched_eos.push_back(eb);
            ws.eos_bucket[eb].push_back(i);
        }
    }
    auto collect = [&](const std::vector<int>& touched,
                       const std::vector<std::vector<int>>& buckets) {
        for (int b : touched) {
            const std::vector<int>& bucket = buckets[b];
            for (std::size_t x = 0; x < bucket.size(); ++x)
                for (std::size_t y = x + 1; y < bucket.size(); ++y) {
                    const int u = bucket[x], v = bucket[y];
                    if (ws.task_of[u] == ws.task_of[v]) continue;
                    ws.pairs.emplace_back(std::min(u, v), std::max(u, v));
                }
        }
    };
    collect(ws.touched_antenna, ws.antenna_bucket);
    collect(ws.touched_eos, ws.eos_bucket);
    std::sort(ws.pairs.begin(), ws.pairs.end());
    ws.pairs.erase(std::unique(ws.pairs.begin(), ws.pairs.end()), ws.pairs.end());

    ws.cross_offset.assign(n + 1, 0);
    for (const auto& [u, v] : ws.pairs) {
        ++ws.cross_offset[u + 1];
        ++ws.cross_offset[v + 1];
    }
    for (int i = 0; i < n; ++i) ws.cross_offset[i + 1] += ws.cross_offset[i];
    ws.cross_edges.resize(ws.pairs.size() * 2);
    {
        std::vector<int> fill(ws.cross_offset.begin(), ws.cross_offset.end() - 1);
        for (const auto& [u, v] : ws.pairs) {
            ws.cross_edges[fill[u]++] = v;
            ws.cross_edges[fill[v]++] = u;
        }
    }

    // Greedy weighted independent set, same rule as greedy_mwis: repeatedly
    // take the best weight/(degree+1) among positive-weight survivors, ties
    // to the lower id; same-task cliques are implicit in task_alive.
    ws.alive.assign(n, 1);
    ws.cross_deg.resize(n);
    for (int i = 0; i < n; ++i)
        ws.cross_deg[i] = ws.cross_offset[i + 1] - ws.cross_offset[i];

    std::vector<std::int32_t> selected;
    for (;;) {
        int best = -1;
        double best_score = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!ws.alive[i] || !(ws.weight[i] > 0.0)) continue;
            const int degree = ws.task_alive[ws.task_of[i]] - 1 + ws.cross_deg[i];
            const double score = ws.weight[i] / (degree + 1);
            if (best < 0 || score > best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best < 0) break;
        selected.push_back(cand[best]);

        auto kill = [&](int u) {
            if (!ws.alive[u]) return;
            ws.alive[u] = 0;
            --ws.task_alive[ws.task_of[u]];
            for (int e = ws.cross_offset[u]; e < ws.cross_offset[u + 1]; ++e)
                if (ws.alive[ws.cross_edges[e]]) --ws.cross_deg[ws.cross_edges[e]];
        };
        const int bt = ws.task_of[best];
        for (int u = ws.task_begin[bt]; u < ws.task_end[bt]; ++u)
            if (ws.task_of[u] == bt) kill(u);
        kill(best);
        for (int e = ws.cross_offset[best]; e < ws.cross_offset[best + 1]; ++e)
            kill(ws.cross_edges[e]);
    }

    std::sort(selected.begin(), selected.end());

    // Repair: the genome keeps exactly the surviving assignments.
    std::fill(chromosome.genes.begin() + context.power_genes_total,
              chromosome.genes.end(), std::uint8_t{0});
    double total = 0.0;
    chromosome.selected = selected;
    for (std::int32_t id : selected)
        chromosome.genes[context.inclusion_offset(id)] = 1;
    {
        // Weights summed in candidate order to mirror set_weight on the
        // induced subgraph.
        std::size_t si = 0;
        for (int i = 0; i < n && si < selected.size(); ++i)
            if (cand[i] == selected[si]) {
                total += ws.weight[i];
                ++si;
            }
    }
    chromosome.fitness = total;
    chromosome.evaluated = true;
    return total;
}

namespace {

double best_fitness(const std::vector<Chromosome>& population) {
    double best = 0.0;
    bool first = true;
    for (const Chromosome& c : population) {
        if (first || c.fitness > best) best = c.fitness;
        first = false;
    }
    return best;
}

double mean_fitness(const std::vector<Chromosome>& population) {
    if (population.empty()) return 0.0;
    double sum = 0.0;
    for (const Chromosome& c : population) sum += c.fitness;
    return sum / static_cast<double>(population.size());
}

void mutate(Chromosome& c, double gene_prob, Rng& rng) {
    const std::uint64_t len = c.genes.size();
    std::uint64_t pos = rng.geometric_skip(gene_prob);
    while (pos < len) {
        c.genes[pos] ^= 1;
        const std::uint64_t skip = rng.geometric_skip(gene_prob);
        if (len - pos - 1 <= skip) break;
        pos += 1 + skip;
    }
}

}  // namespace

std::uint64_t evolve(std::vector<Chromosome>& population, const GaParams& params,
                     const SolverContext& context, Rng& rng) {
    const int u = static_cast<int>(population.size());
    const int length = context.genome_length;

    std::vector<Chromosome> offspring = population;

    if (length >= 2) {
        for (int i = 0; i + 1 < u; i += 2) {
            if (!rng.bernoulli(params.crossover_prob)) continue;
            const int cut = static_cast<int>(rng.uniform_int(1, length - 1));
            for (int g = cut; g < length; ++g)
                std::swap(offspring[i].genes[g], offspring[i + 1].genes[g]);
        }
    }
    if (length >= 1) {
        for (Chromosome& c : offspring)
            if (rng.bernoulli(params.mutation_prob))
                mutate(c, 1.0 / length, rng);
    }

    std::uint64_t evaluations = 0;
    for (Chromosome& c : offspring) {
        fitness(c, context);
        ++evaluations;
    }

    // Merge and select: the elite_count best overall survive as-is, the rest
    // of the next population comes from tournaments over the merged pool.
    std::vector<const Chromosome*> merged;
    merged.reserve(2 * u);
    for (const Chromosome& c : population) merged.push_back(&c);
    for (const Chromosome& c : offspring) merged.push_back(&c);

    std::vector<int> rank(merged.size());
    for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = static_cast<int>(i);
    std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
        return merged[a]->fitness > merged[b]->fitness;
    });

    const int elites = std::min(params.elite_count, u);
    std::vector<Chromosome> next;
    next.reserve(u);
    for (int i = 0; i < elites; ++i) next.push_back(*merged[rank[i]]);
    for (int i = elites; i < u; ++i) {
        int winner = -1;
        for (int t = 0; t < params.tournament_size; ++t) {
            const int pick = static_cast<int>(rng.uniform_index(merged.size()));
            if (winner < 0 || merged[pick]->fitness > merged[winner]->fitness)
                winner = pick;
        }
        next.push_back(*merged[winner]);
    }
    population = std::move(next);
    return evaluations;
}

namespace {

Schedule make_schedule(const Chromosome& best, const SolverContext& context) {
    const Scenario& sc = *context.scenario;
    const DecodeResult dec = decode(best, context);
    Schedule s;
    s.lambda = context.lambda;
    s.powers.assign(sc.tasks.size(), 0.0);
    for (std::int32_t id : best.selected) {
        const TripleRef& ref = context.triples[id];
        s.assignments.push_back({ref.task, ref.ttw, ref.start_slot});
        s.powers[ref.task] = dec.powers[ref.task];
    }
    const ObjectiveBreakdown b = objective(s, sc, context.lambda);
    s.objective_max_form = b.max_form_value;
    s.energy_total = b.energy_total;
    s.weight_total = b.weight_total;
    return s;
}

SolveResult run_evolutionary(const Scenario& scenario, const GaParams& params,
                             GridMode mode, std::optional<double> lambda_override) {
    check_params(params, true);
    SolverContext ctx = build_solver_context(scenario, params, mode, lambda_override);
    Rng rng(params.seed);

    std::vector<Chromosome> population(params.population_size);
    for (Chromosome& c : population) {
        c.genes.resize(ctx.genome_length);
        for (std::uint8_t& g : c.genes) g = rng.bernoulli(0.5) ? 1 : 0;
    }

    SolveResult result;
    for (Chromosome& c : population) {
        fitness(c, ctx);
        ++result.fitness_evaluations;
    }
    result.trace.push_back({0, best_fitness(population), mean_fitness(population)});

    for (int gen = 1; gen <= params.generations; ++gen) {
        result.fitness_evaluations += evolve(population, params, ctx, rng);
        result.trace.push_back(
            {gen, best_fitness(population), mean_fitness(population)});
    }

    int best = 0;
    for (int i = 1; i < static_cast<int>(population.size()); ++i)
        if (population[i].fitness > population[best].fitness) best = i;

    result.schedule = make_schedule(population[best], ctx);
    result.warnings = ctx.warnings;
    result.solve_lambda = ctx.lambda;
    return result;
}

}  // namespace

SolveResult run_edo(const Scenario& scenario, const GaParams& params,
                    std::optional<double> lambda_override) {
    return run_evolutionary(scenario, params, GridMode::reduced, lambda_override);
}

SolveResult run_baseline_ga(const Scenario& scenario, const GaParams& params,
                            std::optional<double> lambda_override) {
    return run_evolutionary(scenario, params, GridMode::full_range, lambda_override);
}

SolveResult run_baseline_random(const Scenario& scenario, std::uint64_t seed,
                                int samples, int level_count,
                                std::optional<double> lambda_override) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    GaParams params;
    params.level_count = level_count;
    params.seed = seed;
    SolverContext ctx = build_solver_context(scenario, params, GridMode::full_range,
                                             lambda_override);
    Rng rng(seed);

    SolveResult result;
    Chromosome best;
    bool have_best = false;
    Chromosome c;
    c.genes.resize(ctx.genome_length);
    for (int s = 0; s < samples; ++s) {
        for (std::uint8_t& g : c.genes) g = rng.bernoulli(0.5) ? 1 : 0;
        fitness(c, ctx);
        ++result.fitness_evaluations;
        if (!have_best || c.fitness > best.fitness) {
            best = c;
            have_best = true;
        }
    }

    result.schedule = make_schedule(best, ctx);
    result.warnings = ctx.warnings;
    result.solve_lambda = ctx.lambda;
    return result;
}

std::string trace_to_csv(const std::vector<TracePoint>& trace) {
    std::ostringstream ss;
    ss << "generation,best_fitness,mean_fitness\n";
    for (const TracePoint& p : trace)
        ss << p.generation << "," << format_double(p.best_fitness) << ","
           << format_double(p.mean_fitness) << "\n";
    return ss.str();
}

}  // namespace eosched
