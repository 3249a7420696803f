#include "eosched/confgraph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "eosched/channel.hpp"
#include "eosched/errors.hpp"
#include "eosched/evaluation.hpp"
#include "textio.hpp"

namespace eosched {

bool ConflictGraph::has_edge(int u, int v) const {
    const auto& adj = adjacency[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

bool conflicts(const Vertex& u, const Vertex& v) {
    if (u.task == v.task) return true;
    if (u.antenna == v.antenna && u.occupancy().overlaps(v.occupancy())) return true;
    if (u.eos == v.eos && u.occupancy().overlaps(v.occupancy())) return true;
    return false;
}

ConflictGraph build_conflict_graph(const Scenario& scenario,
                                   const std::vector<double>& powers,
                                   double lambda) {
    if (powers.size() != scenario.tasks.size())
        throw std::invalid_argument("powers must have one entry per task");

    const Norms norms = resolve_norms(scenario);
    ConflictGraph g;

    for (int j = 0; j < static_cast<int>(scenario.tasks.size()); ++j) {
        const Task& task = scenario.tasks[j];
        const double power = powers[j];
        if (power == 0.0) continue;  // task not offered to the graph
        const Eos& eos = scenario.eoses[task.eos_index];
        if (!(power > 0.0) || power > eos.max_power * (1.0 + 1e-12))
            throw InfeasibleError("task " + task.id + ": power " +
                                  std::to_string(power) + " W outside (0, cap]");
        for (int k : scenario.ttws_of_eos[task.eos_index]) {
            const Ttw& ttw = scenario.ttws[k];
            const LinkParams lp = link_params(task, ttw, scenario);
            const double rate = sgl_rate(power, lp);
            if (rate < ttw.rate_requirement * (1.0 - 1e-12))
                throw InfeasibleError("task " + task.id + ": ttw " + ttw.id +
                                      " rate requirement unmet at " +
                                      std::to_string(power) + " W");
            const double proc_seconds = task.data_bits / rate;
            const int proc =
                proc_slots_for(proc_seconds, scenario.grid.slot_duration);
            const SlotInterval feas = feasible_slots(task, ttw, proc);
            const double energy = power * proc_seconds;
            const double weight = (1.0 - lambda) * task.weight / norms.weight_norm -
                                  lambda * energy / norms.energy_norm;
            for (int t = feas.first; t <= feas.last; ++t) {
                Vertex v;
                v.task = j;
                v.ttw = k;
                v.start_slot = t;
                v.proc_slots = proc;
                v.antenna = ttw.antenna_index;
                v.eos = task.eos_index;
                v.weight = weight;
                v.energy = energy;
                v.proc_seconds = proc_seconds;
                g.vertices.push_back(v);
            }
        }
    }

    const int n = static_cast<int>(g.vertices.size());
    g.adjacency.assign(n, {});

    // Same-task cliques.
    int task_begin = 0;
    while (task_begin < n) {
        int task_end = task_begin;
        while (task_end < n &&
               g.vertices[task_end].task == g.vertices[task_begin].task)
            ++task_end;
        for (int u = task_begin; u < task_end; ++u)
            for (int v = u + 1; v < task_end; ++v) {
                g.adjacency[u].push_back(v);
                g.adjacency[v].push_back(u);
            }
        task_begin = task_end;
    }

    // Cross-task overlaps via per-(resource, slot) buckets.
    const int slots = scenario.grid.num_slots;
    std::vector<std::vector<int>> antenna_bucket(
        static_cast<std::size_t>(scenario.antennas.size()) * slots);
    std::vector<std::vector<int>> eos_bucket(
        static_cast<std::size_t>(scenario.eoses.size()) * slots);
    for (int u = 0; u < n; ++u) {
        const Vertex& v = g.vertices[u];
        const SlotInterval occ = v.occupancy();
        for (int t = occ.first; t <= occ.last && t < slots; ++t) {
            if (t < 0) continue;
            antenna_bucket[static_cast<std::size_t>(v.antenna) * slots + t].push_back(u);
            eos_bucket[static_cast<std::size_t>(v.eos) * slots + t].push_back(u);
        }
    }
    auto connect_buckets = [&](const std::vector<std::vector<int>>& buckets) {
        for (const std::vector<int>& bucket : buckets)
            for (std::size_t i = 0; i < bucket.size(); ++i)
                for (std::size_t j = i + 1; j < bucket.size(); ++j) {
                    const int u = bucket[i], v = bucket[j];
                    if (g.vertices[u].task == g.vertices[v].task) continue;
                    g.adjacency[u].push_back(v);
                    g.adjacency[v].push_back(u);
                }
    };
    connect_buckets(antenna_bucket);
    connect_buckets(eos_bucket);

    g.edge_count = 0;
    for (auto& adj : g.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        g.edge_count += adj.size();
    }
    g.edge_count /= 2;
    return g;
}

std::vector<int> greedy_mwis(const ConflictGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    std::vector<char> alive(n, 1);
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v)
        degree[v] = static_cast<int>(graph.adjacency[v].size());

    std::vector<int> chosen;
    for (;;) {
        int best = -1;
        double best_score = 0.0;
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || !(graph.vertices[v].weight > 0.0)) continue;
            const double score = graph.vertices[v].weight / (degree[v] + 1);
            if (best < 0 || score > best_score) {
                best = v;
                best_score = score;
            }
        }
        if (best < 0) break;
        chosen.push_back(best);
        // Remove the closed neighborhood, updating survivor degrees.
        std::vector<int> killed{best};
        alive[best] = 0;
        for (int u : graph.adjacency[best])
            if (alive[u]) {
                alive[u] = 0;
                killed.push_back(u);
            }
        for (int u : killed)
            for (int w : graph.adjacency[u])
                if (alive[w]) --degree[w];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

namespace {

struct ExactState {
    const ConflictGraph* graph;
    std::vector<std::uint32_t> masks;
    std::vector<int> order;  // vertex ids, positive weights, weight-descending
    std::vector<double> suffix_weight;
    double best_weight = 0.0;
    std::uint32_t best_set = 0;

    void search(std::size_t i, std::uint32_t allowed, double weight,
                std::uint32_t set) {
        if (weight > best_weight) {
            best_weight = weight;
            best_set = set;
        }
        if (i >= order.size()) return;
        if (weight + suffix_weight[i] <= best_weight) return;
        const std::uint32_t bit = 1u << i;
        if (allowed & bit) {
            search(i + 1, allowed & ~masks[i], weight + graph->vertices[order[i]].weight,
                   set | bit);
        }
        search(i + 1, allowed & ~bit, weight, set);
    }
};

}  // namespace

std::vector<int> exact_mwis(const ConflictGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    if (n > kExactMwisMaxVertices)
        throw std::invalid_argument("exact_mwis: graph above the size guard");

    ExactState st;
    st.graph = &graph;
    for (int v = 0; v < n; ++v)
        if (graph.vertices[v].weight > 0.0) st.order.push_back(v);
    std::stable_sort(st.order.begin(), st.order.end(), [&](int a, int b) {
        return graph.vertices[a].weight > graph.vertices[b].weight;
    });

    const std::size_t m = st.order.size();
    std::vector<int> position(n, -1);
    for (std::size_t i = 0; i < m; ++i) position[st.order[i]] = static_cast<int>(i);
    st.masks.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        st.masks[i] |= 1u << i;
        for (int u : graph.adjacency[st.order[i]])
            if (position[u] >= 0) st.masks[i] |= 1u << position[u];
    }
    st.suffix_weight.assign(m + 1, 0.0);
    for (std::size_t i = m; i-- > 0;)
        st.suffix_weight[i] =
            st.suffix_weight[i + 1] + graph.vertices[st.order[i]].weight;

    st.search(0, m ? (m >= 32 ? ~0u : (1u << m) - 1u) : 0u, 0.0, 0u);

    std::vector<int> out;
    for (std::size_t i = 0; i < m; ++i)
        if (st.best_set & (1u << i)) out.push_back(st.order[i]);
    std::sort(out.begin(), out.end());
    return out;
}

double set_weight(const ConflictGraph& graph, const std::vector<int>& set) {
    double w = 0.0;
    for (int v : set) w += graph.vertices.at(v).weight;
    return w;
}

Schedule schedule_from_set(const ConflictGraph& graph, const std::vector<int>& set,
                           const std::vector<double>& powers,
                           const Scenario& scenario, double lambda) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (conflicts(graph.vertices.at(set[i]), graph.vertices.at(set[j])))
                throw std::invalid_argument("schedule_from_set: set is not independent");

    Schedule s;
    s.lambda = lambda;
    s.powers.assign(scenario.tasks.size(), 0.0);
    for (int v : set) {
        const Vertex& vx = graph.vertices.at(v);
        s.assignments.push_back({vx.task, vx.ttw, vx.start_slot});
        s.powers[vx.task] = powers.at(vx.task);
    }
    std::sort(s.assignments.begin(), s.assignments.end(),
              [](const Assignment& a, const Assignment& b) {
                  if (a.task != b.task) return a.task < b.task;
                  if (a.ttw != b.ttw) return a.ttw < b.ttw;
                  return a.start_slot < b.start_slot;
              });
    const ObjectiveBreakdown b = objective(s, scenario, lambda);
    s.objective_max_form = b.max_form_value;
    s.energy_total = b.energy_total;
    s.weight_total = b.weight_total;
    return s;
}

void dump_graph(const ConflictGraph& graph, const Scenario& scenario,
                std::ostream& out) {
    out << "vertices " << graph.vertices.size() << " edges " << graph.edge_count
        << "\n";
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const Vertex& v = graph.vertices[i];
        out << "v " << i << " " << format_double(v.weight) << " "
            << scenario.tasks[v.task].id << " " << scenario.ttws[v.ttw].id << " "
            << v.start_slot << " " << v.proc_slots << "\n";
    }
    for (std::size_t u = 0; u < graph.adjacency.size(); ++u)
        for (int v : graph.adjacency[u])
            if (static_cast<int>(u) < v) out << u << " " << v << "\n";
}

}  // namespace eosched
