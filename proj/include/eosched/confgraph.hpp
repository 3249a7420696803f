#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "eosched/schedule.hpp"
#include "eosched/scenario.hpp"

namespace eosched {

// One candidate assignment (task, window, start slot) with its signed
// objective coefficient. proc_slots is the whole-slot blocking at the
// task's power; proc_seconds the continuous transmit time behind it.
struct Vertex {
    int task = -1;
    int ttw = -1;
    int start_slot = -1;
    int proc_slots = 1;
    int antenna = -1;
    int eos = -1;
    double weight = 0.0;
    double energy = 0.0;  // Joules if this assignment is chosen
    double proc_seconds = 0.0;

    SlotInterval occupancy() const {
        return {start_slot, start_slot + proc_slots - 1};
    }
};

// Mutual-exclusion graph over candidate assignments. Adjacency lists are
// sorted and symmetric; there are no self-edges.
struct ConflictGraph {
    std::vector<Vertex> vertices;
    std::vector<std::vector<int>> adjacency;
    std::size_t edge_count = 0;

    bool has_edge(int u, int v) const;
};

// True iff the two assignments cannot both be chosen: same task, or a shared
// antenna with overlapping busy slots, or a shared satellite with
// overlapping busy slots.
bool conflicts(const Vertex& u, const Vertex& v);

// Enumerates every feasible (task, ttw, start) triple at the given per-task
// powers and connects exactly the conflicting pairs. Edges are found by
// bucketing vertices per (resource, slot) rather than all-pairs testing.
// Throws InfeasibleError when some power violates the power cap or leaves a
// window's rate requirement unmet.
ConflictGraph build_conflict_graph(const Scenario& scenario,
                                   const std::vector<double>& powers,
                                   double lambda);

// Weighted greedy independent set: repeatedly takes the remaining vertex
// maximizing weight / (degree + 1) and deletes its closed neighborhood.
// Vertices with weight <= 0 are never taken. Deterministic; ties go to the
// lower vertex id. Returns sorted vertex ids.
std::vector<int> greedy_mwis(const ConflictGraph& graph);

// Exact branch-and-bound optimum, guarded to |V| <= 25. Test oracle for the
// greedy solver and the genetic fitness.
std::vector<int> exact_mwis(const ConflictGraph& graph);

constexpr int kExactMwisMaxVertices = 25;

double set_weight(const ConflictGraph& graph, const std::vector<int>& set);

// Materializes an independent set as a schedule, scoring it under lambda.
// Throws std::invalid_argument when the set is not independent.
Schedule schedule_from_set(const ConflictGraph& graph, const std::vector<int>& set,
                           const std::vector<double>& powers,
                           const Scenario& scenario, double lambda);

// Text dump: header with counts, one weighted vertex line per vertex, one
// "e u v" line per edge (u < v).
void dump_graph(const ConflictGraph& graph, const Scenario& scenario,
                std::ostream& out);

}  // namespace eosched
