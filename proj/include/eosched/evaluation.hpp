#pragma once

#include <string>
#include <vector>

#include "eosched/schedule.hpp"
#include "eosched/scenario.hpp"

namespace eosched {

// Objective normalizers with any auto mode resolved against the instance:
// weight_norm defaults to the sum of all task weights, energy_norm to the
// sum over tasks of the worst-case (max-power, weakest-link) energy.
struct Norms {
    double weight_norm = 1.0;
    double energy_norm = 1.0;
};

Norms resolve_norms(const Scenario& scenario);

struct ObjectiveBreakdown {
    double energy_total = 0.0;    // Joules, continuous transmit time
    double weight_total = 0.0;    // sum of scheduled task weights
    double p0_value = 0.0;        // minimization form
    double max_form_value = 0.0;  // exactly -p0_value
    double lambda = 0.0;
};

// Scores a schedule under the given tradeoff. Throws ParseError on dangling
// task/ttw references.
ObjectiveBreakdown objective(const Schedule& schedule, const Scenario& scenario,
                             double lambda);

struct Violation {
    std::string constraint;  // "C1".."C6"
    std::string message;
    std::vector<std::string> entities;  // offending ids, task/ttw/antenna/eos
    SlotInterval slots;                 // involved slot range when meaningful
};

// Independent feasibility oracle: recomputes processing times from the
// schedule's powers and simulates slot occupancy directly, with no shared
// code with the conflict-graph path. Returns every violation; empty means
// feasible.
std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         const Scenario& scenario);

std::string violations_to_string(const std::vector<Violation>& violations);

}  // namespace eosched
