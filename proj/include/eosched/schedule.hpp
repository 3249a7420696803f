#pragma once

#include <string>
#include <vector>

#include "eosched/scenario.hpp"

namespace eosched {

// One chosen (task, window, start slot) triple.
struct Assignment {
    int task = -1;
    int ttw = -1;
    int start_slot = -1;

    bool operator==(const Assignment&) const = default;
};

// Decision variables of a solved instance: the assignment set plus the
// per-task transmit powers. Unscheduled tasks carry power 0. The objective
// fields are filled by evaluation::objective under the stored lambda.
struct Schedule {
    std::vector<Assignment> assignments;  // sorted by (task, ttw, start_slot)
    std::vector<double> powers;           // indexed by task, Watts
    double lambda = 0.0;
    double objective_max_form = 0.0;
    double energy_total = 0.0;
    double weight_total = 0.0;
};

std::string schedule_to_string(const Schedule& schedule, const Scenario& scenario);
Schedule schedule_from_string(const std::string& text, const Scenario& scenario);

void save_schedule(const Schedule& schedule, const Scenario& scenario,
                   const std::string& path);
Schedule load_schedule(const std::string& path, const Scenario& scenario);

}  // namespace eosched
