#include "eosched/evaluation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "eosched/channel.hpp"
#include "eosched/errors.hpp"

namespace eosched {

Norms resolve_norms(const Scenario& scenario) {
    Norms n;
    if (scenario.globals.weight_norm > 0.0) {
        n.weight_norm = scenario.globals.weight_norm;
    } else {
        double sum = 0.0;
        for (const Task& t : scenario.tasks) sum += t.weight;
        n.weight_norm = sum > 0.0 ? sum : 1.0;
    }
    if (scenario.globals.energy_norm > 0.0) {
        n.energy_norm = scenario.globals.energy_norm;
    } else {
        // Worst case per task: full power on its most expensive window.
        double sum = 0.0;
        for (const Task& t : scenario.tasks) {
            double worst = 0.0;
            for (int k : scenario.ttws_of_eos.at(t.eos_index)) {
                const LinkParams lp = link_params(t, scenario.ttws[k], scenario);
                worst = std::max(worst, task_energy(t, lp.max_power, lp));
            }
            sum += worst;
        }
        n.energy_norm = sum > 0.0 ? sum : 1.0;
    }
    return n;
}

ObjectiveBreakdown objective(const Schedule& schedule, const Scenario& scenario,
                             double lambda) {
    ObjectiveBreakdown b;
    b.lambda = lambda;
    for (const Assignment& a : schedule.assignments) {
        if (a.task < 0 || a.task >= static_cast<int>(scenario.tasks.size()))
            throw ParseError("objective: unknown task index " + std::to_string(a.task));
        if (a.ttw < 0 || a.ttw >= static_cast<int>(scenario.ttws.size()))
            throw ParseError("objective: unknown ttw index " + std::to_string(a.ttw));
        const Task& task = scenario.tasks[a.task];
        const Ttw& ttw = scenario.ttws[a.ttw];
        const double power =
            a.task < static_cast<int>(schedule.powers.size()) ? schedule.powers[a.task]
                                                              : 0.0;
        if (!(power > 0.0))
            throw InfeasibleError("objective: task " + task.id +
                                  " is assigned with zero power");
        const LinkParams lp = link_params(task, ttw, scenario);
        b.energy_total += task_energy(task, power, lp);
        b.weight_total += task.weight;
    }
    const Norms n = resolve_norms(scenario);
    b.p0_value = lambda / n.energy_norm * b.energy_total -
                 (1.0 - lambda) / n.weight_norm * b.weight_total;
    b.max_form_value = -b.p0_value;
    return b;
}

namespace {

std::string slot_text(SlotInterval s) {
    return "[" + std::to_string(s.first) + "," + std::to_string(s.last) + "]";
}

SlotInterval occupancy_of(const Task& task, const Ttw& ttw, int start, int proc) {
    SlotInterval busy{start, start + proc - 1};
    busy.first = std::max({busy.first, ttw.begin_slot, task.earliest_start});
    busy.last = std::min({busy.last, ttw.end_slot, task.latest_start});
    return busy;
}

}  // namespace

std::vector<Violation> validate_schedule(const Schedule& schedule,
                                         const Scenario& scenario) {
    std::vector<Violation> out;
    const int num_tasks = static_cast<int>(scenario.tasks.size());
    const int num_ttws = static_cast<int>(scenario.ttws.size());

    std::vector<int> uses(num_tasks, 0);
    // (resource index, slot) -> first claiming assignment, for C5/C6. Each
    // clashing (resource, task, task) triple is reported once.
    std::map<std::pair<int, int>, int> antenna_claim;
    std::map<std::pair<int, int>, int> eos_claim;
    std::set<std::tuple<int, int, int>> reported_c5;
    std::set<std::tuple<int, int, int>> reported_c6;

    for (std::size_t ai = 0; ai < schedule.assignments.size(); ++ai) {
        const Assignment& a = schedule.assignments[ai];
        if (a.task < 0 || a.task >= num_tasks || a.ttw < 0 || a.ttw >= num_ttws) {
            out.push_back({"C3", "assignment references an unknown task or ttw",
                           {}, {}});
            continue;
        }
        const Task& task = scenario.tasks[a.task];
        const Ttw& ttw = scenario.ttws[a.ttw];
        const double power =
            a.task < static_cast<int>(schedule.powers.size()) ? schedule.powers[a.task]
                                                              : 0.0;

        if (++uses[a.task] == 2)
            out.push_back({"C4", "task offloaded more than once", {task.id}, {}});

        if (ttw.eos_index != task.eos_index) {
            out.push_back({"C3", "window belongs to a different satellite",
                           {task.id, ttw.id}, {}});
            continue;
        }
        if (!(power > 0.0)) {
            out.push_back({"C1", "scheduled task has no transmit power",
                           {task.id}, {}});
            continue;
        }
        const Eos& eos = scenario.eoses[task.eos_index];
        if (power > eos.max_power * (1.0 + 1e-12)) {
            out.push_back({"C1", "transmit power above the cap",
                           {task.id, eos.id}, {}});
            continue;
        }

        const LinkParams lp = link_params(task, ttw, scenario);
        const double rate = sgl_rate(power, lp);
        const int proc = proc_slots_for(task.data_bits / rate,
                                        scenario.grid.slot_duration);
        const SlotInterval feas = feasible_slots(task, ttw, proc);
        if (!feas.contains(a.start_slot)) {
            out.push_back({"C3", "start slot outside the feasible set",
                           {task.id, ttw.id},
                           {a.start_slot, a.start_slot + proc - 1}});
            continue;
        }

        const SlotInterval busy = occupancy_of(task, ttw, a.start_slot, proc);
        for (int t = busy.first; t <= busy.last; ++t) {
            auto [it, fresh] =
                antenna_claim.try_emplace({ttw.antenna_index, t},
                                          static_cast<int>(ai));
            const int other_task =
                fresh ? a.task : schedule.assignments[it->second].task;
            if (other_task != a.task &&
                reported_c5
                    .emplace(ttw.antenna_index, std::min(other_task, a.task),
                             std::max(other_task, a.task))
                    .second) {
                out.push_back({"C5", "antenna receives two tasks at once",
                               {scenario.antennas[ttw.antenna_index],
                                scenario.tasks[other_task].id, task.id},
                               {t, t}});
            }
        }
        for (int t = busy.first; t <= busy.last; ++t) {
            auto [it, fresh] =
                eos_claim.try_emplace({task.eos_index, t}, static_cast<int>(ai));
            const int other_task =
                fresh ? a.task : schedule.assignments[it->second].task;
            if (other_task != a.task &&
                reported_c6
                    .emplace(task.eos_index, std::min(other_task, a.task),
                             std::max(other_task, a.task))
                    .second) {
                out.push_back({"C6", "satellite transmits two tasks at once",
                               {eos.id, scenario.tasks[other_task].id, task.id},
                               {t, t}});
            }
        }
    }

    // C2 binds every window of a transmitting satellite, per scheduled task.
    std::vector<bool> checked(num_tasks, false);
    for (const Assignment& a : schedule.assignments) {
        if (a.task < 0 || a.task >= num_tasks || checked[a.task]) continue;
        checked[a.task] = true;
        const Task& task = scenario.tasks[a.task];
        const double power =
            a.task < static_cast<int>(schedule.powers.size()) ? schedule.powers[a.task]
                                                              : 0.0;
        if (!(power > 0.0)) continue;  // already a C1 violation
        for (int k : scenario.ttws_of_eos.at(task.eos_index)) {
            const Ttw& ttw = scenario.ttws[k];
            const LinkParams lp = link_params(task, ttw, scenario);
            if (sgl_rate(power, lp) < ttw.rate_requirement * (1.0 - 1e-12))
                out.push_back({"C2", "rate requirement unmet at the task's power",
                               {task.id, ttw.id}, {}});
        }
    }
    return out;
}

std::string violations_to_string(const std::vector<Violation>& violations) {
    std::ostringstream ss;
    for (const Violation& v : violations) {
        ss << v.constraint << " " << v.message;
        if (!v.entities.empty()) {
            ss << " (";
            for (std::size_t i = 0; i < v.entities.size(); ++i)
                ss << (i ? ", " : "") << v.entities[i];
            ss << ")";
        }
        if (!v.slots.empty()) ss << " slots " << slot_text(v.slots);
        ss << "\n";
    }
    return ss.str();
}

}  // namespace eosched
