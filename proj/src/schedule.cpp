#include "eosched/schedule.hpp"

#include <algorithm>

#include <json.hpp>

#include "eosched/errors.hpp"
#include "textio.hpp"

namespace eosched {

using nlohmann::json;

std::string schedule_to_string(const Schedule& schedule, const Scenario& scenario) {
    json j;
    j["lambda"] = schedule.lambda;
    j["objective_max_form"] = schedule.objective_max_form;
    j["energy_total"] = schedule.energy_total;
    j["weight_total"] = schedule.weight_total;
    j["assignments"] = json::array();
    for (const Assignment& a : schedule.assignments) {
        j["assignments"].push_back(
            {{"task", scenario.tasks.at(a.task).id},
             {"ttw", scenario.ttws.at(a.ttw).id},
             {"start_slot", a.start_slot}});
    }
    json powers = json::object();
    for (std::size_t i = 0; i < schedule.powers.size(); ++i)
        if (schedule.powers[i] != 0.0)
            powers[scenario.tasks.at(i).id] = schedule.powers[i];
    j["powers"] = powers;
    return j.dump(2) + "\n";
}

Schedule schedule_from_string(const std::string& text, const Scenario& scenario) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("schedule: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("schedule: top level must be an object");

    Schedule s;
    s.powers.assign(scenario.tasks.size(), 0.0);
    auto num = [&](const char* key, double& field) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number())
            throw ParseError(std::string("schedule: field ") + key +
                             " must be a number");
        field = j.at(key).get<double>();
    };
    num("lambda", s.lambda);
    num("objective_max_form", s.objective_max_form);
    num("energy_total", s.energy_total);
    num("weight_total", s.weight_total);

    if (j.contains("assignments")) {
        for (const json& e : j.at("assignments")) {
            if (!e.is_object() || !e.contains("task") || !e.contains("ttw") ||
                !e.contains("start_slot"))
                throw ParseError("schedule: assignment needs task, ttw, start_slot");
            const std::string task_id = e.at("task").get<std::string>();
            const std::string ttw_id = e.at("ttw").get<std::string>();
            auto t = scenario.task_index_of.find(task_id);
            if (t == scenario.task_index_of.end())
                throw ParseError("schedule: unknown task " + task_id);
            auto k = scenario.ttw_index_of.find(ttw_id);
            if (k == scenario.ttw_index_of.end())
                throw ParseError("schedule: unknown ttw " + ttw_id);
            if (!e.at("start_slot").is_number_integer())
                throw ParseError("schedule: start_slot must be an integer");
            s.assignments.push_back(
                {t->second, k->second, e.at("start_slot").get<int>()});
        }
    }
    if (j.contains("powers")) {
        const json& powers = j.at("powers");
        if (!powers.is_object())
            throw ParseError("schedule: powers must map task ids to Watts");
        for (auto it = powers.begin(); it != powers.end(); ++it) {
            auto t = scenario.task_index_of.find(it.key());
            if (t == scenario.task_index_of.end())
                throw ParseError("schedule: unknown task " + it.key() + " in powers");
            if (!it.value().is_number())
                throw ParseError("schedule: power for " + it.key() +
                                 " must be a number");
            s.powers[t->second] = it.value().get<double>();
        }
    }

    std::sort(s.assignments.begin(), s.assignments.end(),
              [](const Assignment& a, const Assignment& b) {
                  if (a.task != b.task) return a.task < b.task;
                  if (a.ttw != b.ttw) return a.ttw < b.ttw;
                  return a.start_slot < b.start_slot;
              });
    return s;
}

void save_schedule(const Schedule& schedule, const Scenario& scenario,
                   const std::string& path) {
    write_text_file(path, schedule_to_string(schedule, scenario));
}

Schedule load_schedule(const std::string& path, const Scenario& scenario) {
    return schedule_from_string(read_text_file(path), scenario);
}

}  // namespace eosched
