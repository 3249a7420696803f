#include "eosched/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "eosched/errors.hpp"
#include "eosched/rng.hpp"
#include "textio.hpp"

namespace eosched {

using nlohmann::json;

namespace {

SlotInterval intersect(SlotInterval a, SlotInterval b) {
    return {std::max(a.first, b.first), std::min(a.last, b.last)};
}

std::string make_id(const char* prefix, int i, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%0*d", prefix, width, i);
    return buf;
}

int id_width(int count) {
    int w = 2;
    for (int v = count - 1; v >= 100; v /= 10) ++w;
    return w;
}

}  // namespace

void Scenario::finalize() {
    if (grid.num_slots < 1) throw ParseError("grid: num_slots must be >= 1");
    if (!(grid.slot_duration > 0.0))
        throw ParseError("grid: slot_duration must be > 0");
    if (!(globals.bandwidth > 0.0)) throw ParseError("globals: bandwidth must be > 0");
    if (!(globals.noise_power > 0.0))
        throw ParseError("globals: noise_power must be > 0");
    if (!(globals.free_space_loss > 0.0))
        throw ParseError("globals: free_space_loss must be > 0");
    if (!(globals.lambda >= 0.0) || !(globals.lambda < 1.0))
        throw ParseError("globals: lambda must lie in [0, 1)");

    eos_index_of.clear();
    antenna_index_of.clear();
    ttw_index_of.clear();
    task_index_of.clear();

    for (int i = 0; i < static_cast<int>(eoses.size()); ++i) {
        const Eos& e = eoses[i];
        if (e.id.empty()) throw ParseError("eos #" + std::to_string(i) + ": empty id");
        if (!eos_index_of.emplace(e.id, i).second)
            throw ParseError("eos " + e.id + ": duplicate id");
        if (!(e.max_power > 0.0))
            throw ParseError("eos " + e.id + ": max_power must be > 0");
    }
    for (int i = 0; i < static_cast<int>(antennas.size()); ++i) {
        if (antennas[i].empty())
            throw ParseError("antenna #" + std::to_string(i) + ": empty id");
        if (!antenna_index_of.emplace(antennas[i], i).second)
            throw ParseError("antenna " + antennas[i] + ": duplicate id");
    }

    for (int i = 0; i < static_cast<int>(ttws.size()); ++i) {
        Ttw& k = ttws[i];
        if (k.id.empty()) throw ParseError("ttw #" + std::to_string(i) + ": empty id");
        if (!ttw_index_of.emplace(k.id, i).second)
            throw ParseError("ttw " + k.id + ": duplicate id");
        auto e = eos_index_of.find(k.eos);
        if (e == eos_index_of.end())
            throw ParseError("ttw " + k.id + ": unknown eos " + k.eos);
        k.eos_index = e->second;
        auto a = antenna_index_of.find(k.antenna);
        if (a == antenna_index_of.end())
            throw ParseError("ttw " + k.id + ": unknown antenna " + k.antenna);
        k.antenna_index = a->second;
        if (k.begin_slot < 0 || k.begin_slot > k.end_slot ||
            k.end_slot >= grid.num_slots)
            throw ParseError("ttw " + k.id + ": slot bounds outside the grid");
        if (!(k.rate_requirement > 0.0))
            throw ParseError("ttw " + k.id + ": rate_requirement must be > 0");
    }

    // Windows sharing one (eos, antenna) pair must not overlap.
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int i = 0; i < static_cast<int>(ttws.size()); ++i)
        by_pair[{ttws[i].eos_index, ttws[i].antenna_index}].push_back(i);
    for (auto& [pair, ids] : by_pair) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return ttws[a].begin_slot < ttws[b].begin_slot;
        });
        for (std::size_t i = 1; i < ids.size(); ++i) {
            const Ttw& prev = ttws[ids[i - 1]];
            const Ttw& cur = ttws[ids[i]];
            if (cur.begin_slot <= prev.end_slot)
                throw ParseError("ttw " + cur.id + ": overlaps ttw " + prev.id +
                                 " on the same (eos, antenna) pair");
        }
    }

    for (int i = 0; i < static_cast<int>(tasks.size()); ++i) {
        Task& t = tasks[i];
        if (t.id.empty()) throw ParseError("task #" + std::to_string(i) + ": empty id");
        if (!task_index_of.emplace(t.id, i).second)
            throw ParseError("task " + t.id + ": duplicate id");
        auto e = eos_index_of.find(t.eos);
        if (e == eos_index_of.end())
            throw ParseError("task " + t.id + ": unknown eos " + t.eos);
        t.eos_index = e->second;
        if (!(t.data_bits > 0.0))
            throw ParseError("task " + t.id + ": data_bits must be > 0");
        if (!(t.weight > 0.0))
            throw ParseError("task " + t.id + ": weight must be > 0");
        if (t.earliest_start < 0 || t.earliest_start > t.latest_start ||
            t.latest_start >= grid.num_slots)
            throw ParseError("task " + t.id + ": start window outside the grid");
    }

    ttws_of_eos.assign(eoses.size(), {});
    for (int i = 0; i < static_cast<int>(ttws.size()); ++i)
        ttws_of_eos[ttws[i].eos_index].push_back(i);
}

SlotInterval feasible_slots(const Task& task, const Ttw& ttw, int proc_slots) {
    const int lo = std::max(task.earliest_start, ttw.begin_slot);
    const int hi = std::min(task.latest_start, ttw.end_slot - proc_slots + 1);
    return {lo, hi};
}

SlotInterval antenna_occupancy(const Task& task, const Ttw& ttw, int start_slot,
                               int proc_slots) {
    SlotInterval busy{start_slot, start_slot + proc_slots - 1};
    busy = intersect(busy, {ttw.begin_slot, ttw.end_slot});
    return intersect(busy, {task.earliest_start, task.latest_start});
}

SlotInterval eos_occupancy(const Task& task, int start_slot, int proc_slots,
                           const Ttw& ttw) {
    return antenna_occupancy(task, ttw, start_slot, proc_slots);
}

int proc_slots_for(double proc_seconds, double slot_duration) {
    const double slots = std::ceil(proc_seconds / slot_duration);
    if (!(slots >= 1.0)) return 1;
    if (slots > double(1 << 30)) return 1 << 30;
    return static_cast<int>(slots);
}

Scenario generate_synthetic(const GeneratorConfig& config, std::uint64_t seed) {
    if (config.num_eoses < 0 || config.num_antennas < 0 || config.num_tasks < 0)
        throw InfeasibleError("generator: negative entity count");
    if (config.num_slots < 1 || !(config.slot_duration > 0.0))
        throw InfeasibleError("generator: invalid slot grid");
    if (config.pass_count_min < 0 || config.pass_count_min > config.pass_count_max)
        throw InfeasibleError("generator: bad pass count range");
    if (config.pass_duration_min < 1 ||
        config.pass_duration_min > config.pass_duration_max)
        throw InfeasibleError("generator: bad pass duration range");
    if (config.pass_duration_min > config.num_slots)
        throw InfeasibleError("generator: pass duration exceeds the horizon");
    if (!(config.data_min_bits > 0.0) || config.data_min_bits > config.data_max_bits)
        throw InfeasibleError("generator: bad data size range");
    if (!(config.weight_min > 0.0) || config.weight_min > config.weight_max)
        throw InfeasibleError("generator: bad weight range");
    if (config.num_tasks > 0 && config.num_eoses == 0)
        throw InfeasibleError("generator: tasks need at least one eos");

    Rng rng(seed);
    Scenario s;
    s.grid = {config.num_slots, config.slot_duration};
    s.globals.bandwidth = config.bandwidth;
    s.globals.free_space_loss = config.free_space_loss;
    s.globals.noise_power = config.noise_power;
    s.globals.lambda = config.lambda;
    s.globals.energy_norm = config.energy_norm;
    s.globals.weight_norm = config.weight_norm;

    const int ew = id_width(config.num_eoses);
    for (int i = 0; i < config.num_eoses; ++i)
        s.eoses.push_back(
            {make_id("eos", i, ew), config.max_power, config.transmit_gain_db});
    const int aw = id_width(config.num_antennas);
    for (int i = 0; i < config.num_antennas; ++i)
        s.antennas.push_back(make_id("ant", i, aw));

    // Contact windows, drawn pair by pair in (eos, antenna) order. Rejection
    // keeps windows of one pair disjoint; a pass that cannot be placed after
    // 200 attempts is skipped.
    int ttw_counter = 0;
    for (int e = 0; e < config.num_eoses; ++e) {
        for (int a = 0; a < config.num_antennas; ++a) {
            const int count = static_cast<int>(
                rng.uniform_int(config.pass_count_min, config.pass_count_max));
            std::vector<SlotInterval> placed;
            for (int p = 0; p < count; ++p) {
                for (int attempt = 0; attempt < 200; ++attempt) {
                    const int dur = static_cast<int>(rng.uniform_int(
                        config.pass_duration_min, config.pass_duration_max));
                    if (dur > config.num_slots) continue;
                    const int start =
                        static_cast<int>(rng.uniform_int(0, config.num_slots - dur));
                    SlotInterval w{start, start + dur - 1};
                    bool clear = true;
                    for (const SlotInterval& q : placed)
                        if (w.overlaps(q)) {
                            clear = false;
                            break;
                        }
                    if (!clear) continue;
                    placed.push_back(w);
                    Ttw k;
                    k.id = make_id("ttw", ttw_counter++, 4);
                    k.eos = s.eoses[e].id;
                    k.antenna = s.antennas[a];
                    k.begin_slot = w.first;
                    k.end_slot = w.last;
                    k.path_loss_db = config.path_loss_db;
                    k.antenna_gain_db = config.antenna_gain_db;
                    k.rate_requirement = config.rate_requirement;
                    s.ttws.push_back(k);
                    break;
                }
            }
        }
    }

    const int tw = id_width(config.num_tasks);
    for (int i = 0; i < config.num_tasks; ++i) {
        Task t;
        t.id = make_id("task", i, tw);
        t.eos = s.eoses[rng.uniform_index(config.num_eoses)].id;
        t.data_bits = rng.uniform_real(config.data_min_bits, config.data_max_bits);
        t.weight = rng.uniform_real(config.weight_min, config.weight_max);
        t.earliest_start = 0;
        t.latest_start = config.num_slots - 1;
        s.tasks.push_back(t);
    }

    s.finalize();
    return s;
}

namespace {

[[noreturn]] void missing(const std::string& where, const char* key) {
    throw ParseError(where + ": missing field " + key);
}

double get_num(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) missing(where, key);
    const json& v = j.at(key);
    if (!v.is_number()) throw ParseError(where + ": field " + key + " must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) missing(where, key);
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw ParseError(where + ": field " + key + " must be an integer");
    return v.get<int>();
}

std::string get_str(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) missing(where, key);
    const json& v = j.at(key);
    if (!v.is_string()) throw ParseError(where + ": field " + key + " must be a string");
    return v.get<std::string>();
}

// energy_norm / weight_norm accept a number or the string "auto" (stored 0).
double get_norm(const json& j, const std::string& where, const char* key,
                double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "auto") return 0.0;
        throw ParseError(where + ": field " + key + " must be a number or \"auto\"");
    }
    if (!v.is_number()) throw ParseError(where + ": field " + key + " must be a number");
    return v.get<double>();
}

json norm_to_json(double value) {
    if (value > 0.0) return json(value);
    return json("auto");
}

}  // namespace

std::string scenario_to_string(const Scenario& s) {
    json j;
    j["grid"] = {{"num_slots", s.grid.num_slots},
                 {"slot_duration", s.grid.slot_duration}};
    j["globals"] = {{"bandwidth", s.globals.bandwidth},
                    {"free_space_loss", s.globals.free_space_loss},
                    {"noise_power", s.globals.noise_power},
                    {"lambda", s.globals.lambda},
                    {"energy_norm", norm_to_json(s.globals.energy_norm)},
                    {"weight_norm", norm_to_json(s.globals.weight_norm)}};
    j["eoses"] = json::array();
    for (const Eos& e : s.eoses)
        j["eoses"].push_back({{"id", e.id},
                              {"max_power", e.max_power},
                              {"transmit_gain_db", e.transmit_gain_db}});
    j["antennas"] = s.antennas;
    j["ttws"] = json::array();
    for (const Ttw& k : s.ttws)
        j["ttws"].push_back({{"id", k.id},
                             {"eos", k.eos},
                             {"antenna", k.antenna},
                             {"begin_slot", k.begin_slot},
                             {"end_slot", k.end_slot},
                             {"path_loss_db", k.path_loss_db},
                             {"antenna_gain_db", k.antenna_gain_db},
                             {"rate_requirement", k.rate_requirement}});
    j["tasks"] = json::array();
    for (const Task& t : s.tasks)
        j["tasks"].push_back({{"id", t.id},
                              {"eos", t.eos},
                              {"data_bits", t.data_bits},
                              {"weight", t.weight},
                              {"earliest_start", t.earliest_start},
                              {"latest_start", t.latest_start}});
    return j.dump(2) + "\n";
}

Scenario scenario_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("scenario: top level must be an object");

    Scenario s;
    if (!j.contains("grid")) missing("scenario", "grid");
    s.grid.num_slots = get_int(j.at("grid"), "grid", "num_slots");
    s.grid.slot_duration = get_num(j.at("grid"), "grid", "slot_duration");

    if (j.contains("globals")) {
        const json& g = j.at("globals");
        Globals defaults;
        s.globals.bandwidth =
            g.contains("bandwidth") ? get_num(g, "globals", "bandwidth") : defaults.bandwidth;
        s.globals.free_space_loss = g.contains("free_space_loss")
                                        ? get_num(g, "globals", "free_space_loss")
                                        : defaults.free_space_loss;
        s.globals.noise_power = g.contains("noise_power")
                                    ? get_num(g, "globals", "noise_power")
                                    : defaults.noise_power;
        s.globals.lambda =
            g.contains("lambda") ? get_num(g, "globals", "lambda") : defaults.lambda;
        s.globals.energy_norm = get_norm(g, "globals", "energy_norm", 0.0);
        s.globals.weight_norm = get_norm(g, "globals", "weight_norm", 0.0);
    }

    if (j.contains("eoses")) {
        for (const json& e : j.at("eoses")) {
            Eos eos;
            eos.id = get_str(e, "eos", "id");
            eos.max_power = get_num(e, "eos " + eos.id, "max_power");
            eos.transmit_gain_db = get_num(e, "eos " + eos.id, "transmit_gain_db");
            s.eoses.push_back(eos);
        }
    }
    if (j.contains("antennas")) {
        for (const json& a : j.at("antennas")) {
            if (!a.is_string()) throw ParseError("antennas: entries must be strings");
            s.antennas.push_back(a.get<std::string>());
        }
    }
    if (j.contains("ttws")) {
        for (const json& e : j.at("ttws")) {
            Ttw k;
            k.id = get_str(e, "ttw", "id");
            const std::string where = "ttw " + k.id;
            k.eos = get_str(e, where, "eos");
            k.antenna = get_str(e, where, "antenna");
            k.begin_slot = get_int(e, where, "begin_slot");
            k.end_slot = get_int(e, where, "end_slot");
            k.path_loss_db = get_num(e, where, "path_loss_db");
            k.antenna_gain_db = get_num(e, where, "antenna_gain_db");
            k.rate_requirement = get_num(e, where, "rate_requirement");
            s.ttws.push_back(k);
        }
    }
    if (j.contains("tasks")) {
        for (const json& e : j.at("tasks")) {
            Task t;
            t.id = get_str(e, "task", "id");
            const std::string where = "task " + t.id;
            t.eos = get_str(e, where, "eos");
            t.data_bits = get_num(e, where, "data_bits");
            t.weight = get_num(e, where, "weight");
            t.earliest_start = get_int(e, where, "earliest_start");
            t.latest_start = get_int(e, where, "latest_start");
            s.tasks.push_back(t);
        }
    }

    s.finalize();
    return s;
}

Scenario load_scenario(const std::string& path) {
    return scenario_from_string(read_text_file(path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    write_text_file(path, scenario_to_string(scenario));
}

std::string scenario_hash(const Scenario& scenario) {
    return fnv1a_hex(scenario_to_string(scenario));
}

GeneratorConfig generator_config_from_file(const std::string& path) {
    return generator_config_from_string(read_text_file(path));
}

GeneratorConfig generator_config_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("generator config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("generator config: top level must be an object");

    GeneratorConfig c;
    auto num = [&](const char* key, double& field) {
        if (j.contains(key)) field = get_num(j, "generator config", key);
    };
    auto integer = [&](const char* key, int& field) {
        if (j.contains(key)) field = get_int(j, "generator config", key);
    };
    integer("num_eoses", c.num_eoses);
    integer("num_antennas", c.num_antennas);
    integer("num_tasks", c.num_tasks);
    integer("num_slots", c.num_slots);
    num("slot_duration", c.slot_duration);
    integer("pass_count_min", c.pass_count_min);
    integer("pass_count_max", c.pass_count_max);
    integer("pass_duration_min", c.pass_duration_min);
    integer("pass_duration_max", c.pass_duration_max);
    num("data_min_bits", c.data_min_bits);
    num("data_max_bits", c.data_max_bits);
    num("weight_min", c.weight_min);
    num("weight_max", c.weight_max);
    num("bandwidth", c.bandwidth);
    num("free_space_loss", c.free_space_loss);
    num("noise_power", c.noise_power);
    num("transmit_gain_db", c.transmit_gain_db);
    num("antenna_gain_db", c.antenna_gain_db);
    num("path_loss_db", c.path_loss_db);
    num("rate_requirement", c.rate_requirement);
    num("max_power", c.max_power);
    num("lambda", c.lambda);
    c.energy_norm = get_norm(j, "generator config", "energy_norm", c.energy_norm);
    c.weight_norm = get_norm(j, "generator config", "weight_norm", c.weight_norm);
    return c;
}

}  // namespace eosched
