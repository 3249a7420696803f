#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace eosched {

// Closed slot interval [first, last]; empty when last < first. Slot t covers
// the physical time [t, t+1) in slot units.
struct SlotInterval {
    int first = 0;
    int last = -1;

    bool empty() const { return last < first; }
    int size() const { return empty() ? 0 : last - first + 1; }
    bool contains(int t) const { return t >= first && t <= last; }
    bool overlaps(const SlotInterval& o) const {
        return !empty() && !o.empty() && first <= o.last && o.first <= last;
    }
    bool operator==(const SlotInterval& o) const = default;
};

struct SlotGrid {
    int num_slots = 0;
    double slot_duration = 0.0;  // seconds per slot
};

// Transmitting satellite.
struct Eos {
    std::string id;
    double max_power = 0.0;  // Watts
    double transmit_gain_db = 0.0;
};

// Contact window between one satellite and one ground antenna. Slot bounds
// are inclusive.
struct Ttw {
    std::string id;
    std::string eos;
    std::string antenna;
    int begin_slot = 0;
    int end_slot = 0;
    double path_loss_db = 0.0;
    double antenna_gain_db = 0.0;
    double rate_requirement = 0.0;  // bits/s

    // Resolved by Scenario::finalize().
    int eos_index = -1;
    int antenna_index = -1;
};

// Downlink task: data stored on one satellite, to be offloaded at most once
// within its start window.
struct Task {
    std::string id;
    std::string eos;
    double data_bits = 0.0;
    double weight = 0.0;
    int earliest_start = 0;
    int latest_start = 0;

    int eos_index = -1;
};

// Scenario-wide channel constants and objective configuration. Norm values
// <= 0 mean "auto" (derived from the instance, see evaluation::resolve_norms).
struct Globals {
    double bandwidth = 2.2e9;        // Hz
    double free_space_loss = 1e-23;  // linear
    double noise_power = 5.16e-20;   // linear
    double lambda = 0.3;             // energy/weight tradeoff, in [0, 1)
    double energy_norm = 0.0;        // Joules; <= 0 selects auto
    double weight_norm = 0.0;        // dimensionless; <= 0 selects auto
};

// Full problem instance. Immutable after finalize(); safe to share across
// threads.
struct Scenario {
    SlotGrid grid;
    Globals globals;
    std::vector<Eos> eoses;
    std::vector<std::string> antennas;
    std::vector<Ttw> ttws;
    std::vector<Task> tasks;

    std::unordered_map<std::string, int> eos_index_of;
    std::unordered_map<std::string, int> antenna_index_of;
    std::unordered_map<std::string, int> ttw_index_of;
    std::unordered_map<std::string, int> task_index_of;
    std::vector<std::vector<int>> ttws_of_eos;  // eos index -> sorted ttw indices

    // Resolves cross-references and checks every documented invariant.
    // Throws ParseError naming the offending entity.
    void finalize();
};

// Start slots t such that the whole processing interval [t, t+proc_slots-1]
// fits inside the window and t lies in the task's start window.
SlotInterval feasible_slots(const Task& task, const Ttw& ttw, int proc_slots);

// Slots the receiving antenna is busy when the task starts at start_slot.
// Equals the full processing interval for feasible starts.
SlotInterval antenna_occupancy(const Task& task, const Ttw& ttw, int start_slot,
                               int proc_slots);

// Same interval keyed on the transmitting satellite.
SlotInterval eos_occupancy(const Task& task, int start_slot, int proc_slots,
                           const Ttw& ttw);

// Whole-slot resource blocking for a continuous processing time (seconds).
// Always at least one slot.
int proc_slots_for(double proc_seconds, double slot_duration);

struct GeneratorConfig {
    int num_eoses = 4;
    int num_antennas = 4;
    int num_tasks = 40;
    int num_slots = 4320;        // 12 h horizon at 10 s slots
    double slot_duration = 10.0;
    int pass_count_min = 2;      // contact windows per (eos, antenna) pair
    int pass_count_max = 6;
    int pass_duration_min = 30;  // slots (5 min)
    int pass_duration_max = 90;  // slots (15 min)
    double data_min_bits = 5e8;
    double data_max_bits = 1.5e9;
    double weight_min = 1.0;
    double weight_max = 5.0;
    double bandwidth = 2.2e9;
    double free_space_loss = 1e-23;
    double noise_power = 5.16e-20;
    double transmit_gain_db = 36.0;
    double antenna_gain_db = 36.0;
    double path_loss_db = 0.0;
    double rate_requirement = 2.5e8;
    double max_power = 100.0;
    double lambda = 0.3;
    double energy_norm = 2.5e5;  // <= 0 selects auto
    double weight_norm = 400.0;  // <= 0 selects auto
};

// Deterministic synthetic instance: per (eos, antenna) pair draws a pass
// count and non-overlapping pass windows, then tasks with uniform data sizes
// and weights. Equal (config, seed) gives an identical Scenario.
Scenario generate_synthetic(const GeneratorConfig& config, std::uint64_t seed);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

// JSON text round-trip helpers (the file format is the dump of this string).
std::string scenario_to_string(const Scenario& scenario);
Scenario scenario_from_string(const std::string& text);

// Stable 64-bit FNV-1a digest of the canonical serialization, hex-encoded.
std::string scenario_hash(const Scenario& scenario);

GeneratorConfig generator_config_from_file(const std::string& path);
GeneratorConfig generator_config_from_string(const std::string& text);

}  // namespace eosched
