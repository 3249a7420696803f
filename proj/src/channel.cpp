#include "eosched/channel.hpp"

#include <cmath>

#include "eosched/errors.hpp"

namespace eosched {

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

LinkParams link_params(const Task& task, const Ttw& ttw, const Scenario& scenario) {
    const Eos& eos = scenario.eoses.at(
        task.eos_index >= 0 ? task.eos_index : scenario.eos_index_of.at(task.eos));
    LinkParams lp;
    const double gains_db =
        eos.transmit_gain_db + ttw.antenna_gain_db - ttw.path_loss_db;
    lp.beta = db_to_linear(gains_db) * scenario.globals.free_space_loss /
              scenario.globals.noise_power;
    lp.bandwidth = scenario.globals.bandwidth;
    lp.rate_requirement = ttw.rate_requirement;
    lp.max_power = eos.max_power;
    return lp;
}

double sgl_rate(double power, const LinkParams& lp) {
    if (power <= 0.0) return 0.0;
    return lp.bandwidth * std::log2(1.0 + lp.beta * power);
}

double processing_time(const Task& task, double power, const LinkParams& lp) {
    const double rate = sgl_rate(power, lp);
    if (!(rate > 0.0))
        throw InfeasibleError("task " + task.id + ": zero rate at power " +
                              std::to_string(power));
    return task.data_bits / rate;
}

double task_energy(const Task& task, double power, const LinkParams& lp) {
    return power * processing_time(task, power, lp);
}

}  // namespace eosched
