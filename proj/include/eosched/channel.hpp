#pragma once

#include "eosched/scenario.hpp"

namespace eosched {

// Per-link channel constants. beta is the linear SNR per Watt of transmit
// power, so SNR = beta * P.
struct LinkParams {
    double beta = 0.0;              // 1/W
    double bandwidth = 0.0;         // Hz
    double rate_requirement = 0.0;  // bits/s
    double max_power = 0.0;         // Watts
};

double db_to_linear(double value_db);

// Channel constants for one (task, ttw) link. Gains and the path loss enter
// in dB and are converted once; path_loss_db = 0 means a unit linear loss.
LinkParams link_params(const Task& task, const Ttw& ttw, const Scenario& scenario);

// Link rate at the given transmit power: bandwidth * log2(1 + beta * power).
double sgl_rate(double power, const LinkParams& lp);

// Transmission duration in seconds. Throws InfeasibleError at zero rate.
double processing_time(const Task& task, double power, const LinkParams& lp);

// Energy spent transmitting the task, power * processing_time. Requires
// power > 0.
double task_energy(const Task& task, double power, const LinkParams& lp);

}  // namespace eosched
