#pragma once

#include <vector>

#include "eosched/channel.hpp"
#include "eosched/scenario.hpp"

namespace eosched {

// Which bound of the feasible interval produced the optimum.
enum class PowerCase {
    clipped_at_pmax,    // unconstrained minimizer below the power-cap bound
    interior_extremum,  // stationary point inside the interval
    rate_bound,         // minimum-rate bound (the generic outcome)
};

const char* to_string(PowerCase c);

// Energy-minimizing transmit power for one link. inv_spectral_eff is
// y = 1 / log2(1 + beta * P), the normalized seconds-per-bit of the link;
// energy is power * transmit time at the optimum.
struct PowerSolution {
    double inv_spectral_eff = 0.0;
    double power = 0.0;
    double energy = 0.0;
    PowerCase case_tag = PowerCase::rate_bound;
};

// Energy shape as a function of inverse spectral efficiency:
// energy_factor(y) = y * (2^(1/y) - 1). Strictly convex for y > 0 and
// decreasing toward ln 2 as y grows.
double energy_factor(double y);
double energy_factor_grad(double y);
double energy_factor_grad2(double y);

// y value realized at a given power, 1 / log2(1 + beta * power).
double inv_spectral_eff_at(double power, double beta);

// Inverse map: the power realizing a given y, (2^(1/y) - 1) / beta.
double power_from_inv_eff(double y, double beta);

// Minimizes energy_factor over the feasible interval
// [y at max_power, bandwidth / rate_requirement] using the convex three-case
// rule; the interior stationary point is searched by bisection on the
// gradient. Throws InfeasibleError when the rate requirement is unreachable
// at max_power.
PowerSolution optimal_inv_eff(const LinkParams& lp);

// Full power solution for one link carrying data_bits of payload; checks
// rate feasibility and the power cap as postconditions.
PowerSolution optimal_power(const LinkParams& lp, double data_bits);

// Ordered per-task power levels, levels[k] = base + k * (max - base) / count.
struct PowerGrid {
    std::vector<double> levels;
    int level_count() const { return static_cast<int>(levels.size()); }
};

// Levels spanning [solution power, max_power); level 0 is the optimum.
PowerGrid discretize_power(const PowerSolution& solution, const LinkParams& lp,
                           int level_count);

// Grid with the same spacing rule anchored at an arbitrary base power
// (base = 0 reproduces the unreduced search interval of the GA baseline).
PowerGrid uniform_power_grid(double base_power, double max_power, int level_count);

// Smallest per-task power satisfying every contact window's rate requirement
// for the task's satellite. binding_ttw is the window that forces it.
struct TaskPower {
    double power = 0.0;
    int binding_ttw = -1;
};

// Throws InfeasibleError naming the task and window when some window's
// requirement is unreachable at the satellite's power cap.
TaskPower task_min_power(const Task& task, const Scenario& scenario);

}  // namespace eosched
