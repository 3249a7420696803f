#include "eosched/power.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eosched/errors.hpp"

namespace eosched {

namespace {
constexpr double kLn2 = std::numbers::ln2;
constexpr double kBisectTol = 1e-10;
constexpr int kBisectMaxIter = 200;
}  // namespace

const char* to_string(PowerCase c) {
    switch (c) {
        case PowerCase::clipped_at_pmax: return "clipped_at_pmax";
        case PowerCase::interior_extremum: return "interior_extremum";
        case PowerCase::rate_bound: return "rate_bound";
    }
    return "unknown";
}

double energy_factor(double y) {
    // y * (2^(1/y) - 1); expm1 keeps the small-exponent tail accurate.
    return y * std::expm1(kLn2 / y);
}

double energy_factor_grad(double y) {
    return std::exp2(1.0 / y) * (1.0 - kLn2 / y) - 1.0;
}

double energy_factor_grad2(double y) {
    return std::exp2(1.0 / y) * kLn2 * kLn2 / (y * y * y);
}

double inv_spectral_eff_at(double power, double beta) {
    return kLn2 / std::log1p(beta * power);
}

double power_from_inv_eff(double y, double beta) {
    return std::expm1(kLn2 / y) / beta;
}

PowerSolution optimal_inv_eff(const LinkParams& lp) {
    if (!(lp.beta > 0.0)) throw InfeasibleError("link: nonpositive channel gain");
    if (!(lp.bandwidth > 0.0)) throw InfeasibleError("link: nonpositive bandwidth");
    if (!(lp.max_power > 0.0)) throw InfeasibleError("link: nonpositive power cap");
    if (!(lp.rate_requirement > 0.0))
        throw InfeasibleError("link: nonpositive rate requirement");

    const double y_min = inv_spectral_eff_at(lp.max_power, lp.beta);
    const double y_max = lp.bandwidth / lp.rate_requirement;
    if (y_min > y_max)
        throw InfeasibleError("link: rate requirement " +
                              std::to_string(lp.rate_requirement) +
                              " bit/s unreachable at the power cap");

    PowerSolution sol;
    const double grad_lo = energy_factor_grad(y_min);
    const double grad_hi = energy_factor_grad(y_max);
    if (grad_lo >= 0.0) {
        sol.inv_spectral_eff = y_min;
        sol.case_tag = PowerCase::clipped_at_pmax;
    } else if (grad_hi <= 0.0) {
        sol.inv_spectral_eff = y_max;
        sol.case_tag = PowerCase::rate_bound;
    } else {
        double lo = y_min, hi = y_max;
        for (int i = 0; i < kBisectMaxIter && hi - lo > kBisectTol * std::max(1.0, lo);
             ++i) {
            const double mid = 0.5 * (lo + hi);
            (energy_factor_grad(mid) < 0.0 ? lo : hi) = mid;
        }
        sol.inv_spectral_eff = 0.5 * (lo + hi);
        sol.case_tag = PowerCase::interior_extremum;
    }
    sol.power = std::min(power_from_inv_eff(sol.inv_spectral_eff, lp.beta),
                         lp.max_power);
    return sol;
}

PowerSolution optimal_power(const LinkParams& lp, double data_bits) {
    if (!(data_bits > 0.0)) throw InfeasibleError("link: nonpositive data size");
    PowerSolution sol = optimal_inv_eff(lp);
    // E = P * D / rate collapses to D * g(y) / (B * beta).
    sol.energy = data_bits * energy_factor(sol.inv_spectral_eff) /
                 (lp.bandwidth * lp.beta);
    return sol;
}

PowerGrid discretize_power(const PowerSolution& solution, const LinkParams& lp,
                           int level_count) {
    return uniform_power_grid(solution.power, lp.max_power, level_count);
}

PowerGrid uniform_power_grid(double base_power, double max_power, int level_count) {
    if (level_count < 1) throw std::invalid_argument("level_count must be >= 1");
    if (base_power > max_power)
        throw std::invalid_argument("power grid base above its cap");
    PowerGrid grid;
    grid.levels.reserve(level_count);
    const double step = (max_power - base_power) / level_count;
    for (int k = 0; k < level_count; ++k)
        grid.levels.push_back(base_power + k * step);
    return grid;
}

TaskPower task_min_power(const Task& task, const Scenario& scenario) {
    TaskPower out;
    const int eos_index = task.eos_index >= 0 ? task.eos_index
                                              : scenario.eos_index_of.at(task.eos);
    for (int k : scenario.ttws_of_eos.at(eos_index)) {
        const Ttw& ttw = scenario.ttws[k];
        const LinkParams lp = link_params(task, ttw, scenario);
        // Smallest power meeting this window's requirement: rate == R_k.
        const double y_req = lp.bandwidth / lp.rate_requirement;
        const double p_req = power_from_inv_eff(y_req, lp.beta);
        if (p_req > lp.max_power * (1.0 + 1e-12))
            throw InfeasibleError("task " + task.id + ": ttw " + ttw.id +
                                  " requires " + std::to_string(p_req) +
                                  " W, above the power cap");
        if (p_req > out.power) {
            out.power = std::min(p_req, lp.max_power);
            out.binding_ttw = k;
        }
    }
    return out;
}

}  // namespace eosched
