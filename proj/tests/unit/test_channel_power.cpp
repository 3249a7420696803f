#include <doctest.h>

#include <cmath>
#include <vector>

#include "eosched/channel.hpp"
#include "eosched/errors.hpp"
#include "eosched/power.hpp"
#include "eosched/rng.hpp"
#include "eosched/scenario.hpp"

using namespace eosched;

namespace {

// Reference downlink constants: 2.2 GHz channel, 250 Mbps requirement,
// two 36 dB gains, 1e-23 spreading loss, 5.16e-20 noise, 100 W cap.
Scenario reference_scenario() {
    Scenario s;
    s.grid = {8, 10.0};
    s.globals.bandwidth = 2.2e9;
    s.globals.free_space_loss = 1e-23;
    s.globals.noise_power = 5.16e-20;
    s.eoses.push_back({"eos-00", 100.0, 36.0});
    s.antennas.push_back("ant-00");
    s.ttws.push_back({"ttw-0000", "eos-00", "ant-00", 0, 7, 0.0, 36.0, 2.5e8});
    s.tasks.push_back({"task-00", "eos-00", 1e9, 4.0, 0, 7});
    s.finalize();
    return s;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("db conversion and link constants") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(rel_err(db_to_linear(36.0), 3981.0717055349725) < 1e-13);
    CHECK(rel_err(db_to_linear(-30.0), 1e-3) < 1e-13);

    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);
    CHECK(rel_err(lp.beta, 3071.49843500216) < 1e-12);
    CHECK(lp.bandwidth == 2.2e9);
    CHECK(lp.rate_requirement == 2.5e8);
    CHECK(lp.max_power == 100.0);
}

TEST_CASE("link rate pins and shape") {
    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);

    CHECK(sgl_rate(0.0, lp) == 0.0);
    CHECK(sgl_rate(-1.0, lp) == 0.0);
    CHECK(rel_err(sgl_rate(100.0, lp), 4.01028932033076e10) < 1e-12);

    // Strictly increasing and concave in power.
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform_real(1e-6, 100.0);
        const double h = p * 1e-3;
        const double lo = sgl_rate(p - h / 2, lp);
        const double mid = sgl_rate(p, lp);
        const double hi = sgl_rate(p + h / 2, lp);
        CHECK(lo < hi);
        CHECK(mid > (lo + hi) / 2);  // chord below the curve
    }
}

TEST_CASE("energy shape function pins") {
    CHECK(energy_factor(1.0) == 1.0);
    CHECK(rel_err(energy_factor(8.8), 0.721176723246473) < 1e-12);
    // Large-y limit is ln 2.
    CHECK(rel_err(energy_factor(1e6), 0.693147420786508) < 1e-12);

    CHECK(rel_err(energy_factor_grad(0.5), -2.54517744447956) < 1e-12);
    CHECK(rel_err(energy_factor_grad(1.0), -0.386294361119891) < 1e-12);
    CHECK(rel_err(energy_factor_grad(2.0), -0.0759155093611786) < 1e-12);
    CHECK(rel_err(energy_factor_grad(8.8), -0.00326990749951325) < 1e-12);
}

TEST_CASE("energy shape calculus identities") {
    // Gradient matches central differences; curvature is positive.
    for (int i = 0; i <= 40; ++i) {
        const double y = 0.05 * std::pow(100.0 / 0.05, i / 40.0);
        const double h = 1e-5 * y;
        const double fd = (energy_factor(y + h) - energy_factor(y - h)) / (2 * h);
        CHECK(rel_err(energy_factor_grad(y), fd) < 1e-6);
        CHECK(energy_factor_grad2(y) > 0.0);
        // The shape is strictly decreasing toward its ln 2 asymptote.
        CHECK(energy_factor_grad(y) < 0.0);
    }
}

TEST_CASE("inverse spectral efficiency maps invert each other") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const double beta = rng.uniform_real(10.0, 1e5);
        const double p = rng.uniform_real(1e-5, 200.0);
        const double y = inv_spectral_eff_at(p, beta);
        CHECK(rel_err(power_from_inv_eff(y, beta), p) < 1e-10);
    }
}

TEST_CASE("optimal power on the reference link") {
    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);

    const PowerSolution sol = optimal_power(lp, 1e9);
    CHECK(sol.case_tag == PowerCase::rate_bound);
    CHECK(sol.inv_spectral_eff == 8.8);  // bandwidth / rate requirement
    CHECK(rel_err(sol.power, 2.66814071708488e-5) < 1e-12);
    CHECK(rel_err(sgl_rate(sol.power, lp), 2.5e8) < 1e-12);
    CHECK(rel_err(sol.energy, 1.06725628683395e-4) < 1e-12);
    CHECK(rel_err(processing_time(s.tasks[0], sol.power, lp), 4.0) < 1e-12);

    // Feasible-interval low end: y realized at the power cap.
    CHECK(rel_err(inv_spectral_eff_at(100.0, lp.beta), 0.0548588848402227) < 1e-12);
}

TEST_CASE("energy accounting identities") {
    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);
    const Task& task = s.tasks[0];

    Rng rng(3);
    double prev_energy = 0.0;
    for (int i = 0; i <= 60; ++i) {
        // March up the power axis; energy must strictly grow with power.
        const double p = 1e-5 * std::pow(100.0 / 1e-5, i / 60.0);
        const double direct = task_energy(task, p, lp);
        CHECK(direct == p * processing_time(task, p, lp));
        const double y = inv_spectral_eff_at(p, lp.beta);
        const double via_shape =
            task.data_bits * energy_factor(y) / (lp.bandwidth * lp.beta);
        CHECK(rel_err(direct, via_shape) < 1e-12);
        CHECK(direct > prev_energy);
        prev_energy = direct;
    }
    (void)rng;
}

TEST_CASE("optimal power rejects unreachable requirements") {
    LinkParams lp;
    lp.beta = 10.0;
    lp.bandwidth = 1e6;
    lp.rate_requirement = 1e9;  // needs ~2^1000 SNR
    lp.max_power = 100.0;
    CHECK_THROWS_AS(optimal_power(lp, 1e9), InfeasibleError);

    lp.rate_requirement = 0.0;
    CHECK_THROWS_AS(optimal_power(lp, 1e9), InfeasibleError);
}

TEST_CASE("zero rate processing time is infeasible") {
    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);
    CHECK_THROWS_AS(processing_time(s.tasks[0], 0.0, lp), InfeasibleError);
}

TEST_CASE("uniform power grid layout") {
    const PowerGrid g = uniform_power_grid(2.0, 10.0, 4);
    REQUIRE(g.level_count() == 4);
    CHECK(g.levels[0] == 2.0);
    CHECK(g.levels[1] == 4.0);
    CHECK(g.levels[2] == 6.0);
    CHECK(g.levels[3] == 8.0);  // half-open: max itself is excluded

    const PowerGrid one = uniform_power_grid(5.0, 10.0, 1);
    REQUIRE(one.level_count() == 1);
    CHECK(one.levels[0] == 5.0);

    CHECK_THROWS_AS(uniform_power_grid(1.0, 10.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(uniform_power_grid(11.0, 10.0, 4), std::invalid_argument);
}

TEST_CASE("discretized grid starts at the optimum") {
    const Scenario s = reference_scenario();
    const LinkParams lp = link_params(s.tasks[0], s.ttws[0], s);
    const PowerSolution sol = optimal_power(lp, 1e9);
    const PowerGrid g = discretize_power(sol, lp, 8);
    REQUIRE(g.level_count() == 8);
    CHECK(g.levels[0] == sol.power);
    for (int k = 1; k < 8; ++k) CHECK(g.levels[k] > g.levels[k - 1]);
    CHECK(g.levels[7] < lp.max_power);
}

TEST_CASE("per-task minimum power follows the weakest window") {
    Scenario s;
    s.grid = {20, 10.0};
    s.globals.bandwidth = 2.2e9;
    s.globals.free_space_loss = 1e-23;
    s.globals.noise_power = 5.16e-20;
    s.eoses.push_back({"eos-00", 100.0, 36.0});
    s.antennas.push_back("ant-00");
    s.antennas.push_back("ant-01");
    // Second window is 10 dB weaker, so it needs more power.
    s.ttws.push_back({"ttw-0000", "eos-00", "ant-00", 0, 9, 0.0, 36.0, 2.5e8});
    s.ttws.push_back({"ttw-0001", "eos-00", "ant-01", 0, 9, 10.0, 36.0, 2.5e8});
    s.tasks.push_back({"task-00", "eos-00", 1e9, 4.0, 0, 19});
    s.finalize();

    const TaskPower tp = task_min_power(s.tasks[0], s);
    CHECK(tp.binding_ttw == 1);
    const LinkParams weak = link_params(s.tasks[0], s.ttws[1], s);
    CHECK(rel_err(sgl_rate(tp.power, weak), 2.5e8) < 1e-12);
    // The strong window is overserved at that power.
    const LinkParams strong = link_params(s.tasks[0], s.ttws[0], s);
    CHECK(sgl_rate(tp.power, strong) > 2.5e8);
}

TEST_CASE("per-task minimum power edge cases") {
    Scenario s;
    s.grid = {20, 10.0};
    s.globals.bandwidth = 2.2e9;
    s.globals.free_space_loss = 1e-23;
    s.globals.noise_power = 5.16e-20;
    s.eoses.push_back({"eos-00", 100.0, 36.0});
    s.eoses.push_back({"eos-01", 100.0, 36.0});
    s.antennas.push_back("ant-00");
    s.ttws.push_back({"ttw-0000", "eos-00", "ant-00", 0, 9, 0.0, 36.0, 2.5e8});
    // eos-01 has no contact window at all.
    s.tasks.push_back({"task-00", "eos-01", 1e9, 4.0, 0, 19});
    s.finalize();

    const TaskPower tp = task_min_power(s.tasks[0], s);
    CHECK(tp.power == 0.0);
    CHECK(tp.binding_ttw == -1);

    // A window whose requirement cannot be met at the cap is infeasible.
    Scenario hard = s;
    hard.tasks[0].eos = "eos-00";
    hard.ttws[0].path_loss_db = 80.0;
    hard.finalize();
    CHECK_THROWS_AS(task_min_power(hard.tasks[0], hard), InfeasibleError);
}
