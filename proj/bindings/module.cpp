#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "eosched/edo.hpp"
#include "eosched/evaluation.hpp"
#include "eosched/power.hpp"
#include "eosched/scenario.hpp"
#include "eosched/schedule.hpp"

namespace py = pybind11;
using namespace eosched;

PYBIND11_MODULE(_eosched, m) {
    m.doc() = "energy-aware satellite downlink scheduling core";

    py::class_<Scenario>(m, "Scenario")
        .def_static(
            "generate",
            [](const std::string& config_json, std::uint64_t seed) {
                GeneratorConfig config;
                if (!config_json.empty())
                    config = generator_config_from_string(config_json);
                return generate_synthetic(config, seed);
            },
            py::arg("config_json") = std::string(), py::arg("seed") = 1)
        .def_static("loads", &scenario_from_string, py::arg("text"))
        .def_static("load", &load_scenario, py::arg("path"))
        .def("dumps", &scenario_to_string)
        .def("save",
             [](const Scenario& s, const std::string& path) { save_scenario(s, path); },
             py::arg("path"))
        .def_property_readonly("hash", &scenario_hash)
        .def_property_readonly("num_tasks",
                               [](const Scenario& s) { return s.tasks.size(); })
        .def_property_readonly("num_ttws",
                               [](const Scenario& s) { return s.ttws.size(); })
        .def_property_readonly("num_slots",
                               [](const Scenario& s) { return s.grid.num_slots; })
        .def("__repr__", [](const Scenario& s) {
            return "<Scenario tasks=" + std::to_string(s.tasks.size()) +
                   " ttws=" + std::to_string(s.ttws.size()) + ">";
        });

    py::class_<Assignment>(m, "Assignment")
        .def_readonly("task", &Assignment::task)
        .def_readonly("ttw", &Assignment::ttw)
        .def_readonly("start_slot", &Assignment::start_slot);

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("assignments", &Schedule::assignments)
        .def_readonly("powers", &Schedule::powers)
        .def_readonly("lambda_value", &Schedule::lambda)
        .def_readonly("objective_max_form", &Schedule::objective_max_form)
        .def_readonly("energy_total", &Schedule::energy_total)
        .def_readonly("weight_total", &Schedule::weight_total)
        .def("dumps", &schedule_to_string, py::arg("scenario"))
        .def_static("loads", &schedule_from_string, py::arg("text"),
                    py::arg("scenario"));

    py::class_<GaParams>(m, "GaParams")
        .def(py::init<>())
        .def_readwrite("population_size", &GaParams::population_size)
        .def_readwrite("generations", &GaParams::generations)
        .def_readwrite("crossover_prob", &GaParams::crossover_prob)
        .def_readwrite("mutation_prob", &GaParams::mutation_prob)
        .def_readwrite("tournament_size", &GaParams::tournament_size)
        .def_readwrite("elite_count", &GaParams::elite_count)
        .def_readwrite("level_count", &GaParams::level_count)
        .def_readwrite("seed", &GaParams::seed);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("schedule", &SolveResult::schedule)
        .def_readonly("warnings", &SolveResult::warnings)
        .def_readonly("fitness_evaluations", &SolveResult::fitness_evaluations)
        .def_readonly("lambda_value", &SolveResult::solve_lambda)
        .def("trace_csv",
             [](const SolveResult& r) { return trace_to_csv(r.trace); });

    m.def("run_edo", &run_edo, py::arg("scenario"), py::arg("params") = GaParams{},
          py::arg("lambda_override") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_baseline_ga", &run_baseline_ga, py::arg("scenario"),
          py::arg("params") = GaParams{}, py::arg("lambda_override") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_baseline_random", &run_baseline_random, py::arg("scenario"),
          py::arg("seed"), py::arg("samples"), py::arg("level_count") = 8,
          py::arg("lambda_override") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "validate",
        [](const Schedule& schedule, const Scenario& scenario) {
            std::vector<std::string> out;
            for (const Violation& v : validate_schedule(schedule, scenario))
                out.push_back(v.constraint + ": " + v.message);
            return out;
        },
        py::arg("schedule"), py::arg("scenario"),
        "independent feasibility check; returns one string per violation");

    m.def(
        "objective",
        [](const Schedule& schedule, const Scenario& scenario, double lambda) {
            const ObjectiveBreakdown b = objective(schedule, scenario, lambda);
            py::dict d;
            d["energy_total"] = b.energy_total;
            d["weight_total"] = b.weight_total;
            d["p0_value"] = b.p0_value;
            d["max_form_value"] = b.max_form_value;
            d["lambda"] = b.lambda;
            return d;
        },
        py::arg("schedule"), py::arg("scenario"), py::arg("lambda"));

    m.def(
        "optimal_power",
        [](double beta, double bandwidth, double rate_requirement, double max_power,
           double data_bits) {
            LinkParams lp;
            lp.beta = beta;
            lp.bandwidth = bandwidth;
            lp.rate_requirement = rate_requirement;
            lp.max_power = max_power;
            const PowerSolution s = optimal_power(lp, data_bits);
            py::dict d;
            d["power"] = s.power;
            d["inv_spectral_eff"] = s.inv_spectral_eff;
            d["energy"] = s.energy;
            d["case"] = std::string(to_string(s.case_tag));
            return d;
        },
        py::arg("beta"), py::arg("bandwidth"), py::arg("rate_requirement"),
        py::arg("max_power"), py::arg("data_bits"),
        "closed-form minimum-energy transmit power for one link");
}
