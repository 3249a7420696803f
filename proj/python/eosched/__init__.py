from ._eosched import (
    Assignment,
    GaParams,
    Scenario,
    Schedule,
    SolveResult,
    objective,
    optimal_power,
    run_baseline_ga,
    run_baseline_random,
    run_edo,
    validate,
)

__all__ = [
    "Assignment",
    "GaParams",
    "Scenario",
    "Schedule",
    "SolveResult",
    "objective",
    "optimal_power",
    "run_baseline_ga",
    "run_baseline_random",
    "run_edo",
    "validate",
]
