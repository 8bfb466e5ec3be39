"""
Simulation setups, Bayes risk, Monte Carlo benchmarks and leave-one-out k selection
"""
from .bayes import bayes_classify, bayes_risk
from .benchmark import (
    evaluate_split,
    real_data_roster,
    run_benchmark,
    run_fixed_split,
    run_partition_benchmark,
    simulation_roster,
)
from .cv import default_k_grid, loocv_errors, loocv_select_k, with_selected_k
from .setups import SimulationSetup, generate, get_setup

__all__ = [
    "SimulationSetup",
    "get_setup",
    "generate",
    "bayes_classify",
    "bayes_risk",
    "simulation_roster",
    "real_data_roster",
    "evaluate_split",
    "run_benchmark",
    "run_partition_benchmark",
    "run_fixed_split",
    "default_k_grid",
    "loocv_errors",
    "loocv_select_k",
    "with_selected_k",
]
