"""Deadline-aware stop, dwell and route planning for a mobile wireless
charger over a field of rechargeable sensor nodes."""

from .baselines import edf_schedule, random_schedule
from .grid import (
    GridCell,
    GridMap,
    SlotPlan,
    build_gridmap,
    conservative_distance,
    grid_power,
    max_side_for_error,
    partition,
    slotting,
)
from .harness import (
    ExperimentConfig,
    ExperimentRecord,
    ScenarioParams,
    generate_scenario,
    read_scenario,
    run_experiment,
    run_pipeline,
    write_csv,
    write_scenario,
    write_tour,
)
from .model import (
    ChargerSpec,
    Scenario,
    SensorNode,
    StopRecord,
    effective_energy,
    power_at_distance,
    utility,
)
from .oracle import exhaustive_opt, integrate_energy, sampled_optimal_path
from .routing import (
    TourPlan,
    TourStop,
    evaluate_plan,
    initial_path,
    path_covers,
    path_length,
    skip_substitute,
    stop_start_times,
    truncate_to_budget,
)
from .scheduling import (
    Assignment,
    ScheduleResult,
    greedy_schedule,
    marginal_gain,
    node_energies,
    score_assignment,
    slotted_energy,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "ChargerSpec",
    "ExperimentConfig",
    "ExperimentRecord",
    "GridCell",
    "GridMap",
    "Scenario",
    "ScenarioParams",
    "ScheduleResult",
    "SensorNode",
    "SlotPlan",
    "StopRecord",
    "TourPlan",
    "TourStop",
    "build_gridmap",
    "conservative_distance",
    "edf_schedule",
    "effective_energy",
    "evaluate_plan",
    "exhaustive_opt",
    "generate_scenario",
    "greedy_schedule",
    "grid_power",
    "initial_path",
    "integrate_energy",
    "marginal_gain",
    "max_side_for_error",
    "node_energies",
    "partition",
    "path_covers",
    "path_length",
    "power_at_distance",
    "random_schedule",
    "read_scenario",
    "run_experiment",
    "run_pipeline",
    "sampled_optimal_path",
    "score_assignment",
    "skip_substitute",
    "slotted_energy",
    "slotting",
    "stop_start_times",
    "truncate_to_budget",
    "utility",
    "validate",
    "write_csv",
    "write_scenario",
    "write_tour",
]
