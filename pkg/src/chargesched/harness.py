"""Scenario generation, the end-to-end pipeline and experiment sweeps.

A pipeline run discretizes the plane at the error-matched cell size, slots
the time budget, schedules with the chosen scheme, builds and shortens the
tour, truncates it to the budget and scores it. Two utilities are recorded
for every run: the slotted schedule's own score (travel ignored) and the
travel-aware score of the final tour, so the cost of the
schedule-then-route decomposition stays visible.

Reproducibility contract: a config plus its seeds fully determines the CSV
bytes, whether runs execute serially or in parallel (MORE_SCHED_THREADS
caps the thread count; unset means serial). Wall-clock timing is therefore
written as 0 unless timing is explicitly requested, which gives up
byte-reproducibility of that one column.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .baselines import edf_schedule, random_schedule
from .grid import build_gridmap, max_side_for_error, slotting
from .model import ChargerSpec, Point, Scenario, SensorNode
from .routing import TourPlan, evaluate_plan, initial_path, skip_substitute, stop_start_times, truncate_to_budget
from .scheduling import greedy_schedule

SCHEMES = ("more", "edf", "random")
SWEEPS = ("none", "lambda", "dt")
CSV_HEADER = "scheme,sweep_name,sweep_value,seed,utility_morer,utility_travel,stop_grids,tour_len_m,gamma,slots,wall_s"


@dataclass(frozen=True)
class ScenarioParams:
    """Random-scenario knobs. Defaults: 40 nodes on a 50 m plane, demands
    in [10, 100] J, deadlines in [300, 1800] s (5 to 30 min), charger
    alpha=100, beta=10, 6 m range, depot at the origin."""

    plane_side: float = 50.0
    num_nodes: int = 40
    demand_range: tuple[float, float] = (10.0, 100.0)
    deadline_range: tuple[float, float] = (300.0, 1800.0)
    alpha: float = 100.0
    beta: float = 10.0
    range_d: float = 6.0
    speed_v: float = 1.0
    depot: Point = (0.0, 0.0)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_nodes < 1:
            raise ValueError("need at least one node")
        if self.demand_range[0] > self.demand_range[1] or self.demand_range[0] <= 0:
            raise ValueError("bad demand range")
        if self.deadline_range[0] > self.deadline_range[1] or self.deadline_range[0] <= 0:
            raise ValueError("bad deadline range")


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep: schemes x sweep values x seeds, at fixed remaining knobs.

    ``sigma`` of None means one hundredth of the cell side.
    """

    schemes: tuple[str, ...] = SCHEMES
    sweep_name: str = "none"
    sweep_values: tuple[float, ...] = ()
    lam: float = 0.15
    dt: float = 30.0
    seeds: tuple[int, ...] = (0,)
    sigma: Optional[float] = None
    scenario: ScenarioParams = ScenarioParams()
    timed: bool = False

    def __post_init__(self) -> None:
        if not self.schemes or any(s not in SCHEMES for s in self.schemes):
            raise ValueError(f"schemes must be a nonempty subset of {SCHEMES}")
        if self.sweep_name not in SWEEPS:
            raise ValueError(f"sweep must be one of {SWEEPS}")
        if self.sweep_name != "none" and not self.sweep_values:
            raise ValueError("sweep values must be nonempty")
        if not self.seeds:
            raise ValueError("need at least one seed")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (scheme, sweep value, seed) result row.

    ``utility_morer`` is the slotted schedule's score (travel ignored);
    ``utility_travel`` scores the budget-truncated tour with real travel.
    ``stop_grids`` and ``tour_len_m`` describe the planned (pre-truncation)
    tour. ``wall_s`` is excluded from equality: it is 0 unless timing was
    requested.
    """

    scheme: str
    sweep_name: str
    sweep_value: Optional[float]
    seed: int
    utility_morer: float
    utility_travel: float
    stop_grids: int
    tour_len_m: float
    gamma: int
    slots: int
    wall_s: float = field(default=0.0, compare=False)


def generate_scenario(params: ScenarioParams) -> Scenario:
    """Seeded uniform scenario: node positions over the plane, demands and
    deadlines over their ranges (drawn in that order); the budget is the
    latest deadline."""
    rng = np.random.default_rng(params.seed)
    pos = rng.uniform(0.0, params.plane_side, size=(params.num_nodes, 2))
    demands = rng.uniform(*params.demand_range, size=params.num_nodes)
    deadlines = rng.uniform(*params.deadline_range, size=params.num_nodes)
    nodes = tuple(
        SensorNode(i, (float(pos[i, 0]), float(pos[i, 1])), float(demands[i]), float(deadlines[i]))
        for i in range(params.num_nodes)
    )
    charger = ChargerSpec(params.alpha, params.beta, params.range_d, params.speed_v, params.depot)
    return Scenario(params.plane_side, nodes, charger)


# Gridmaps depend only on (scenario, delta); sweeps reuse them across schemes.
_cached_gridmap = functools.lru_cache(maxsize=64)(build_gridmap)


def run_pipeline(
    scenario: Scenario,
    lam: float,
    dt: float,
    scheme: str,
    sigma: Optional[float] = None,
    seed: int = 0,
    sweep_name: str = "none",
    sweep_value: Optional[float] = None,
    timed: bool = False,
    with_tour: bool = False,
):
    """Discretize, schedule, route, truncate, score: one record.

    With ``with_tour`` also returns the final budget-truncated TourPlan.
    """
    t0 = time.perf_counter()
    delta = max_side_for_error(lam, scenario.charger.beta)
    gridmap = _cached_gridmap(scenario, delta)
    slots = slotting(scenario.budget_t, dt, scenario.nodes)
    if scheme == "more":
        result = greedy_schedule(scenario, gridmap, slots)
    elif scheme == "edf":
        result, _ = edf_schedule(scenario, gridmap, slots)
    elif scheme == "random":
        result, _ = random_schedule(scenario, gridmap, slots, seed)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    planned = initial_path(result.assignment, gridmap, scenario.charger.depot, slots.dt)
    shortened = skip_substitute(planned, gridmap, sigma if sigma else delta / 100.0)
    effective = truncate_to_budget(shortened, scenario.budget_t, scenario.charger)
    _, travel_total = evaluate_plan(effective, scenario, gridmap)
    record = ExperimentRecord(
        scheme=scheme,
        sweep_name=sweep_name,
        sweep_value=sweep_value,
        seed=seed,
        utility_morer=result.total_utility,
        utility_travel=travel_total,
        stop_grids=len(shortened.stops),
        tour_len_m=shortened.length,
        gamma=gridmap.gamma,
        slots=slots.count,
        wall_s=time.perf_counter() - t0 if timed else 0.0,
    )
    return (record, effective) if with_tour else record


def _run_unit(config: ExperimentConfig, scheme: str, value: Optional[float], seed: int) -> ExperimentRecord:
    scenario = generate_scenario(dataclasses.replace(config.scenario, seed=seed))
    lam = value if config.sweep_name == "lambda" else config.lam
    dt = value if config.sweep_name == "dt" else config.dt
    return run_pipeline(
        scenario,
        lam,
        dt,
        scheme,
        sigma=config.sigma,
        seed=seed,
        sweep_name=config.sweep_name,
        sweep_value=value,
        timed=config.timed,
    )


def thread_budget() -> int:
    raw = os.environ.get("MORE_SCHED_THREADS", "").strip()
    if not raw:
        return 1
    return max(1, int(raw))


def run_experiment(config: ExperimentConfig) -> tuple[list[ExperimentRecord], dict]:
    """All (scheme, sweep value, seed) combinations, ordered by those keys
    no matter how execution was scheduled. Returns the records plus
    per-(scheme, value) means."""
    values: tuple[Optional[float], ...] = (
        config.sweep_values if config.sweep_name != "none" else (None,)
    )
    units = [(s, v, seed) for s in config.schemes for v in values for seed in config.seeds]
    threads = thread_budget()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda u: _run_unit(config, *u), units))
    else:
        records = [_run_unit(config, *u) for u in units]
    records.sort(key=lambda r: (r.scheme, r.sweep_value if r.sweep_value is not None else 0.0, r.seed))
    summary: dict = {}
    for scheme in sorted(set(r.scheme for r in records)):
        for value in sorted(set(r.sweep_value for r in records), key=lambda v: (v is not None, v)):
            group = [r for r in records if r.scheme == scheme and r.sweep_value == value]
            if group:
                summary[(scheme, value)] = {
                    "utility_morer": float(np.mean([r.utility_morer for r in group])),
                    "utility_travel": float(np.mean([r.utility_travel for r in group])),
                    "stop_grids": float(np.mean([r.stop_grids for r in group])),
                    "tour_len_m": float(np.mean([r.tour_len_m for r in group])),
                }
    return records, summary


def format_record(r: ExperimentRecord) -> str:
    sweep_value = "" if r.sweep_value is None else f"{r.sweep_value:g}"
    return (
        f"{r.scheme},{r.sweep_name},{sweep_value},{r.seed},"
        f"{r.utility_morer:.6f},{r.utility_travel:.6f},{r.stop_grids},"
        f"{r.tour_len_m:.3f},{r.gamma},{r.slots},{r.wall_s:.3f}"
    )


def write_csv(records, path) -> None:
    lines = [CSV_HEADER] + [format_record(r) for r in records]
    Path(path).write_text("\n".join(lines) + "\n")


def scenario_to_dict(scenario: Scenario) -> dict:
    c = scenario.charger
    return {
        "plane_side_m": scenario.plane_side,
        "charger": {
            "alpha": c.alpha,
            "beta": c.beta,
            "range_m": c.range_d,
            "speed_mps": c.speed_v,
            "depot": [c.depot[0], c.depot[1]],
        },
        "nodes": [
            {"id": n.id, "x_m": n.position[0], "y_m": n.position[1], "demand_j": n.demand, "deadline_s": n.deadline}
            for n in scenario.nodes
        ],
        "budget_s": scenario.budget_t,
    }


def write_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


def read_scenario(path) -> Scenario:
    data = json.loads(Path(path).read_text())
    c = data["charger"]
    charger = ChargerSpec(c["alpha"], c["beta"], c["range_m"], c["speed_mps"], tuple(c["depot"]))
    nodes = tuple(
        SensorNode(n["id"], (n["x_m"], n["y_m"]), n["demand_j"], n["deadline_s"])
        for n in data["nodes"]
    )
    return Scenario(data["plane_side_m"], nodes, charger, data["budget_s"])


def tour_to_dict(tour: TourPlan, speed_v: float) -> dict:
    starts = stop_start_times(tour, speed_v)
    return {
        "waypoints": [[x, y] for x, y in tour.waypoints],
        "stops": [
            {"grid_id": s.grid_id, "x": s.point[0], "y": s.point[1], "arrival_s": t, "dwell_s": s.dwell}
            for s, t in zip(tour.stops, starts)
        ],
        "length_m": tour.length,
    }


def write_tour(tour: TourPlan, speed_v: float, path) -> None:
    Path(path).write_text(json.dumps(tour_to_dict(tour, speed_v), indent=2) + "\n")
