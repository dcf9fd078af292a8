"""Oracle-backed verification suites.

Each check pits a production path against an independent reference (exact
enumeration, geometric sampling, numeric integration) on seeded random
inputs and reports violations. The acceptance tests run these at full
sample counts; the CLI's ``oracle-check`` subcommand runs the same code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridCell, GridMap, SlotPlan, build_gridmap, grid_power, max_side_for_error, partition, slotting
from .model import ChargerSpec, Scenario, SensorNode, StopRecord, effective_energy, power_at_distance
from .oracle import exhaustive_opt, integrate_energy, sampled_optimal_path
from .routing import _covers_mask, initial_path, skip_substitute
from .scheduling import Assignment, greedy_schedule, marginal_gain, score_assignment


@dataclass
class CheckReport:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'ok' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _tiny_instance(rng: np.random.Generator):
    """A random scheduling instance small enough to enumerate."""
    side = float(rng.uniform(6.0, 16.0))
    split = int(rng.integers(1, 3))  # 1x1 or 2x2 cells
    delta = side / split
    n = int(rng.integers(1, 5))
    dt = float(rng.uniform(5.0, 30.0))
    m = int(rng.integers(1, 5))
    budget = dt * (m + 0.5)
    nodes = tuple(
        SensorNode(
            i,
            (float(rng.uniform(0, side)), float(rng.uniform(0, side))),
            float(rng.uniform(3.0, 40.0)),
            float(rng.uniform(0.5 * dt, budget)),
        )
        for i in range(n)
    )
    charger = ChargerSpec(
        alpha=float(rng.uniform(20.0, 200.0)),
        beta=float(rng.uniform(2.0, 15.0)),
        range_d=float(rng.uniform(0.25, 1.2)) * side,
        speed_v=1.0,
    )
    scenario = Scenario(side, nodes, charger, budget_t=budget)
    gridmap = build_gridmap(scenario, delta)
    slots = slotting(budget, dt, nodes)
    return scenario, gridmap, slots


def check_greedy_vs_exhaustive(instances: int = 200, seed: int = 0, max_size: int = 1_000_000) -> CheckReport:
    """Greedy value at least half the exact optimum, instance by instance."""
    rng = np.random.default_rng(seed)
    worst = math.inf
    violations = 0
    for _ in range(instances):
        scenario, gridmap, slots = _tiny_instance(rng)
        greedy = greedy_schedule(scenario, gridmap, slots).total_utility
        opt, _ = exhaustive_opt(scenario, gridmap, slots, max_size=max_size)
        if opt <= 1e-12:
            if greedy > 1e-12:
                violations += 1
            continue
        ratio = greedy / opt
        worst = min(worst, ratio)
        if ratio < 0.5 - 1e-12:
            violations += 1
    detail = f"{instances} instances, min ratio {worst:.4f}, {violations} below 1/2"
    return CheckReport("greedy vs exhaustive optimum", violations == 0, detail)


def _dyadic_instance(rng: np.random.Generator):
    """Instance whose powers, slot length, demands and rounded deadlines are
    exactly representable, so gain comparisons carry no rounding noise."""
    gamma = int(rng.integers(2, 7))
    n = int(rng.integers(1, 5))
    m = int(rng.integers(2, 7))
    dt = float(2 ** rng.integers(3, 6))
    power = rng.integers(0, 512, size=(gamma, n)) / 512.0
    rounded = tuple(float(dt * v) for v in rng.integers(0, m + 1, size=n))
    demands = rng.integers(1, 128, size=n).astype(float)
    budget = dt * (m + 0.5)
    nodes = tuple(
        SensorNode(i, (0.0, 0.0), float(demands[i]), max(float(rounded[i]), 0.5 * dt))
        for i in range(n)
    )
    charger = ChargerSpec(1.0, 1.0, 1.0, 1.0)
    scenario = Scenario(1.0, nodes, charger, budget_t=budget)
    cells = tuple(GridCell(i, (0.0, 0.0, 1.0, 1.0), (0.5, 0.5)) for i in range(gamma))
    gridmap = GridMap(delta=1.0, cells=cells, power=power)
    slots = SlotPlan(dt=dt, count=m, rounded_deadlines=rounded)
    return scenario, gridmap, slots


def check_monotone_submodular(triples: int = 1000, seed: int = 0) -> CheckReport:
    """Diminishing returns and monotonicity of the schedule objective on
    random nested assignment pairs, compared exactly."""
    rng = np.random.default_rng(seed)
    violations = 0
    done = 0
    while done < triples:
        scenario, gridmap, slots = _dyadic_instance(rng)
        m, gamma = slots.count, gridmap.gamma
        for _ in range(10):
            if done >= triples:
                break
            b_edges = [
                (h, int(rng.integers(0, gamma))) for h in range(m) if rng.random() < 0.6
            ]
            free = [h for h in range(m) if h not in {e[0] for e in b_edges}]
            if not free:
                continue
            a_edges = [e for e in b_edges if rng.random() < 0.5]
            u = (int(free[rng.integers(0, len(free))]), int(rng.integers(0, gamma)))
            a = Assignment.from_edges(a_edges, m)
            b = Assignment.from_edges(b_edges, m)
            gain_a = marginal_gain(a, u[0], u[1], scenario, gridmap, slots)
            gain_b = marginal_gain(b, u[0], u[1], scenario, gridmap, slots)
            obj_a = score_assignment(a, scenario, gridmap, slots).total_utility
            obj_b = score_assignment(b, scenario, gridmap, slots).total_utility
            if not (gain_a >= gain_b >= 0.0 and obj_b >= obj_a):
                violations += 1
            done += 1
    return CheckReport(
        "monotone diminishing returns",
        violations == 0,
        f"{done} nested triples, {violations} violations (exact compare)",
    )


def check_grid_error_bound(
    lams=(0.05, 0.15, 0.45, 0.75),
    samples_per_lam: int = 10_000,
    seed: int = 0,
    alpha: float = 100.0,
    beta: float = 10.0,
    range_d: float = 6.0,
) -> CheckReport:
    """Conservative cell power stays within [(1-lam) x true, true] for
    random chargeable cell/node/in-cell-point triples.

    Cells whose farthest point exceeds the range are deliberately worth
    zero regardless of the true power, so sampling conditions on the cell
    being chargeable at all.
    """
    spec = ChargerSpec(alpha, beta, range_d, 1.0)
    rng = np.random.default_rng(seed)
    violations = 0
    checked = 0
    for lam in lams:
        delta = max_side_for_error(lam, beta)
        kept = 0
        while kept < samples_per_lam:
            x0, y0 = rng.uniform(0.0, 50.0, size=2)
            cell = GridCell(0, (x0, y0, x0 + delta, y0 + delta), (x0 + delta / 2, y0 + delta / 2))
            # Node somewhere near the cell; keep only chargeable geometries.
            angle = rng.uniform(0, 2 * math.pi)
            radius = rng.uniform(0.0, range_d)
            node_pos = (
                x0 + delta / 2 + radius * math.cos(angle),
                y0 + delta / 2 + radius * math.sin(angle),
            )
            node = SensorNode(0, node_pos, 1.0, 1.0)
            approx = grid_power(cell, node, spec)
            if approx <= 0.0:
                continue
            a = (float(rng.uniform(x0, x0 + delta)), float(rng.uniform(y0, y0 + delta)))
            true_p = power_at_distance(math.hypot(a[0] - node_pos[0], a[1] - node_pos[1]), spec)
            if not ((1.0 - lam) * true_p <= approx <= true_p):
                violations += 1
            kept += 1
            checked += 1
    return CheckReport(
        "cell power error bound",
        violations == 0,
        f"{checked} triples over lam in {tuple(lams)}, {violations} violations",
    )


def _random_tour(rng: np.random.Generator):
    side = 30.0
    delta = float(rng.uniform(1.2, 3.0))
    cells = tuple(partition(side, delta))
    gridmap = GridMap(delta=delta, cells=cells, power=np.zeros((len(cells), 1)))
    count = int(rng.integers(2, 13))
    ids: list[int] = []
    for _ in range(count):
        g = int(rng.integers(0, len(cells)))
        if ids and ids[-1] == g:
            continue
        ids.append(g)
    assignment = Assignment.from_edges([(h, g) for h, g in enumerate(ids)], len(ids))
    tour = initial_path(assignment, gridmap, (0.0, 0.0), dt=30.0)
    return tour, gridmap, delta


def _tour_covered(waypoints, tour, gridmap) -> bool:
    boxes = np.array([gridmap.cell(s.grid_id).bounds for s in tour.stops])
    covered = np.zeros(len(boxes), dtype=bool)
    for a, b in zip(waypoints, waypoints[1:]):
        covered |= _covers_mask(a, b, boxes)
        if covered.all():
            return True
    return bool(covered.all())


def check_route_shortening(
    tours: int = 100,
    seed: int = 0,
    oracle_max_stops: int = 8,
    samples_per_cell: int = 25,
) -> CheckReport:
    """Shortening keeps every stop cell covered, strictly shrinks the path
    at every accepted move, reaches a fixpoint, and on small instances
    stays within sqrt(2)*stops*delta of the lattice-optimal ordered path."""
    rng = np.random.default_rng(seed)
    bad = []
    for i in range(tours):
        tour, gridmap, delta = _random_tour(rng)
        sigma = delta / 100.0
        trace: list = []
        out = skip_substitute(tour, gridmap, sigma, trace=trace)
        for op in trace:
            if not op["length_after"] < op["length_before"]:
                bad.append(f"tour {i}: {op['kind']} did not shorten")
            if not _tour_covered(op["waypoints"], tour, gridmap):
                bad.append(f"tour {i}: coverage lost after {op['kind']}")
        if not _tour_covered(out.waypoints, out, gridmap):
            bad.append(f"tour {i}: output coverage broken")
        if out.length > tour.length + 1e-9:
            bad.append(f"tour {i}: output longer than input")
        trace2: list = []
        again = skip_substitute(out, gridmap, sigma, trace=trace2)
        if trace2 or again != out:
            bad.append(f"tour {i}: not a fixpoint")
        if len(tour.stops) <= oracle_max_stops:
            ref = sampled_optimal_path(
                [gridmap.cell(s.grid_id) for s in tour.stops], (0.0, 0.0), samples_per_cell
            )
            bound = ref + math.sqrt(2.0) * len(tour.stops) * delta
            if out.length > bound + 1e-9:
                bad.append(f"tour {i}: length {out.length:.3f} above bound {bound:.3f}")
    detail = f"{tours} tours, {len(bad)} violations" + (f"; first: {bad[0]}" if bad else "")
    return CheckReport("route shortening", not bad, detail)


def check_energy_integration(
    stop_lists: int = 500, seed: int = 0, fine_dt: float = 1e-3, rel_tol: float = 1e-6
) -> CheckReport:
    """Closed-form pre-deadline energy against midpoint numeric integration
    on random millisecond-aligned stop lists."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    violations = 0
    for _ in range(stop_lists):
        spec = ChargerSpec(
            alpha=float(rng.uniform(50, 150)),
            beta=float(rng.uniform(5, 15)),
            range_d=float(rng.uniform(3, 10)),
            speed_v=1.0,
        )
        node = SensorNode(
            0,
            (float(rng.uniform(0, 8)), float(rng.uniform(0, 8))),
            1.0,
            float(rng.integers(1, 30_000)) * fine_dt,
        )
        stops = []
        t = 0.0
        for _ in range(int(rng.integers(1, 7))):
            t += float(rng.integers(0, 5_000)) * fine_dt
            dwell = float(rng.integers(1, 15_000)) * fine_dt
            stops.append(StopRecord((float(rng.uniform(0, 8)), float(rng.uniform(0, 8))), t, dwell))
            t += dwell
        exact = effective_energy(stops, node, spec)
        numeric = integrate_energy(stops, node, spec, fine_dt)
        if exact == 0.0 and numeric == 0.0:
            continue
        rel = abs(exact - numeric) / max(abs(exact), 1e-300)
        worst = max(worst, rel)
        if rel > rel_tol:
            violations += 1
    return CheckReport(
        "energy vs numeric integration",
        violations == 0,
        f"{stop_lists} stop lists, max rel err {worst:.2e}, {violations} above {rel_tol:g}",
    )


def run_all(max_size: int = 1_000_000) -> list[CheckReport]:
    return [
        check_greedy_vs_exhaustive(max_size=max_size),
        check_monotone_submodular(),
        check_grid_error_bound(),
        check_route_shortening(),
        check_energy_integration(),
    ]
