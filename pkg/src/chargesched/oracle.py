"""Independent brute-force references, used only by tests and verification
runs. Instance-size caps are hard errors so exponential work can never run
silently."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .grid import GridCell, GridMap, SlotPlan
from .model import ChargerSpec, Point, Scenario, SensorNode, StopRecord, distance, power_at_distance
from .scheduling import Assignment


def exhaustive_opt(
    scenario: Scenario,
    gridmap: GridMap,
    slots: SlotPlan,
    max_size: int = 1_000_000,
) -> tuple[float, Assignment]:
    """Exact optimum of the slotted scheduling objective by enumerating
    every per-slot choice (each slot picks one grid or stays idle).

    Rejects instances with more than ``max_size`` combinations.
    """
    gamma = gridmap.gamma
    m = slots.count
    combos = (gamma + 1) ** m
    if combos > max_size:
        raise ValueError(
            f"{(gamma + 1)}^{m} = {combos} assignments exceeds the cap of {max_size}"
        )
    rounded = np.asarray(slots.rounded_deadlines)
    demands = np.asarray(scenario.demands)
    # Choice c for slot h is digit h of the combo index; 0 means idle.
    p_ext = np.vstack([np.zeros((1, gridmap.power.shape[1])), gridmap.power])
    ids = np.arange(combos)
    q = np.zeros((combos, len(scenario.nodes)))
    digits = []
    for h in range(m):
        digit = (ids // (gamma + 1) ** h) % (gamma + 1)
        digits.append(digit)
        alive = h * slots.dt < rounded
        q = q + p_ext[digit] * slots.dt * alive
    util = np.where(q <= demands, q / demands, 1.0)
    values = util.sum(axis=1)
    best = int(np.argmax(values))
    entries = tuple(
        None if digits[h][best] == 0 else gridmap.cells[int(digits[h][best]) - 1].id
        for h in range(m)
    )
    return float(values[best]), Assignment(entries)


def sampled_optimal_path(
    cells: Sequence[GridCell], depot: Point, samples_per_cell: int = 25
) -> float:
    """Shortest depot-to-depot polyline visiting one lattice point per cell
    in the given order, by dynamic programming over per-cell k x k lattices.

    The lattice always contains the four corners; odd k also hits the
    center. Refining the lattice (3x3 -> 5x5 -> 9x9, nested) can only
    shorten the result. Capped at 8 cells and at least a 3x3 lattice.
    """
    if len(cells) > 8:
        raise ValueError("path oracle capped at 8 stops")
    k = math.isqrt(samples_per_cell)
    if k < 3:
        raise ValueError("need at least a 3x3 lattice per cell")
    if not cells:
        return 0.0
    lattices = []
    for cell in cells:
        x0, y0, x1, y1 = cell.bounds
        xs = np.linspace(x0, x1, k)
        ys = np.linspace(y0, y1, k)
        gx, gy = np.meshgrid(xs, ys)
        lattices.append(np.column_stack([gx.ravel(), gy.ravel()]))
    costs = np.hypot(lattices[0][:, 0] - depot[0], lattices[0][:, 1] - depot[1])
    for prev, cur in zip(lattices, lattices[1:]):
        leg = np.hypot(prev[:, 0:1] - cur[:, 0], prev[:, 1:2] - cur[:, 1])
        costs = (costs[:, None] + leg).min(axis=0)
    back = np.hypot(lattices[-1][:, 0] - depot[0], lattices[-1][:, 1] - depot[1])
    return float((costs + back).min())


def integrate_energy(
    stops: Sequence[StopRecord],
    node: SensorNode,
    spec: ChargerSpec,
    fine_dt: float,
) -> float:
    """Numeric cross-check of the pre-deadline energy: midpoint Riemann sum
    of instantaneous received power over each dwell, zeroed from the
    deadline on. Converges to the closed form as ``fine_dt`` shrinks."""
    if fine_dt <= 0:
        raise ValueError("fine_dt must be positive")
    total = 0.0
    for stop in stops:
        p = power_at_distance(distance(stop.location, node.position), spec)
        if p == 0.0 or stop.dwell == 0.0:
            continue
        n_full = int(stop.dwell // fine_dt)
        if n_full:
            mids = stop.arrival + (np.arange(n_full) + 0.5) * fine_dt
            total += p * fine_dt * int(np.count_nonzero(mids < node.deadline))
        rem = stop.dwell - n_full * fine_dt
        if rem > 0.0 and stop.arrival + n_full * fine_dt + 0.5 * rem < node.deadline:
            total += p * rem
    return total
