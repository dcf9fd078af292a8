"""Slot-by-slot greedy scheduler for charger stop grids.

A schedule assigns at most one grid per time slot (a partition-matroid
constraint). The objective, total saturating utility of pre-deadline
energy, is monotone submodular over slot/grid picks, so a greedy that takes
the best-gain grid slot after slot keeps at least half of the best
achievable value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .grid import GridMap, SlotPlan
from .model import Scenario


@dataclass(frozen=True)
class Assignment:
    """One optional grid id per slot index; slot h covers time
    [h*dt, (h+1)*dt)."""

    entries: tuple[Optional[int], ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, g) for h, g in enumerate(self.entries) if g is not None)

    @classmethod
    def empty(cls, num_slots: int) -> "Assignment":
        return cls((None,) * num_slots)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], num_slots: int) -> "Assignment":
        entries: list[Optional[int]] = [None] * num_slots
        for h, g in edges:
            if entries[h] is not None:
                raise ValueError(f"slot {h} assigned twice")
            entries[h] = int(g)
        return cls(tuple(entries))


@dataclass(frozen=True)
class ScheduleResult:
    assignment: Assignment
    per_node_energy: tuple[float, ...]
    per_node_utility: tuple[float, ...]
    total_utility: float


def validate(
    assignment: Union[Assignment, Iterable[tuple[int, int]]],
    slots: SlotPlan,
    gridmap: Optional[GridMap] = None,
) -> bool:
    """True iff no slot carries two grids and every index is in range.

    Accepts either an Assignment or a raw iterable of (slot, grid) edges so
    malformed edge sets can be checked too.
    """
    edges = assignment.edges if isinstance(assignment, Assignment) else tuple(assignment)
    seen = set()
    for h, g in edges:
        if not 0 <= h < slots.count:
            return False
        if h in seen:
            return False
        seen.add(h)
        if g is None or g < 0:
            return False
        if gridmap is not None and not gridmap.has_cell(g):
            return False
    return True


def node_energies(assignment: Assignment, gridmap: GridMap, slots: SlotPlan) -> np.ndarray:
    """Per-node energy (J) of a slotted schedule: each assigned slot h at
    grid g contributes power[g, n] * dt to every node whose rounded
    deadline lies past the slot start."""
    rounded = np.asarray(slots.rounded_deadlines)
    q = np.zeros(gridmap.power.shape[1])
    for h, g in assignment.edges:
        alive = h * slots.dt < rounded
        q = q + np.where(alive, gridmap.power[gridmap.row(g)] * slots.dt, 0.0)
    return q


def slotted_energy(assignment: Assignment, n: int, gridmap: GridMap, slots: SlotPlan) -> float:
    """Energy (J) node ``n`` receives under the slotted schedule."""
    return float(node_energies(assignment, gridmap, slots)[n])


def _utilities(q: np.ndarray, demands: np.ndarray) -> np.ndarray:
    return np.where(q <= demands, q / demands, 1.0)


def score_assignment(
    assignment: Assignment, scenario: Scenario, gridmap: GridMap, slots: SlotPlan
) -> ScheduleResult:
    """Wrap an assignment with its per-node energies/utilities and total."""
    q = node_energies(assignment, gridmap, slots)
    e = np.asarray(scenario.demands)
    util = _utilities(q, e)
    return ScheduleResult(
        assignment=assignment,
        per_node_energy=tuple(float(v) for v in q),
        per_node_utility=tuple(float(v) for v in util),
        total_utility=float(util.sum()),
    )


def marginal_gain(
    assignment: Assignment,
    h: int,
    k: int,
    scenario: Scenario,
    gridmap: GridMap,
    slots: SlotPlan,
) -> float:
    """Utility gained by additionally stopping at grid ``k`` in free slot
    ``h``. Never negative: saturated nodes and nodes past their rounded
    deadline contribute nothing."""
    if assignment.entries[h] is not None:
        raise ValueError(f"slot {h} is already assigned")
    rounded = np.asarray(slots.rounded_deadlines)
    e = np.asarray(scenario.demands)
    q = node_energies(assignment, gridmap, slots)
    alive = h * slots.dt < rounded
    add = gridmap.power[gridmap.row(k)] * slots.dt * alive
    return float(((np.minimum(q + add, e) - np.minimum(q, e)) / e).sum())


def greedy_schedule(scenario: Scenario, gridmap: GridMap, slots: SlotPlan) -> ScheduleResult:
    """Fill slots in time order, each time stopping at the grid with the
    largest marginal utility (ties: lowest grid id).

    Stops outright when the best gain hits zero: the deadline indicators
    only shrink with later slots, so no later slot can do better. Runs in
    O(slots * grids * nodes).
    """
    m = slots.count
    p = gridmap.power
    dt = slots.dt
    rounded = np.asarray(slots.rounded_deadlines)
    e = np.asarray(scenario.demands)
    # Cells that can never charge anything never have positive gain.
    cand = np.flatnonzero(p.any(axis=1))
    entries: list[Optional[int]] = [None] * m
    q = np.zeros(p.shape[1])
    if cand.size:
        add_all = p[cand] * dt
        for h in range(m):
            alive = h * dt < rounded
            gains = ((np.minimum(q + add_all * alive, e) - np.minimum(q, e)) / e).sum(axis=1)
            best = int(np.argmax(gains))
            if gains[best] <= 0.0:
                break
            row = int(cand[best])
            entries[h] = gridmap.cells[row].id
            q = q + np.where(alive, p[row] * dt, 0.0)
    assignment = Assignment(tuple(entries))
    return score_assignment(assignment, scenario, gridmap, slots)
