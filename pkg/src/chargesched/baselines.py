"""Comparison schedulers: earliest-deadline-first and uniform random."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .grid import GridMap, SlotPlan
from .model import Scenario
from .routing import TourPlan, initial_path
from .scheduling import Assignment, ScheduleResult, score_assignment


def edf_schedule(
    scenario: Scenario, gridmap: GridMap, slots: SlotPlan
) -> tuple[ScheduleResult, TourPlan]:
    """Serve one node at a time in deadline order.

    The charger parks at the grid nearest the current node (by conservative
    distance, ties to the lowest id) for consecutive slots until the node's
    demand is met or its rounded deadline passes; nodes whose rounded
    deadline precedes the next free slot are skipped outright.

    This baseline models the legacy one-node-at-a-time charging mode, so
    its score credits each slot's energy to the targeted node only; it
    never banks the multi-node side effects the greedy scheme exploits.
    """
    m = slots.count
    dt = slots.dt
    rounded = np.asarray(slots.rounded_deadlines)
    demands = np.asarray(scenario.demands)
    order = sorted(range(len(scenario.nodes)), key=lambda i: (scenario.nodes[i].deadline, i))
    entries: list[Optional[int]] = [None] * m
    q = np.zeros(len(scenario.nodes))
    cursor = 0
    for n in order:
        if cursor >= m:
            break
        gid = gridmap.cells[int(np.argmin(gridmap.conservative_distances(scenario.nodes[n].position)))].id
        p = float(gridmap.power[gridmap.row(gid), n])
        if p <= 0.0:
            continue  # out of range even from its nearest grid
        while cursor < m and cursor * dt < rounded[n] and q[n] < demands[n]:
            entries[cursor] = gid
            q[n] += p * dt
            cursor += 1
    assignment = Assignment(tuple(entries))
    util = np.where(q <= demands, q / demands, 1.0)
    result = ScheduleResult(
        assignment=assignment,
        per_node_energy=tuple(float(v) for v in q),
        per_node_utility=tuple(float(v) for v in util),
        total_utility=float(util.sum()),
    )
    tour = initial_path(assignment, gridmap, scenario.charger.depot, dt)
    return result, tour


def random_schedule(
    scenario: Scenario, gridmap: GridMap, slots: SlotPlan, seed: int
) -> tuple[ScheduleResult, TourPlan]:
    """Pick a uniform random grid for every slot, reproducibly from the
    seed. Draws from the full (unpruned) cell set of the given map."""
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, gridmap.gamma, size=slots.count)
    entries = tuple(gridmap.cells[int(i)].id for i in picks)
    result = score_assignment(Assignment(entries), scenario, gridmap, slots)
    tour = initial_path(result.assignment, gridmap, scenario.charger.depot, slots.dt)
    return result, tour
