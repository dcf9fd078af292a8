"""Spatial grid partition and time slotting.

The plane is tiled with square cells of side ``delta``. Per-cell charging
power uses the *longest* distance from a node to the cell, so the value is a
safe constant no matter where inside the cell the charger actually parks:
it never exceeds the true power and never turns an out-of-range relation
into a chargeable one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import ChargerSpec, Point, Scenario, SensorNode, power_at_distance


@dataclass(frozen=True)
class GridCell:
    """One square cell: row-major ``id``, full-square ``bounds``
    (x0, y0, x1, y1) and a ``representative`` travel waypoint (the center of
    the cell clipped to the plane)."""

    id: int
    bounds: tuple[float, float, float, float]
    representative: Point


@dataclass(frozen=True)
class GridMap:
    """The finished partition: cells plus the (cells x nodes) matrix of
    conservative charging powers in watts. Immutable and shareable."""

    delta: float
    cells: tuple[GridCell, ...]
    power: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "_row_by_id", {c.id: i for i, c in enumerate(self.cells)})
        self.power.setflags(write=False)

    @property
    def gamma(self) -> int:
        return len(self.cells)

    def row(self, grid_id: int) -> int:
        """Row index of a grid id in ``power`` (identity unless pruned)."""
        return self._row_by_id[grid_id]

    def cell(self, grid_id: int) -> GridCell:
        return self.cells[self._row_by_id[grid_id]]

    def has_cell(self, grid_id: int) -> bool:
        return grid_id in self._row_by_id

    def conservative_distances(self, p: Point) -> np.ndarray:
        """Longest distance from ``p`` to each cell, as one vector."""
        b = np.array([c.bounds for c in self.cells])
        dx = np.maximum(np.abs(p[0] - b[:, 0]), np.abs(p[0] - b[:, 2]))
        dy = np.maximum(np.abs(p[1] - b[:, 1]), np.abs(p[1] - b[:, 3]))
        return np.hypot(dx, dy)


@dataclass(frozen=True)
class SlotPlan:
    """Uniform time slots of length ``dt`` covering the budget, plus each
    node's deadline rounded down to a slot boundary."""

    dt: float
    count: int
    rounded_deadlines: tuple[float, ...]


def max_side_for_error(lam: float, beta: float) -> float:
    """Largest cell side for which the conservative per-cell power is at
    least (1 - lam) times the true power from any in-cell point.

    The worst case inflates the distance offset from beta to
    beta + sqrt(2)*delta = beta / sqrt(1 - lam), which solving for delta
    gives beta * (1 - sqrt(1 - lam)) / (sqrt(2) * sqrt(1 - lam)).
    """
    if not 0 <= lam < 1:
        raise ValueError("error ratio must lie in [0, 1)")
    root = math.sqrt(1.0 - lam)
    return beta * (1.0 - root) / (math.sqrt(2.0) * root)


def partition(plane_side: float, delta: float) -> list[GridCell]:
    """Tile the square plane with row-major delta-cells.

    Cells sticking out past the plane keep full-square bounds (distances
    stay conservative) but their representative is the clipped-cell center,
    so waypoints never leave the plane.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    n_side = max(1, math.ceil(plane_side / delta))
    cells = []
    for row in range(n_side):
        y0 = row * delta
        for col in range(n_side):
            x0 = col * delta
            rep = (
                (x0 + min(x0 + delta, plane_side)) / 2.0,
                (y0 + min(y0 + delta, plane_side)) / 2.0,
            )
            cells.append(GridCell(row * n_side + col, (x0, y0, x0 + delta, y0 + delta), rep))
    return cells


def conservative_distance(cell: GridCell, p: Point) -> float:
    """Longest distance from ``p`` to any point of the closed cell.

    The farthest point of a square is always a corner; the farthest corner
    is found per axis.
    """
    x0, y0, x1, y1 = cell.bounds
    dx = max(abs(p[0] - x0), abs(p[0] - x1))
    dy = max(abs(p[1] - y0), abs(p[1] - y1))
    return float(np.hypot(dx, dy))


def grid_power(cell: GridCell, node: SensorNode, spec: ChargerSpec) -> float:
    """Conservative charging power (W) from anywhere inside the cell to the
    node: the power-law value at the longest cell-to-node distance."""
    return power_at_distance(conservative_distance(cell, node.position), spec)


def build_gridmap(scenario: Scenario, delta: float, prune: bool = False) -> GridMap:
    """Partition the scenario plane and fill the conservative power matrix.

    ``prune`` drops cells whose power row is all zeros; the cells keep their
    row-major ids. Pruning cannot change what the greedy scheduler picks
    (those cells never have positive marginal gain), it only shrinks the
    candidate set.
    """
    cells = partition(scenario.plane_side, delta)
    b = np.array([c.bounds for c in cells])
    px = np.array([n.position[0] for n in scenario.nodes])
    py = np.array([n.position[1] for n in scenario.nodes])
    dx = np.maximum(np.abs(px - b[:, 0:1]), np.abs(px - b[:, 2:3]))
    dy = np.maximum(np.abs(py - b[:, 1:2]), np.abs(py - b[:, 3:4]))
    cons = np.hypot(dx, dy)
    spec = scenario.charger
    power = np.where(cons <= spec.range_d, spec.alpha / (cons + spec.beta) ** 2, 0.0)
    if prune:
        keep = np.flatnonzero(power.any(axis=1))
        cells = [cells[i] for i in keep]
        power = power[keep]
    return GridMap(delta=float(delta), cells=tuple(cells), power=power)


def slotting(budget_t: float, dt: float, nodes: Sequence[SensorNode]) -> SlotPlan:
    """Cut the budget into floor(budget/dt) uniform slots and round each
    node deadline down to a slot boundary (the rounding error stays below
    one slot)."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    if dt > budget_t:
        raise ValueError("slot longer than the budget leaves nothing schedulable")
    count = int(budget_t // dt)
    rounded = tuple(float(math.floor(n.deadline / dt) * dt) for n in nodes)
    return SlotPlan(dt=float(dt), count=count, rounded_deadlines=rounded)
