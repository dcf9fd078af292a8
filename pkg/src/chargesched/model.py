"""Charging physics and demand-side primitives.

All quantities are SI: distances in meters, times in seconds, energies in
joules, powers in watts. Callers working in minutes convert at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

Point = tuple[float, float]


def distance(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class ChargerSpec:
    """Hardware and motion parameters of the mobile charger.

    ``alpha`` (W*m^2) and ``beta`` (m) shape the received-power falloff with
    distance, ``range_d`` (m) is the hard charging cutoff and ``speed_v``
    (m/s) the constant travel speed. ``depot`` is where every tour starts
    and ends.
    """

    alpha: float
    beta: float
    range_d: float
    speed_v: float
    depot: Point = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.range_d <= 0:
            raise ValueError("range_d must be positive")
        if self.speed_v <= 0:
            raise ValueError("speed_v must be positive")


@dataclass(frozen=True)
class SensorNode:
    """One rechargeable node: where it sits, how much energy it asked for
    (``demand``, J) and by when (``deadline``, s)."""

    id: int
    position: Point
    demand: float
    deadline: float

    def __post_init__(self) -> None:
        if self.demand <= 0:
            raise ValueError(f"node {self.id}: demand must be positive")
        if self.deadline <= 0:
            raise ValueError(f"node {self.id}: deadline must be positive")


@dataclass(frozen=True)
class Scenario:
    """A square field of nodes plus the charger that must serve them.

    ``budget_t`` is the scheduling horizon in seconds; it defaults to the
    latest node deadline, past which nothing useful can be earned.
    """

    plane_side: float
    nodes: tuple[SensorNode, ...]
    charger: ChargerSpec
    budget_t: Optional[float] = None

    def __post_init__(self) -> None:
        if self.plane_side <= 0:
            raise ValueError("plane side must be positive")
        if not self.nodes:
            raise ValueError("scenario needs at least one node")
        for n in self.nodes:
            x, y = n.position
            if not (0 <= x <= self.plane_side and 0 <= y <= self.plane_side):
                raise ValueError(f"node {n.id} lies outside the plane")
        if self.budget_t is None:
            object.__setattr__(self, "budget_t", max(n.deadline for n in self.nodes))
        elif self.budget_t <= 0:
            raise ValueError("budget_t must be positive")

    @property
    def demands(self) -> tuple[float, ...]:
        return tuple(n.demand for n in self.nodes)

    @property
    def deadlines(self) -> tuple[float, ...]:
        return tuple(n.deadline for n in self.nodes)


@dataclass(frozen=True)
class StopRecord:
    """A dwell of the charger: where, when it arrives and for how long.

    ``grid_id`` optionally links the stop back to a grid cell.
    """

    location: Point
    arrival: float
    dwell: float
    grid_id: Optional[int] = None

    def __post_init__(self) -> None:
        if self.arrival < 0:
            raise ValueError("arrival must be nonnegative")
        if self.dwell < 0:
            raise ValueError("dwell must be nonnegative")


def power_at_distance(d: float, spec: ChargerSpec) -> float:
    """Received power (W) at charging distance ``d``.

    Follows the inverse-square falloff alpha/(d+beta)^2 with a hard cutoff:
    zero power strictly beyond ``range_d``. The cutoff boundary itself still
    charges (closed interval).
    """
    if d < 0:
        raise ValueError("distance must be nonnegative")
    if d > spec.range_d:
        return 0.0
    return spec.alpha / (d + spec.beta) ** 2


def utility(q: float, demand: float) -> float:
    """Charging utility in [0, 1]: linear in received energy, saturating at
    the demand."""
    if demand <= 0:
        raise ValueError("demand must be positive")
    if q < 0:
        raise ValueError("energy must be nonnegative")
    return q / demand if q <= demand else 1.0


def effective_energy(
    stops: Sequence[StopRecord],
    node: SensorNode,
    spec: ChargerSpec,
    powers: Optional[Sequence[float]] = None,
) -> float:
    """Energy (J) the node receives strictly before its deadline.

    Each stop contributes power * min(deadline - arrival, dwell), and only
    if it arrives strictly before the deadline; anything accrued afterwards
    is worthless. ``stops`` are expected in arrival order. ``powers``
    optionally overrides the per-stop power (W), e.g. with the conservative
    per-cell value; by default the power-law value at the stop's true
    distance is used.
    """
    total = 0.0
    for i, stop in enumerate(stops):
        if stop.arrival >= node.deadline:
            continue
        if powers is None:
            p = power_at_distance(distance(stop.location, node.position), spec)
        else:
            p = powers[i]
        total += p * min(node.deadline - stop.arrival, stop.dwell)
    return total
