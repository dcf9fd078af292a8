"""Shared builders for hand-set scheduling instances."""

import numpy as np

from chargesched import ChargerSpec, GridCell, GridMap, Scenario, SensorNode, SlotPlan


def synthetic(power_rows, dt=30.0, count=4, rounded=None, demands=None):
    """GridMap/SlotPlan/Scenario triple with a hand-set power matrix."""
    power = np.array(power_rows, dtype=float)
    gamma, n = power.shape
    cells = tuple(GridCell(i, (0.0, 0.0, 1.0, 1.0), (0.5, 0.5)) for i in range(gamma))
    gridmap = GridMap(delta=1.0, cells=cells, power=power)
    if rounded is None:
        rounded = tuple(dt * count for _ in range(n))
    if demands is None:
        demands = tuple(100.0 for _ in range(n))
    nodes = tuple(
        SensorNode(i, (0.5, 0.5), demands[i], max(rounded[i], 0.5 * dt) + 0.25 * dt)
        for i in range(n)
    )
    scenario = Scenario(1.0, nodes, ChargerSpec(1.0, 1.0, 1.0, 1.0), budget_t=dt * (count + 0.5))
    slots = SlotPlan(dt=dt, count=count, rounded_deadlines=tuple(float(r) for r in rounded))
    return scenario, gridmap, slots
