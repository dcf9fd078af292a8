"""Tour construction and shortening.

Because per-cell power is constant, a stop's grid only needs to be
*path-covered*: the travel polyline must intersect the cell, and the charger
can dwell at any point of the in-cell portion. That freedom allows two
length-reducing moves on the initial center-to-center tour: dropping a
waypoint whose cell is already covered by the bypass segment (skip), and
sliding a waypoint toward its successor as far as coverage allows
(substitute, found by bisection with granularity ``sigma``). Both moves are
only accepted when they keep every stop cell covered and strictly shorten
the path.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .grid import GridCell, GridMap
from .model import ChargerSpec, Point, Scenario, distance
from .scheduling import Assignment


@dataclass(frozen=True)
class TourStop:
    """One charging stop: which grid it serves, for how long, and where on
    the path the charger parks (``offset`` = arc length from the depot).
    ``anchor`` is the index of the stop's own waypoint, None once skipped."""

    grid_id: int
    dwell: float
    point: Point
    offset: float
    anchor: Optional[int] = None


@dataclass(frozen=True)
class TourPlan:
    """Depot-to-depot polyline plus the ordered stops it serves."""

    waypoints: tuple[Point, ...]
    stops: tuple[TourStop, ...]

    @property
    def length(self) -> float:
        return _polyline_length(self.waypoints)


def _polyline_length(points) -> float:
    return float(sum(distance(points[i], points[i + 1]) for i in range(len(points) - 1)))


def path_length(tour: TourPlan) -> float:
    """Euclidean length (m) of the tour polyline."""
    return _polyline_length(tour.waypoints)


def _seg_box_clip(a: Point, b: Point, bounds) -> Optional[tuple[float, float]]:
    # Slab clipping of closed segment a-b against a closed box; returns the
    # parameter interval inside the box, or None if disjoint.
    x0, y0, x1, y1 = bounds
    t0, t1 = 0.0, 1.0
    for p, d, lo, hi in ((a[0], b[0] - a[0], x0, x1), (a[1], b[1] - a[1], y0, y1)):
        if d == 0.0:
            if p < lo or p > hi:
                return None
        else:
            ta, tb = (lo - p) / d, (hi - p) / d
            if ta > tb:
                ta, tb = tb, ta
            t0, t1 = max(t0, ta), min(t1, tb)
            if t0 > t1:
                return None
    return t0, t1


def path_covers(a: Point, b: Point, cell: GridCell) -> bool:
    """Does the closed segment a-b intersect the closed cell square?"""
    return _seg_box_clip(a, b, cell.bounds) is not None


def _covers_mask(a: Point, b: Point, boxes: np.ndarray) -> np.ndarray:
    # Vectorized slab test of one segment against (M, 4) boxes.
    t0 = np.zeros(len(boxes))
    t1 = np.ones(len(boxes))
    for p, d, lo, hi in (
        (a[0], b[0] - a[0], boxes[:, 0], boxes[:, 2]),
        (a[1], b[1] - a[1], boxes[:, 1], boxes[:, 3]),
    ):
        if d == 0.0:
            ok = (p >= lo) & (p <= hi)
            t0 = np.where(ok, t0, 2.0)
            t1 = np.where(ok, t1, -2.0)
        else:
            ta = (lo - p) / d
            tb = (hi - p) / d
            t0 = np.maximum(t0, np.minimum(ta, tb))
            t1 = np.minimum(t1, np.maximum(ta, tb))
    return t0 <= t1


def initial_path(assignment: Assignment, gridmap: GridMap, depot: Point, dt: float) -> TourPlan:
    """Depot -> stop centers in slot order -> depot.

    Consecutive slots at the same grid merge into one stop dwelling a
    multiple of ``dt``; revisits later in the schedule stay separate stops.
    An empty assignment gives the degenerate {depot, depot} tour.
    """
    runs: list[tuple[int, int]] = []  # (grid id, slot count)
    for _, g in assignment.edges:
        if runs and runs[-1][0] == g:
            runs[-1] = (g, runs[-1][1] + 1)
        else:
            runs.append((g, 1))
    waypoints: list[Point] = [depot]
    stops: list[TourStop] = []
    arc = 0.0
    for g, count in runs:
        center = gridmap.cell(g).representative
        arc += distance(waypoints[-1], center)
        waypoints.append(center)
        stops.append(TourStop(g, count * dt, center, arc, anchor=len(waypoints) - 1))
    waypoints.append(depot)
    return TourPlan(tuple(waypoints), tuple(stops))


def _arc_table(waypoints) -> list[float]:
    arcs = [0.0]
    for i in range(len(waypoints) - 1):
        arcs.append(arcs[-1] + distance(waypoints[i], waypoints[i + 1]))
    return arcs


def _point_at_arc(waypoints, arcs, s: float) -> Point:
    i = min(bisect.bisect_right(arcs, s), len(arcs) - 1) - 1
    i = max(i, 0)
    seg = arcs[i + 1] - arcs[i]
    t = 0.0 if seg == 0.0 else (s - arcs[i]) / seg
    ax, ay = waypoints[i]
    bx, by = waypoints[i + 1]
    return (ax + t * (bx - ax), ay + t * (by - ay))


def _chord_intervals(waypoints, arcs, bounds) -> list[tuple[float, float]]:
    # Maximal arc intervals along the polyline lying inside the box,
    # merging runs that continue across the shared vertex.
    out: list[tuple[float, float]] = []
    cur: Optional[tuple[float, float]] = None
    tiny = 1e-9 * (1.0 + arcs[-1])
    for i in range(len(waypoints) - 1):
        clip = _seg_box_clip(waypoints[i], waypoints[i + 1], bounds)
        if clip is None:
            if cur is not None:
                out.append(cur)
                cur = None
            continue
        t0, t1 = clip
        seg = arcs[i + 1] - arcs[i]
        s0, s1 = arcs[i] + t0 * seg, arcs[i] + t1 * seg
        if cur is not None and s0 - cur[1] <= tiny:
            cur = (cur[0], max(cur[1], s1))
        else:
            if cur is not None:
                out.append(cur)
            cur = (s0, s1)
    if cur is not None:
        out.append(cur)
    return out


def _rebuild_stops(waypoints, stops, gridmap: GridMap, anchor_index) -> tuple[TourStop, ...]:
    # Park each stop at the arc midpoint of its cell's chord, scanning
    # forward so dwell points keep the visit order.
    arcs = _arc_table(waypoints)
    rebuilt = []
    prog = 0.0
    for k, stop in enumerate(stops):
        bounds = gridmap.cell(stop.grid_id).bounds
        intervals = _chord_intervals(waypoints, arcs, bounds)
        pick = None
        for s0, s1 in intervals:
            if s1 >= prog:
                pick = (max(s0, prog), s1)
                break
        if pick is None and intervals:
            pick = intervals[0]  # coverage exists but only earlier on the path
        if pick is None:
            raise RuntimeError(f"stop grid {stop.grid_id} lost from the path")
        mid = 0.5 * (pick[0] + pick[1])
        rebuilt.append(
            TourStop(stop.grid_id, stop.dwell, _point_at_arc(waypoints, arcs, mid), mid, anchor_index[k])
        )
        prog = mid
    return tuple(rebuilt)


def skip_substitute(
    tour: TourPlan, gridmap: GridMap, sigma: float, trace: Optional[list] = None
) -> TourPlan:
    """Shorten the tour by skipping or sliding interior waypoints.

    For each stop that still owns a waypoint, in visit order: if every stop
    cell relying on its two incident segments stays covered by the direct
    bypass, the waypoint is dropped; otherwise the waypoint slides toward
    its successor as far as bisection (granularity ``sigma``) can push it
    while its own cell remains covered by the incoming segment and no other
    relying cell is lost. Moves are accepted only if strictly shorter.
    Passes repeat until a whole pass changes nothing (at most one pass per
    stop). Dwell points are then re-parked at chord midpoints.

    ``trace``, when given, collects one dict per accepted operation with
    before/after lengths and the new polyline (test instrumentation).
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    stops = tour.stops
    if not stops:
        return TourPlan(tour.waypoints, tour.stops)
    depot_in, depot_out = tour.waypoints[0], tour.waypoints[-1]
    pts: list[Optional[Point]] = [
        None if s.anchor is None else tour.waypoints[s.anchor] for s in stops
    ]
    if sum(p is not None for p in pts) + 2 != len(tour.waypoints):
        raise ValueError("tour has waypoints no stop anchors; shorten before truncating")
    boxes = np.array([gridmap.cell(s.grid_id).bounds for s in stops])

    def polyline(points) -> list[Point]:
        return [depot_in] + [p for p in points if p is not None] + [depot_out]

    def neighbors(k: int) -> tuple[Point, Point]:
        prev_pt = depot_in
        for j in range(k - 1, -1, -1):
            if pts[j] is not None:
                prev_pt = pts[j]
                break
        next_pt = depot_out
        for j in range(k + 1, len(pts)):
            if pts[j] is not None:
                next_pt = pts[j]
                break
        return prev_pt, next_pt

    def record(kind: str, k: int, before: float) -> None:
        if trace is not None:
            trace.append(
                {
                    "kind": kind,
                    "stop": k,
                    "length_before": before,
                    "length_after": _polyline_length(polyline(pts)),
                    "waypoints": tuple(polyline(pts)),
                }
            )

    for _ in range(len(stops)):
        changed = False
        for k in range(len(stops)):
            p = pts[k]
            if p is None:
                continue
            prev_pt, next_pt = neighbors(k)
            needed = _covers_mask(prev_pt, p, boxes) | _covers_mask(p, next_pt, boxes)
            old_len = distance(prev_pt, p) + distance(p, next_pt)

            bypass = _covers_mask(prev_pt, next_pt, boxes)
            if bool(np.all(bypass[needed])) and distance(prev_pt, next_pt) < old_len:
                before = _polyline_length(polyline(pts)) if trace is not None else 0.0
                pts[k] = None
                changed = True
                record("skip", k, before)
                continue

            seg_len = distance(p, next_pt)
            if seg_len <= sigma:
                continue
            own_needed = bool(needed[k])

            def covered_at(t: float) -> bool:
                q = (p[0] + t * (next_pt[0] - p[0]), p[1] + t * (next_pt[1] - p[1]))
                first = _covers_mask(prev_pt, q, boxes)
                if own_needed and not first[k]:
                    return False
                second = _covers_mask(q, next_pt, boxes)
                return bool(np.all((first | second)[needed]))

            if not covered_at(0.0):
                continue
            lo, hi = 0.0, 1.0
            while (hi - lo) * seg_len > sigma:
                mid = 0.5 * (lo + hi)
                if covered_at(mid):
                    lo = mid
                else:
                    hi = mid
            if lo * seg_len <= sigma:
                continue  # below granularity; treat as converged
            q = (p[0] + lo * (next_pt[0] - p[0]), p[1] + lo * (next_pt[1] - p[1]))
            new_len = distance(prev_pt, q) + distance(q, next_pt)
            if not new_len < old_len:
                continue
            before = _polyline_length(polyline(pts)) if trace is not None else 0.0
            pts[k] = q
            changed = True
            record("substitute", k, before)
        if not changed:
            break

    waypoints = tuple(polyline(pts))
    anchor_index: list[Optional[int]] = []
    idx = 1
    for p in pts:
        if p is None:
            anchor_index.append(None)
        else:
            anchor_index.append(idx)
            idx += 1
    return TourPlan(waypoints, _rebuild_stops(waypoints, stops, gridmap, anchor_index))


def stop_start_times(tour: TourPlan, speed_v: float, travel_only: bool = False) -> list[float]:
    """When each stop's dwell begins: travel along the path at ``speed_v``
    plus all earlier dwells (``travel_only`` drops the dwell part)."""
    starts = []
    spent_dwelling = 0.0
    for s in tour.stops:
        starts.append(s.offset / speed_v + (0.0 if travel_only else spent_dwelling))
        spent_dwelling += s.dwell
    return starts


def truncate_to_budget(
    tour: TourPlan, budget_t: float, spec: ChargerSpec, travel_only: bool = False
) -> TourPlan:
    """Keep the prefix of stops whose dwell starts strictly before the
    budget and head straight back to the depot from the last kept dwell
    point. A tour that already fits is returned unchanged.

    By default elapsed time counts both travel and dwell; ``travel_only``
    counts travel legs alone (useful when dwells are negligible).
    """
    starts = stop_start_times(tour, spec.speed_v, travel_only)
    keep = 0
    for t in starts:
        if t < budget_t:
            keep += 1
        else:
            break
    if keep == len(tour.stops):
        return tour
    depot = tour.waypoints[0]
    if keep == 0:
        return TourPlan((depot, depot), ())
    cut = tour.stops[keep - 1].offset
    arcs = _arc_table(tour.waypoints)
    kept_waypoints = [wp for wp, a in zip(tour.waypoints, arcs) if a < cut]
    cut_point = _point_at_arc(tour.waypoints, arcs, cut)
    kept_stops = tuple(replace(s, anchor=None) for s in tour.stops[:keep])
    return TourPlan((*kept_waypoints, cut_point, tour.waypoints[-1]), kept_stops)


def evaluate_plan(
    tour: TourPlan, scenario: Scenario, gridmap: GridMap
) -> tuple[tuple[float, ...], float]:
    """Travel-aware score of a (budget-truncated) tour.

    Stop arrivals come from real path travel plus earlier dwells; each stop
    charges every node at the conservative per-cell power until the node's
    true deadline. Returns (per-node utility, total).
    """
    deadlines = np.asarray(scenario.deadlines)
    demands = np.asarray(scenario.demands)
    q = np.zeros(len(scenario.nodes))
    for s, r in zip(tour.stops, stop_start_times(tour, scenario.charger.speed_v)):
        effective = np.where(r < deadlines, np.minimum(deadlines - r, s.dwell), 0.0)
        q = q + gridmap.power[gridmap.row(s.grid_id)] * effective
    util = np.where(q <= demands, q / demands, 1.0)
    return tuple(float(v) for v in util), float(util.sum())
