"""Route shortening in pictures.

A tour only has to *touch* each stop's cell, so waypoints can be skipped
when a straight bypass still clips their cell, or slid toward the next stop
as far as coverage allows. This script shortens a random tour and plots the
before/after polylines (saved to route_shortening.png).
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from chargesched import Assignment, GridMap, initial_path, partition, skip_substitute

rng = np.random.default_rng(6)
side, delta = 30.0, 2.5
cells = tuple(partition(side, delta))
gridmap = GridMap(delta, cells, np.zeros((len(cells), 1)))

ids = []
for g in rng.integers(0, len(cells), size=9):
    if not ids or ids[-1] != int(g):
        ids.append(int(g))
assignment = Assignment.from_edges(list(enumerate(ids)), len(ids))

before = initial_path(assignment, gridmap, (0.0, 0.0), dt=30.0)
after = skip_substitute(before, gridmap, sigma=delta / 100.0)
print(f"stops: {len(before.stops)}")
print(f"center-to-center tour: {before.length:7.2f} m")
print(f"after skip/substitute: {after.length:7.2f} m  ({100 * (1 - after.length / before.length):.1f}% shorter)")

fig, ax = plt.subplots(figsize=(7, 7))
for stop in before.stops:
    x0, y0, x1, y1 = gridmap.cell(stop.grid_id).bounds
    ax.add_patch(plt.Rectangle((x0, y0), x1 - x0, y1 - y0, fc="0.92", ec="0.6"))
bx, by = zip(*before.waypoints)
ax.plot(bx, by, "o--", color="tab:red", label=f"initial ({before.length:.0f} m)")
axx, axy = zip(*after.waypoints)
ax.plot(axx, axy, "s-", color="tab:blue", label=f"shortened ({after.length:.0f} m)")
px, py = zip(*[s.point for s in after.stops])
ax.plot(px, py, "k.", ms=8, label="dwell points")
ax.set_aspect("equal")
ax.set_xlim(-1, side + 1)
ax.set_ylim(-1, side + 1)
ax.legend()
ax.set_title("skip/substitute tour shortening")
fig.savefig("route_shortening.png", dpi=120, bbox_inches="tight")
print("wrote route_shortening.png")
