"""
The (r/R, D/(2R)) diagram of 3-dimensional convex bodies
========================================================

Sample several body families, check each against the complete system of
inequalities and draw the region with its five boundary arcs.

Usage: ``python demos/diagram_figure.py [out.svg]``
"""

import sys
from collections import Counter

from rdr.diagram import FAMILIES, arcs, boundary_polyline, region_slacks, render_svg, sample_diagram

out = sys.argv[1] if len(sys.argv) > 1 else "diagram.svg"

boundary = boundary_polyline(200)
for arc, pts in arcs(boundary).items():
    print(f"{arc:14s} from ({pts[0].x:.4f}, {pts[0].y:.4f}) to ({pts[-1].x:.4f}, {pts[-1].y:.4f})")

rows = sample_diagram(FAMILIES, 60, seed=1)
print("\nsampled:", dict(Counter(r.family for r in rows)))

# every sampled body must land inside the region
worst = min(min(region_slacks(r).values()) for r in rows)
print(f"smallest slack against any arc: {worst:.2e}")

render_svg(rows, boundary, out)
print("wrote", out)
