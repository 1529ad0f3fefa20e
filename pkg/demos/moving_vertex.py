"""
Moving one vertex of a simplex
==============================

Slide the apex of a simplex along a segment while keeping the opposite
facet fixed.  The inradius, measured against any gauge, never drops below
the smaller of its two endpoint values.
"""

import numpy as np

from rdr.functionals import inradius_gauge
from rdr.geometry import hull_facets
from rdr.simplices import k_alpha
from rdr.verify import random_config, random_polytope_gauge

rng = np.random.default_rng(3)
gauge = random_polytope_gauge(rng)
config = random_config(rng)

alphas = np.linspace(0, 1, 11)
values = [inradius_gauge(hull_facets(k_alpha(config, a)), gauge)[0] for a in alphas]
floor = min(values[0], values[-1])
for a, v in zip(alphas, values):
    bar = "#" * int(60 * v / max(values))
    print(f"alpha={a:4.2f}  r={v:.6f}  {bar}")
print(f"\nendpoint minimum {floor:.6f}, profile minimum {min(values):.6f}")
