"""
Simplices with five diametral edges
===================================

Along the diameter range [sqrt(8/3), sqrt(3)) the simplex inscribed in the
unit sphere with five edges of length D has the smallest inradius.  Its
inradius traces the lower-left boundary curve of the diagram.
"""

import math

import numpy as np

from rdr import inradius, isosceles_simplex, new_inequality_rhs, short_edge_for_five_diametral

print(f"{'D':>9s} {'short edge':>11s} {'r (LP)':>12s} {'bound':>12s} {'gap':>9s}")
for D in np.linspace(math.sqrt(8 / 3), math.sqrt(3) - 1e-3, 9):
    S = isosceles_simplex(D)
    r = inradius(S)
    bound = new_inequality_rhs(D, 1.0)
    print(f"{D:9.6f} {short_edge_for_five_diametral(D):11.6f} {r:12.9f} {bound:12.9f} {r - bound:9.1e}")

###############################################################################
# At the left end the short edge equals D and the simplex is regular; as D
# approaches sqrt(3) the short edge shrinks to zero and the simplex flattens
# into an equilateral triangle on a great circle.
