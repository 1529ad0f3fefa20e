"""
Inradius, diameter and circumradius of a few polytopes
======================================================

Compute the three functionals for classic bodies and a random hull, then
certify that the regular tetrahedron sits optimally in its circumball.
"""

import numpy as np

from rdr import VBody, functional_triple, inradius, optimal_containment_certificate
from rdr.geometry import Gauge, ball_points, cube_vertices, simplex_vertices_regular

bodies = {
    "regular tetrahedron": VBody(simplex_vertices_regular()),
    "cube": VBody(cube_vertices()),
    "octahedron": VBody(np.vstack([np.eye(3), -np.eye(3)])),
    "random hull (10 points)": VBody(ball_points(np.random.default_rng(0), 10)),
}

print(f"{'body':26s} {'r':>10s} {'D':>10s} {'R':>10s}")
for name, body in bodies.items():
    t = functional_triple(body)
    print(f"{name:26s} {t.r:10.6f} {t.D:10.6f} {t.R:10.6f}")

###############################################################################
# The regular tetrahedron touches its circumsphere at all four vertices and
# the origin is their barycentre, which is what the certificate records.

cert = optimal_containment_certificate(bodies["regular tetrahedron"])
print("\ncontact points:", len(cert.contact_points))
print("convex coefficients:", np.round(cert.convex_coefficients, 6))
print("residual:", cert.residual, "valid:", cert.valid)

###############################################################################
# Replacing the ball by another gauge: the cube contains the octahedron with
# factor exactly 1.

octa = Gauge.from_vertices(bodies["octahedron"].vertices)
print("\nr(cube, octahedron) =", inradius(bodies["cube"], octa))
