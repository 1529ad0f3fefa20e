import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog, minimize
from scipy.spatial import ConvexHull

from rdr.errors import DegenerateBody, DimensionMismatch, NoContacts
from rdr.functionals import (
    FunctionalTriple,
    circumradius,
    diameter,
    functional_triple,
    inradius,
    inradius_euclidean,
    inradius_gauge,
    jung_lower_bound,
    optimal_containment_certificate,
    rounded_functionals,
)
from rdr.geometry import Gauge, HBody, VBody, ball_points, hull_facets, sphere_points


def _meb_slsqp(pts):
    """Minimum enclosing ball via a generic constrained optimizer."""
    c0 = pts.mean(axis=0)
    t0 = np.max(np.sum((pts - c0) ** 2, axis=1))
    cons = {"type": "ineq", "fun": lambda z: z[-1] - np.sum((pts - z[:-1]) ** 2, axis=1)}
    res = minimize(lambda z: z[-1], np.r_[c0, t0], constraints=[cons], method="SLSQP",
                   options={"ftol": 1e-14, "maxiter": 500})
    return math.sqrt(res.x[-1]), res.x[:-1]


def _chebyshev_scipy(pts):
    eq = ConvexHull(pts).equations  # a.x + c <= 0 with unit a
    A = np.hstack([eq[:, :3], np.ones((len(eq), 1))])
    res = linprog([0, 0, 0, -1], A_ub=A, b_ub=-eq[:, 3], bounds=[(None, None)] * 3 + [(0, None)], method="highs")
    return -res.fun


def test_circumradius_segment():
    R, c = circumradius(VBody([[-1, 0, 0], [1, 0, 0]]))
    assert R == pytest.approx(1.0)
    np.testing.assert_allclose(c, 0, atol=1e-15)


def test_circumradius_point():
    R, c = circumradius(VBody([[0.3, -2, 5]]))
    assert R == 0.0
    np.testing.assert_array_equal(c, [0.3, -2, 5])


def test_circumradius_tetra(tetra):
    R, c = circumradius(tetra)
    assert R == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(c, 0, atol=1e-12)


def test_circumradius_obtuse_triangle_uses_long_edge():
    R, c = circumradius(VBody([[-1, 0, 0], [1, 0, 0], [0, 0.2, 0]]))
    assert R == pytest.approx(1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 25))
def test_circumradius_against_slsqp(seed, n):
    pts = ball_points(np.random.default_rng(seed), n)
    R, c = circumradius(VBody(pts))
    R_ref, _ = _meb_slsqp(pts)
    assert np.all(np.linalg.norm(pts - c, axis=1) <= R + 1e-12)
    assert R == pytest.approx(R_ref, abs=1e-6)
    assert R <= R_ref + 1e-9


def test_circumradius_seed_invariant():
    pts = ball_points(np.random.default_rng(5), 20)
    values = [circumradius(VBody(pts), seed=s)[0] for s in range(5)]
    assert max(values) - min(values) < 1e-12


def test_diameter_examples(tetra):
    assert diameter(VBody([[1.0, 2, 3]]))[0] == 0.0
    assert diameter(VBody([[-1, 0, 0], [1, 0, 0]]))[0] == 2.0
    assert diameter(tetra)[0] == pytest.approx(np.linalg.norm([0, 2, 2]) / math.sqrt(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 20))
def test_diameter_pairwise_oracle(seed, n):
    pts = ball_points(np.random.default_rng(seed), n)
    D, (p, q) = diameter(VBody(pts))
    ref = max(np.linalg.norm(a - b) for a, b in itertools.combinations(pts, 2))
    assert D == pytest.approx(ref, rel=1e-15)
    assert np.linalg.norm(p - q) == pytest.approx(D, rel=1e-15)


def test_inradius_cube(cube):
    r, t = inradius_euclidean(hull_facets(cube))
    assert r == pytest.approx(1.0)
    np.testing.assert_allclose(t, 0, atol=1e-12)


def test_inradius_tetra(tetra):
    r, t = inradius_euclidean(hull_facets(tetra))
    assert r == pytest.approx(1 / 3, abs=1e-12)
    np.testing.assert_allclose(t, 0, atol=1e-12)


def _grid_inradius(pts, steps=60):
    """Largest distance-to-boundary over a grid of candidate centres."""
    eq = ConvexHull(pts).equations
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    axes = [np.linspace(lo[i], hi[i], steps) for i in range(3)]
    G = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    dist = -(G @ eq[:, :3].T + eq[:, 3])
    return float(dist.min(axis=1).max())


def test_flat_simplex_inradius():
    pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1 / 3, 1 / 3, 1e-3]])
    r = inradius(VBody(pts))
    assert r < 5e-4
    grid = _grid_inradius(pts)
    assert grid <= r + 1e-12
    assert r - grid < 2e-4


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 14))
def test_inradius_against_scipy(seed, n):
    pts = ball_points(np.random.default_rng(seed), n)
    body = VBody(pts)
    if body.affine_dim < 3:
        return
    assert inradius(body) == pytest.approx(_chebyshev_scipy(pts), abs=1e-9)


def test_inradius_planar_is_zero():
    assert inradius(VBody([[0, 0, 0], [1, 0, 0], [0, 1, 0]])) == 0.0


def test_gauge_self_and_scaling(tetra, cube):
    for K in (tetra, cube):
        g = Gauge.from_vertices(K.vertices)
        rho, t = inradius_gauge(hull_facets(K), g)
        assert rho == pytest.approx(1.0)
        np.testing.assert_allclose(t, 0, atol=1e-12)
        assert inradius_gauge(hull_facets(K.scaled(2.0)), g)[0] == pytest.approx(2.0)


def test_gauge_cube_octahedron(cube, octahedron):
    rho, _ = inradius_gauge(hull_facets(cube), Gauge.from_vertices(octahedron.vertices))
    assert rho == pytest.approx(1.0)


def test_gauge_ball_matches_euclidean(tetra):
    H = hull_facets(tetra)
    assert inradius_gauge(H, Gauge.ball())[0] == pytest.approx(inradius_euclidean(H)[0])


def test_gauge_dimension_mismatch(tetra):
    with pytest.raises(DimensionMismatch):
        inradius_gauge(hull_facets(tetra), Gauge.from_vertices([[0, 0], [1, 0], [0, 1]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gauge_inradius_against_scipy(seed):
    rng = np.random.default_rng(seed)
    K = VBody(ball_points(rng, 8))
    C = VBody(sphere_points(rng, 7))
    if K.affine_dim < 3 or C.affine_dim < 3:
        return
    H = hull_facets(K)
    hc = (H.normals @ C.vertices.T).max(axis=1)
    A = np.hstack([H.normals, hc[:, None]])
    res = linprog([0, 0, 0, -1], A_ub=A, b_ub=H.offsets, bounds=[(None, None)] * 3 + [(0, None)], method="highs")
    assert inradius_gauge(H, Gauge.from_vertices(C.vertices))[0] == pytest.approx(-res.fun, abs=1e-9)


def test_certificate_segment():
    cert = optimal_containment_certificate(VBody([[-1, 0, 0], [1, 0, 0]]))
    assert len(cert.contact_points) == 2
    np.testing.assert_allclose(cert.convex_coefficients, [0.5, 0.5], atol=1e-12)
    assert cert.valid and cert.residual < 1e-12


def test_certificate_tetra(tetra):
    cert = optimal_containment_certificate(tetra)
    assert len(cert.contact_points) == 4
    np.testing.assert_allclose(cert.convex_coefficients, 0.25, atol=1e-9)
    assert cert.valid


def test_certificate_upper_hemisphere_invalid():
    rng = np.random.default_rng(0)
    pts = sphere_points(rng, 4)
    pts[:, 2] = np.abs(pts[:, 2]) + 0.1
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    assert pts[:, 2].min() >= 0.1 / np.sqrt(1.21 + 1) - 1e-12
    cert = optimal_containment_certificate(VBody(pts), center=np.zeros(3), radius=1.0)
    # z = 0.05 separates every contact from the origin, so the residual is at least that far
    assert cert.residual > 0.05
    assert not cert.valid


def test_certificate_no_contacts():
    with pytest.raises(NoContacts):
        optimal_containment_certificate(VBody([[0.1, 0, 0], [0, 0.1, 0]]), center=np.zeros(3), radius=1.0)


def test_jung():
    assert jung_lower_bound(1.0) == pytest.approx(math.sqrt(8 / 3))
    assert jung_lower_bound(0.0) == 0.0
    assert jung_lower_bound(3.0, n=2) == pytest.approx(3 * math.sqrt(3))
    with pytest.raises(ValueError):
        jung_lower_bound(-1.0)


def test_regular_simplex_attains_jung(tetra):
    assert diameter(tetra)[0] == pytest.approx(jung_lower_bound(circumradius(tetra)[0]))


def test_rounded_identity(tetra):
    t = rounded_functionals(tetra, 0.0)
    assert t.as_tuple() == pytest.approx((1 / 3, math.sqrt(8 / 3), 1.0))


def test_rounded_point_is_ball():
    assert rounded_functionals(VBody([[0.0, 0, 0]]), 1.0).as_tuple() == pytest.approx((1, 2, 1))


def test_rounded_against_support_sampling(tetra):
    rho = 1.0
    t = rounded_functionals(tetra, rho)
    assert t.as_tuple() == pytest.approx((4 / 3, math.sqrt(8 / 3) + 2, 2))
    # h_{K + rho B} = h_K + rho, sampled densely plus the facet and edge directions
    u = sphere_points(np.random.default_rng(1), 20000)
    H = hull_facets(tetra)
    edges = [a - b for a, b in itertools.combinations(tetra.vertices, 2)]
    u = np.vstack([u, H.normals, np.array(edges) / np.linalg.norm(edges, axis=1, keepdims=True)])
    h = (u @ tetra.vertices.T).max(axis=1) + rho
    h_neg = (-u @ tetra.vertices.T).max(axis=1) + rho
    assert np.max(h + h_neg) == pytest.approx(t.D, abs=1e-12)  # width maximum = diameter
    assert np.max(h) == pytest.approx(t.R, abs=1e-3)  # centre 0 by symmetry
    assert np.min(h) == pytest.approx(t.r, abs=1e-12)  # insphere centre 0 by symmetry


def test_rounded_negative_rho(tetra):
    with pytest.raises(ValueError):
        rounded_functionals(tetra, -0.1)


def test_functional_triple_tetra(tetra):
    t = functional_triple(tetra)
    assert t.as_tuple() == pytest.approx((1 / 3, math.sqrt(8 / 3), 1.0), abs=1e-12)


def test_triple_rejects_nan():
    with pytest.raises(ValueError):
        FunctionalTriple(math.nan, 1.0, 1.0)


def test_empty_hbody_inradius():
    box = np.vstack([np.eye(3), -np.eye(3)])
    with pytest.raises(DegenerateBody):
        inradius_euclidean(HBody(box, [0.0, 1, 1, -1, 1, 1]))  # x <= 0 and x >= 1
