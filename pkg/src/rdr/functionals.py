"""Inradius, circumradius and diameter of polytopes.

The circumradius uses Welzl's move-to-front scheme for the minimum enclosing
ball.  Inradii are Chebyshev-center linear programs over the facet list.
"""
from __future__ import annotations

import dataclasses
import itertools
import math

import numpy as np

from . import settings
from .errors import DegenerateBody, DimensionMismatch, NoContacts, NumericalFailure
from .geometry import Gauge, HBody, VBody, as_vector, hull_facets
from .lp import LPProblem, LPStatus, solve_lp


@dataclasses.dataclass(frozen=True)
class FunctionalTriple:
    r: float
    D: float
    R: float

    def __post_init__(self):
        for name in ("r", "D", "R"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r, self.D, self.R)


@dataclasses.dataclass(frozen=True)
class ContainmentCertificate:
    contact_points: np.ndarray
    convex_coefficients: np.ndarray
    residual: float

    @property
    def valid(self) -> bool:
        return self.residual <= 1e-8


# -- minimum enclosing ball ------------------------------------------------

def _circumball(support: list[np.ndarray], dim: int) -> tuple[np.ndarray, float]:
    """Smallest ball with all support points on its boundary.

    The centre is restricted to the affine hull of the support.  Affinely
    dependent supports fall back to a least-squares centre.
    """
    if not support:
        return np.zeros(dim), -1.0
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0
    Q = np.array([p - p0 for p in support[1:]])
    G = Q @ Q.T
    rhs = 0.5 * np.einsum("ij,ij->i", Q, Q)
    mu, *_ = np.linalg.lstsq(G, rhs, rcond=None)
    c = p0 + mu @ Q
    radius = max(float(np.linalg.norm(p - c)) for p in support)
    return c, radius


def _mtf(points: np.ndarray, end: int, support: list[np.ndarray], order: list[int], eps: float):
    """Move-to-front recursion; depth is bounded by ``dim + 1``."""
    dim = points.shape[1]
    c, rad = _circumball(support, dim)
    if len(support) == dim + 1:
        return c, rad
    i = 0
    while i < end:
        p = points[order[i]]
        if rad < 0 or np.linalg.norm(p - c) > rad + eps:
            c, rad = _mtf(points, i, support + [p], order, eps)
            order.insert(0, order.pop(i))
        i += 1
    return c, rad


def _brute_force_ball(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest enclosing ball among the circumballs of all small subsets."""
    n, dim = points.shape
    scale = max(1.0, float(np.abs(points).max()))
    best_c, best_r = None, math.inf
    for k in range(1, min(n, dim + 1) + 1):
        idx = np.array(list(itertools.combinations(range(n), k)))
        p0 = points[idx[:, 0]]
        if k == 1:
            centers = p0
        else:
            Q = points[idx[:, 1:]] - p0[:, None, :]
            G = Q @ Q.transpose(0, 2, 1)
            rhs = 0.5 * np.einsum("mij,mij->mi", Q, Q)
            mu = np.einsum("mij,mj->mi", np.linalg.pinv(G), rhs)
            centers = p0 + np.einsum("mi,mij->mj", mu, Q)
        radii = np.linalg.norm(points[idx] - centers[:, None, :], axis=2).max(axis=1)
        reach = np.linalg.norm(points[None, :, :] - centers[:, None, :], axis=2).max(axis=1)
        ok = reach <= radii + 1e-12 * scale
        if ok.any():
            j = int(np.argmin(np.where(ok, radii, np.inf)))
            if radii[j] < best_r:
                best_c, best_r = centers[j], float(radii[j])
    return best_c, best_r


def circumradius(body: VBody, seed: int = 0) -> tuple[float, np.ndarray]:
    """Radius and centre of the minimum enclosing ball of the vertices."""
    pts = body.vertices
    scale = max(1.0, float(np.abs(pts).max()))
    eps = 1e-13 * scale
    order = list(np.random.default_rng(seed).permutation(len(pts)))
    c, rad = _mtf(pts, len(pts), [], order, eps)
    if len(pts) <= 10:
        bc, br = _brute_force_ball(pts)
        if bc is not None and br < rad:
            c, rad = bc, br
    rad = max(rad, float(np.linalg.norm(pts - c, axis=1).max()))
    return rad, c


def diameter(body: VBody) -> tuple[float, tuple[np.ndarray, np.ndarray]]:
    pts = body.vertices
    if len(pts) == 1:
        return 0.0, (pts[0].copy(), pts[0].copy())
    i, j = np.triu_indices(len(pts), k=1)  # lexicographic (i, j) order
    d = np.linalg.norm(pts[i] - pts[j], axis=1)
    k = int(np.argmax(d))
    return float(d[k]), (pts[i[k]].copy(), pts[j[k]].copy())


# -- inradius --------------------------------------------------------------

def _chebyshev_lp(body: HBody, support: np.ndarray) -> tuple[float, np.ndarray]:
    A, b = body.normals, body.offsets
    dim = body.dim
    c = np.zeros(dim + 1)
    c[-1] = 1.0
    A_ub = np.hstack([A, support[:, None]])
    A_ub = np.vstack([A_ub, np.r_[np.zeros(dim), -1.0]])
    b_ub = np.r_[b, 0.0]
    sol = solve_lp(LPProblem(c, A_ub, b_ub))
    if sol.status is LPStatus.UNBOUNDED:
        raise DegenerateBody("half-space body is unbounded")
    if sol.status is LPStatus.INFEASIBLE:
        raise DegenerateBody("half-space body is empty")
    return float(sol.x[-1]), sol.x[:-1]


def inradius_euclidean(body: HBody) -> tuple[float, np.ndarray]:
    """Largest Euclidean ball in ``body``: radius and centre."""
    rho, t = _chebyshev_lp(body, np.ones(len(body)))
    if rho <= 0:
        raise DegenerateBody("body has empty interior")
    slack = body.offsets - body.normals @ t - rho
    if slack.min() < -settings.get().geometric:
        raise NumericalFailure("Chebyshev centre violates a facet")
    return rho, t


def inradius_gauge(body: HBody, gauge: Gauge) -> tuple[float, np.ndarray]:
    """Generalized inradius ``r(K, C)``: the largest ``rho`` with ``t + rho*C`` inside ``K``."""
    if gauge.dim != body.dim:
        raise DimensionMismatch(f"gauge dimension {gauge.dim} != body dimension {body.dim}")
    h = gauge.support(body.normals)
    rho, t = _chebyshev_lp(body, h)
    if rho <= 0:
        raise DegenerateBody("body has empty interior")
    if gauge.kind == "polytope":
        placed = t + rho * gauge.polytope.vertices
        scale = max(1.0, float(np.abs(body.offsets).max()))
        if (placed @ body.normals.T - body.offsets).max() > settings.get().geometric * scale:
            raise NumericalFailure("placed gauge leaves the body")
    return rho, t


def inradius(body: VBody, gauge: Gauge | None = None) -> float:
    """Inradius of a vertex body; zero for lower-dimensional bodies."""
    if not body.full_dimensional:
        return 0.0
    H = hull_facets(body)
    if gauge is None or gauge.kind == "ball":
        return inradius_euclidean(H)[0]
    return inradius_gauge(H, gauge)[0]


def functional_triple(body: VBody) -> FunctionalTriple:
    D, _ = diameter(body)
    R, _ = circumradius(body)
    return FunctionalTriple(inradius(body), D, R)


# -- certificates and closed forms ----------------------------------------

def optimal_containment_certificate(body: VBody, center=None, radius: float | None = None) -> ContainmentCertificate:
    """Certify (or refute) ``body`` being optimally contained in a ball.

    By default the ball is the circumball of ``body``.  Vertices on the
    sphere are the contact points; the residual is the norm of the convex
    combination of contacts closest (in max-norm) to the centre.
    """
    if center is None or radius is None:
        R, c = circumradius(body)
        center = c if center is None else as_vector(center, body.dim)
        radius = R if radius is None else radius
    center = as_vector(center, body.dim)
    if radius <= 0:
        raise DegenerateBody("certificate needs a ball of positive radius")
    unit = (body.vertices - center) / radius
    norms = np.linalg.norm(unit, axis=1)
    contacts = unit[np.abs(norms - 1.0) <= settings.get().contact]
    if contacts.shape[0] == 0:
        raise NoContacts("no vertex lies on the sphere")
    contacts = contacts / np.linalg.norm(contacts, axis=1, keepdims=True)
    k, dim = contacts.shape
    # variables (lambda_1..k, s): minimise s with |sum lambda_i p_i|_inf <= s
    c = np.zeros(k + 1)
    c[-1] = -1.0
    P = contacts.T
    A_ub = np.vstack([np.hstack([P, -np.ones((dim, 1))]), np.hstack([-P, -np.ones((dim, 1))])])
    b_ub = np.zeros(2 * dim)
    A_eq = np.r_[np.ones(k), 0.0][None, :]
    sol = solve_lp(LPProblem(c, A_ub, b_ub, A_eq, [1.0], nonneg=np.ones(k + 1, dtype=bool)))
    if not sol.optimal:
        raise NumericalFailure(f"certificate LP ended with status {sol.status.value}")
    lam = np.maximum(sol.x[:k], 0.0)
    lam = lam / lam.sum()
    residual = float(np.linalg.norm(lam @ contacts))
    return ContainmentCertificate(contacts, lam, residual)


def jung_lower_bound(R: float, n: int = 3) -> float:
    """Smallest diameter a body of circumradius ``R`` in dimension ``n`` can have."""
    if R < 0:
        raise ValueError("circumradius must be nonnegative")
    if n < 1:
        raise ValueError("dimension must be positive")
    return R * math.sqrt(2.0 * (n + 1) / n)


def rounded_functionals(body: VBody, rho: float) -> FunctionalTriple:
    """Functionals of the outer parallel body ``K + rho*B``.

    Each radius grows by ``rho`` and the diameter by ``2*rho``; the sum itself
    is never formed.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    t = functional_triple(body)
    return FunctionalTriple(t.r + rho, t.D + 2 * rho, t.R + rho)
