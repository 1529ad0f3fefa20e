"""Simplex families on the sphere and the closed forms attached to them.

Conventions: the circumsphere is the unit sphere unless an explicit ``R``
is passed, the diameter edge ``[p3, p4]`` lies in the plane ``x3 = 0``, and
``d`` abbreviates ``D**2`` in the scalar functions ``appendix_*``.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import DegenerateBody, DomainError
from .geometry import VBody, as_points, as_vector
from .lp import LPProblem, solve_lp

SQRT_8_3 = math.sqrt(8.0 / 3.0)
SQRT_3 = math.sqrt(3.0)
_EDGE_TOL = 1e-10


def _check_diameter(D: float, *, closed_top: bool) -> None:
    hi_ok = D <= SQRT_3 + 1e-15 if closed_top else D < SQRT_3
    if not (D >= SQRT_8_3 - 1e-15 and hi_ok):
        top = "]" if closed_top else ")"
        raise DomainError(f"D = {D!r} outside [sqrt(8/3), sqrt(3){top}")


def base_pair(D: float) -> tuple[np.ndarray, np.ndarray]:
    """The diameter-attaining vertices ``p3, p4`` on the unit sphere."""
    _check_diameter(D, closed_top=False)
    d = D * D
    p3 = np.array([-math.sqrt(d - d * d / 4.0), d / 2.0 - 1.0, 0.0])
    p4 = np.array([0.0, -1.0, 0.0])
    return p3, p4


def star_points(D: float) -> tuple[np.ndarray, np.ndarray]:
    """The two sphere points at distance ``D`` from both ``p3`` and ``p4``.

    The first has nonnegative third coordinate; they coincide at ``D = sqrt(3)``.
    """
    _check_diameter(D, closed_top=True)
    d = D * D
    x1 = (D ** 3 - 2 * D) / (2 * math.sqrt(4 - d))
    x2 = d / 2 - 1
    x3 = math.sqrt(max(1 - x1 * x1 - x2 * x2, 0.0))
    return np.array([x1, x2, x3]), np.array([x1, x2, -x3])


def sphere_circle_intersections(p, q, D: float) -> tuple[np.ndarray, np.ndarray]:
    """Points of the unit sphere at distance ``D`` from both ``p`` and ``q``.

    Both ``p`` and ``q`` must lie on the sphere.  On the sphere,
    ``|x - p| = D`` is the plane ``p.x = 1 - D**2/2``.  Returns the two
    intersection points ordered by descending third coordinate.
    """
    p, q = as_vector(p, 3), as_vector(q, 3)
    level = 1.0 - D * D / 2.0
    N = np.array([p, q])
    x0, *_ = np.linalg.lstsq(N, np.array([level, level]), rcond=None)  # minimum-norm point
    u = np.cross(p, q)
    nu = np.linalg.norm(u)
    if nu < 1e-14:
        raise DomainError("the two centres are parallel")
    u /= nu
    s2 = 1.0 - float(x0 @ x0)
    if s2 < -1e-12:
        raise DomainError("circles do not meet")
    s = math.sqrt(max(s2, 0.0))
    a, b = x0 + s * u, x0 - s * u
    return (a, b) if a[2] >= b[2] else (b, a)


@dataclasses.dataclass(frozen=True)
class MovingVertexConfig:
    """Two apex candidates ``p0, p1`` over a shared facet."""

    p0: np.ndarray
    p1: np.ndarray
    facet: np.ndarray

    def __post_init__(self):
        F = as_points(self.facet)
        n = F.shape[1]
        if F.shape[0] != n:
            raise ValueError(f"facet needs {n} points in dimension {n}")
        object.__setattr__(self, "facet", F)
        object.__setattr__(self, "p0", as_vector(self.p0, n))
        object.__setattr__(self, "p1", as_vector(self.p1, n))
        normal, offset = self.facet_plane()
        h0, h1 = normal @ self.p0 - offset, normal @ self.p1 - offset
        if abs(h0) <= 1e-9 or abs(h1) <= 1e-9 or h0 * h1 < 0:
            raise DegenerateBody("p0 and p1 must lie strictly on the same side of the facet hyperplane")

    @property
    def dim(self) -> int:
        return self.facet.shape[1]

    def facet_plane(self) -> tuple[np.ndarray, float]:
        F = self.facet
        diffs = F[1:] - F[0]
        if diffs.shape[0]:
            _, s, vh = np.linalg.svd(diffs)
            if s[-1] <= 1e-9:
                raise DegenerateBody("facet points are affinely dependent")
            normal = vh[-1]
        else:
            normal = np.ones(1)
        return normal, float(normal @ F[0])

    def heights(self) -> tuple[float, float]:
        """Signed distances of ``p0`` and ``p1`` from the facet hyperplane."""
        normal, offset = self.facet_plane()
        return float(normal @ self.p0 - offset), float(normal @ self.p1 - offset)


def k_alpha(config: MovingVertexConfig, alpha: float) -> VBody:
    """Simplex on the facet with apex ``(1 - alpha)*p0 + alpha*p1``."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError("alpha must lie in [0, 1]")
    apex = (1 - alpha) * config.p0 + alpha * config.p1
    body = VBody(np.vstack([apex, config.facet]))
    if not body.full_dimensional:
        raise DegenerateBody("moving vertex lies on the facet hyperplane")
    return body


@dataclasses.dataclass(frozen=True)
class SpecialSimplexParams:
    """Simplex on a sphere of radius ``R`` with four edges of the diameter
    length and two opposite edges ``a <= b``."""

    a: float
    b: float
    R: float = 1.0

    def __post_init__(self):
        a, b, R = self.a, self.b, self.R
        if not (R > 0 and 0 < a <= b + 1e-15 and b <= 2 * R):
            raise DomainError(f"need 0 < a <= b <= 2R, got a={a!r}, b={b!r}, R={R!r}")
        if b > self.D * (1 + 1e-12):
            raise DomainError(f"b = {b!r} exceeds the derived diameter {self.D!r}")

    @property
    def D(self) -> float:
        R2 = self.R * self.R
        return math.sqrt(2 * R2 + 2 * math.sqrt(R2 - self.a ** 2 / 4) * math.sqrt(R2 - self.b ** 2 / 4))


def special_simplex(params: SpecialSimplexParams) -> VBody:
    a, b, R = params.a, params.b, params.R
    ha = math.sqrt(R * R - a * a / 4)
    hb = math.sqrt(R * R - b * b / 4)
    return VBody(np.array([
        [0.0, a / 2, ha],
        [0.0, -a / 2, ha],
        [b / 2, 0.0, -hb],
        [-b / 2, 0.0, -hb],
    ]))


def short_edge_for_five_diametral(D: float, R: float = 1.0) -> float:
    """Length of the single short edge when the other five equal ``D``."""
    if R <= 0:
        raise DomainError("R must be positive")
    _check_diameter(D / R, closed_top=False)
    d = (D / R) ** 2
    quarter = 1 - ((d - 2) ** 2 / 4) / (1 - d / 4)
    return 2 * R * math.sqrt(max(quarter, 0.0))


def isosceles_simplex(D: float, R: float = 1.0) -> VBody:
    """Simplex inscribed in the sphere of radius ``R`` with five edges of length ``D``."""
    a = short_edge_for_five_diametral(D, R)
    return special_simplex(SpecialSimplexParams(min(a, D), D, R))


def closed_form_inradius(a: float, b: float, R: float = 1.0) -> float:
    params = SpecialSimplexParams(a, b, R)
    D = params.D
    ha = math.sqrt(R * R - a * a / 4)
    hb = math.sqrt(R * R - b * b / 4)
    return (ha + hb) * a * b / (2 * a * math.sqrt(D * D - a * a / 4) + 2 * b * math.sqrt(D * D - b * b / 4))


def isosceles_inradius(D: float, R: float = 1.0) -> float:
    """Inradius of the five-diametral-edge simplex; zero at ``D = sqrt(3) R``."""
    if R <= 0:
        raise DomainError("R must be positive")
    _check_diameter(D / R, closed_top=True)
    d = (D / R) ** 2
    root = math.sqrt(max((SQRT_3 - D / R) * (SQRT_3 + D / R), 0.0))  # factored so D = sqrt(3) R gives 0
    return R * d * root / (4 * root - SQRT_3 * (d - 4))


def _check_appendix(x: float, d: float, *, open_left: bool) -> None:
    if not (8 / 3 - 1e-15 <= d < 3):
        raise DomainError(f"d = {d!r} outside [8/3, 3)")
    lo, hi = (4 - d) / 2, d / 4
    left_ok = x > lo if open_left else x >= lo - 1e-15
    if not (left_ok and x <= hi + 1e-15):
        raise DomainError(f"x = {x!r} outside the interval for d = {d!r}")


def appendix_f(x: float, d: float) -> float:
    """Inradius of the four-diametral-edge simplex as a function of ``x = b**2/4``."""
    _check_appendix(x, d, open_left=False)
    first = math.sqrt(1 / x) * math.sqrt(x * (1 - d) + d * d / 4)
    second = (1 - x) * math.sqrt(4 * (d - x) / (4 * (d - x) - d * d))
    return (d / 2 - x) / (first + second)


def _g(x: float, d: float) -> float:
    return (-math.sqrt(1 / x) * math.sqrt(x * (1 - d) + d * d / 4)
            - (d / 2 - x) * (-d * d) / (4 * x * math.sqrt(x) * math.sqrt(4 * x + d * d - 4 * d * x)))


def _h(x: float, d: float) -> float:
    w = 4 * (d - x) - d * d
    root = math.sqrt(4 * (d - x) / w)
    return (-(1 - x) * root
            - (d / 2 - x) * (-root + (1 - x) * d * d / (math.sqrt(d - x) * math.sqrt(w) * w)))


def appendix_q(x: float, d: float) -> float:
    return ((-6 * d * d + 16 * d - 32) * x * x + (11 * d ** 3 - 50 * d * d + 48 * d) * x
            - 4 * d ** 4 + 17 * d ** 3 - 16 * d * d)


def appendix_g_h_q(x: float, d: float) -> tuple[float, float, float]:
    """The two parts ``g, h`` of the numerator of ``f'`` and the quadratic ``q``.

    The left endpoint ``x = (4 - d)/2`` is accepted so that ``g + h`` can be
    evaluated there.
    """
    _check_appendix(x, d, open_left=False)
    return _g(x, d), _h(x, d), appendix_q(x, d)


def appendix_f_derivative(x: float, d: float) -> float:
    """``f'(x)`` assembled from ``g + h`` over the squared denominator."""
    _check_appendix(x, d, open_left=False)
    den = math.sqrt(1 / x) * math.sqrt(x * (1 - d) + d * d / 4) + (1 - x) * math.sqrt(4 * (d - x) / (4 * (d - x) - d * d))
    return (_g(x, d) + _h(x, d)) / den ** 2


@dataclasses.dataclass(frozen=True)
class CPHullQuery:
    """Does ``q`` lie in the C,P-convex hull of ``generators`` w.r.t. ``anchors``?"""

    q: np.ndarray
    generators: np.ndarray
    anchors: np.ndarray

    def __post_init__(self):
        q = as_vector(self.q)
        G = as_points(self.generators)
        P = as_points(self.anchors)
        if G.shape[1] != q.size or P.shape[1] != q.size:
            raise ValueError("all points must share one dimension")
        for pts in (q[None, :], G, P):
            if np.abs(np.linalg.norm(pts, axis=1) - 1).max() > 1e-8:
                raise DomainError("C,P-hull points must lie on the unit sphere")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "generators", G)
        object.__setattr__(self, "anchors", P)


def cp_hull_member(query: CPHullQuery, box: float = 1e6) -> bool:
    """LP feasibility test for membership in the C,P-convex hull.

    Variables are ``lambda_j`` per anchor and ``beta_ij = lambda_j * alpha_ij``;
    the total of the ``beta`` is capped at ``box``.
    """
    G, P, q = query.generators, query.anchors, query.q
    k, m, n = G.shape[0], P.shape[0], q.size
    nv = m + k * m  # beta index: m + j*k + i
    A_eq = np.zeros((n + 1, nv))
    b_eq = np.r_[q, 1.0]
    A_eq[:n, :m] = P.T
    for j in range(m):
        for i in range(k):
            A_eq[:n, m + j * k + i] = G[i] - P[j]
    A_eq[n, :m] = 1.0
    A_ub = np.zeros((m + 1, nv))
    for j in range(m):
        A_ub[j, j] = 1.0
        A_ub[j, m + j * k:m + (j + 1) * k] = -1.0
    A_ub[m, m:] = 1.0
    b_ub = np.r_[np.zeros(m), box]
    sol = solve_lp(LPProblem(np.zeros(nv), A_ub, b_ub, A_eq, b_eq, nonneg=np.ones(nv, dtype=bool)))
    return sol.optimal
