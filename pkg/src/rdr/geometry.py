"""Polytope primitives: vertex and half-space views, hulls, support values.

Points are plain ``numpy`` float arrays.  Hulls are computed by brute-force
facet enumeration over all ``dim``-subsets of the vertices, which costs
``O(C(n, dim) * n)`` and is meant for the small bodies used throughout the
package (at most a few dozen vertices).
"""
from __future__ import annotations

import dataclasses
import itertools
import json
from typing import Sequence

import numpy as np

from . import settings
from .errors import DegenerateBody, DimensionMismatch
from .lp import LPProblem, LPStatus, solve_lp

MAX_HULL_VERTICES = 32


def as_vector(x, dim: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.size == 0:
        raise ValueError("vector must have at least one coordinate")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector coordinates must be finite")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.size}")
    return v


def dedup_points(points: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Drop points within ``tol`` (max-norm) of an earlier point; order is kept."""
    tol = settings.get().dedup if tol is None else tol
    kept: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in kept):
            kept.append(p)
    return np.array(kept)


def affine_dimension(points: np.ndarray, tol: float | None = None) -> int:
    tol = settings.get().geometric if tol is None else tol
    pts = np.atleast_2d(points)
    if pts.shape[0] <= 1:
        return 0
    diffs = pts[1:] - pts[0]
    s = np.linalg.svd(diffs, compute_uv=False)
    scale = max(1.0, float(np.abs(pts).max()))
    return int(np.sum(s > tol * scale))


@dataclasses.dataclass(frozen=True)
class VBody:
    """Convex polytope given by (a superset of) its vertices."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.shape[0] == 0 or v.shape[1] == 0:
            raise ValueError("a body needs at least one vertex")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertex coordinates must be finite")
        v = dedup_points(v)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def affine_dim(self) -> int:
        return affine_dimension(self.vertices)

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def scaled(self, s: float) -> "VBody":
        return VBody(s * self.vertices)

    def translated(self, t) -> "VBody":
        return VBody(self.vertices + as_vector(t, self.dim))

    def hull(self) -> "VBody":
        """Return the body with non-extreme vertices removed.

        Only full-dimensional bodies are reduced; lower-dimensional ones are
        returned unchanged.
        """
        if not self.full_dimensional:
            return self
        return VBody(self.vertices[extreme_mask(self)])

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": self.vertices.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "VBody":
        verts = data["vertices"]
        body = cls(np.asarray(verts, dtype=float))
        if "dim" in data and int(data["dim"]) != body.dim:
            raise DimensionMismatch(f"declared dim {data['dim']} but vertices have dim {body.dim}")
        return body


@dataclasses.dataclass(frozen=True)
class HBody:
    """Polytope ``{x : normals @ x <= offsets}`` with unit normals."""

    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.normals, dtype=float))
        b = np.asarray(self.offsets, dtype=float).reshape(-1)
        if A.shape[0] != b.shape[0]:
            raise ValueError("one offset per normal is required")
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms == 0):
            raise ValueError("half-space normals must be nonzero")
        A, b = A / norms[:, None], b / norms
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "normals", A)
        object.__setattr__(self, "offsets", b)

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    def __len__(self) -> int:
        return self.offsets.shape[0]

    @property
    def halfspaces(self) -> list[tuple[np.ndarray, float]]:
        return [(a, float(b)) for a, b in zip(self.normals, self.offsets)]

    def is_bounded(self) -> bool:
        for i in range(self.dim):
            for sign in (1.0, -1.0):
                c = np.zeros(self.dim)
                c[i] = sign
                sol = solve_lp(LPProblem(c, self.normals, self.offsets))
                if sol.status is not LPStatus.OPTIMAL:
                    return False
        return True


def support_value(body: VBody, direction) -> tuple[float, np.ndarray]:
    """Support function ``h_K(a) = max_{x in K} a.x`` and a maximizing vertex."""
    a = as_vector(direction, body.dim)
    values = body.vertices @ a
    i = int(np.argmax(values))  # first maximum: lowest-index tie-break
    return float(values[i]), body.vertices[i].copy()


def _candidate_planes(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n, dim = points.shape
    combos = np.array(list(itertools.combinations(range(n), dim)))
    if dim == 1:
        normals = np.ones((combos.shape[0], 1))
        return combos, normals, np.ones(combos.shape[0], dtype=bool)
    base = points[combos[:, 0]]
    diffs = points[combos[:, 1:]] - base[:, None, :]
    _, s, vh = np.linalg.svd(diffs)
    normals = vh[:, -1, :]
    scale = max(1.0, float(np.abs(points).max()))
    ok = s[:, -1] > 1e-9 * scale
    return combos, normals, ok


def hull_facets(body: VBody) -> HBody:
    """Facet-defining half-spaces of ``conv(body.vertices)``."""
    pts = body.vertices
    n, dim = pts.shape
    if body.affine_dim < dim:
        raise DegenerateBody(f"affine dimension {body.affine_dim} < ambient dimension {dim}")
    if n > MAX_HULL_VERTICES:
        raise ValueError(f"brute-force hull supports at most {MAX_HULL_VERTICES} vertices, got {n}")
    tol = settings.get().geometric * max(1.0, float(np.abs(pts).max()))
    combos, normals, ok = _candidate_planes(pts)
    combos, normals = combos[ok], normals[ok]
    offsets = np.einsum("ij,ij->i", normals, pts[combos[:, 0]])
    values = normals @ pts.T - offsets[:, None]  # (planes, points)
    below = np.all(values <= tol, axis=1)
    above = np.all(values >= -tol, axis=1)
    normals = np.vstack([normals[below], -normals[above & ~below]])
    offsets = np.concatenate([offsets[below], -offsets[above & ~below]])
    facets: list[tuple[np.ndarray, float]] = []
    for a, b in zip(normals, offsets):
        if not any(np.max(np.abs(a - fa)) <= 1e-9 and abs(b - fb) <= tol for fa, fb in facets):
            facets.append((a, b))
    return HBody(np.array([f[0] for f in facets]), np.array([f[1] for f in facets]))


def contains_point(body: HBody, point, tol: float | None = None) -> bool:
    tol = settings.get().geometric if tol is None else tol
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    x = as_vector(point, body.dim)
    return bool(np.all(body.normals @ x <= body.offsets + tol))


def vertex_enumeration(body: HBody) -> np.ndarray:
    """Vertices of a bounded ``HBody`` by brute force over ``dim``-subsets of facets."""
    A, b = body.normals, body.offsets
    dim = body.dim
    tol = settings.get().geometric * max(1.0, float(np.abs(b).max()))
    found = []
    for idx in itertools.combinations(range(len(b)), dim):
        M = A[list(idx)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[list(idx)])
        if np.all(A @ x <= b + tol):
            found.append(x)
    if not found:
        return np.zeros((0, dim))
    return dedup_points(np.array(found), tol=1e-8)


def extreme_mask(body: VBody) -> np.ndarray:
    """Boolean mask of the vertices that are extreme points of the hull.

    A vertex of a full-dimensional polytope is extreme iff the normals of
    the facets through it span the ambient space.
    """
    H = hull_facets(body)
    tol = settings.get().geometric * max(1.0, float(np.abs(body.vertices).max()))
    tight = np.abs(body.vertices @ H.normals.T - H.offsets) <= tol  # (verts, facets)
    mask = np.zeros(len(body), dtype=bool)
    for i in range(len(body)):
        N = H.normals[tight[i]]
        mask[i] = N.shape[0] >= body.dim and np.linalg.matrix_rank(N, tol=1e-9) == body.dim
    return mask


@dataclasses.dataclass(frozen=True)
class Gauge:
    """The body ``C`` in ``r(K, C)``: the Euclidean unit ball or a polytope."""

    kind: str
    dim: int
    polytope: VBody | None = None

    def __post_init__(self):
        if self.kind not in ("ball", "polytope"):
            raise ValueError(f"unknown gauge kind {self.kind!r}")
        if self.kind == "polytope":
            if self.polytope is None:
                raise ValueError("polytope gauge needs vertices")
            if self.polytope.dim != self.dim:
                raise DimensionMismatch("gauge vertices do not match the gauge dimension")
            if not self.polytope.full_dimensional:
                raise DegenerateBody("polytope gauge must be full-dimensional")

    @classmethod
    def ball(cls, dim: int = 3) -> "Gauge":
        return cls("ball", dim)

    @classmethod
    def from_vertices(cls, vertices) -> "Gauge":
        body = VBody(vertices)
        return cls("polytope", body.dim, body)

    def support(self, directions: np.ndarray) -> np.ndarray:
        """Support values ``h_C(a)`` for each row ``a`` of ``directions``."""
        D = np.atleast_2d(directions)
        if self.kind == "ball":
            return np.linalg.norm(D, axis=1)
        return (D @ self.polytope.vertices.T).max(axis=1)

    def to_json(self) -> dict:
        if self.kind == "ball":
            return {"kind": "ball"}
        return {"kind": "polytope", "vertices": self.polytope.vertices.tolist()}

    @classmethod
    def from_json(cls, data: dict, dim: int = 3) -> "Gauge":
        kind = data.get("kind")
        if kind == "ball":
            return cls.ball(dim)
        if kind == "polytope":
            return cls.from_vertices(data["vertices"])
        raise ValueError(f"unknown gauge kind {kind!r}")


def load_body(path) -> VBody:
    with open(path) as fh:
        return VBody.from_json(json.load(fh))


def random_rotation(rng: np.random.Generator, dim: int = 3) -> np.ndarray:
    """Haar-distributed rotation matrix (determinant +1)."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def sphere_points(rng: np.random.Generator, count: int, dim: int = 3) -> np.ndarray:
    x = rng.standard_normal((count, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def ball_points(rng: np.random.Generator, count: int, dim: int = 3) -> np.ndarray:
    return sphere_points(rng, count, dim) * rng.random((count, 1)) ** (1.0 / dim)


def simplex_vertices_regular(R: float = 1.0) -> np.ndarray:
    """Regular tetrahedron inscribed in the sphere of radius ``R`` about 0."""
    v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    return R * v / np.sqrt(3.0)


def cube_vertices(half: float = 1.0) -> np.ndarray:
    return half * np.array(list(itertools.product((-1.0, 1.0), repeat=3)))


def as_points(points: Sequence) -> np.ndarray:
    return np.atleast_2d(np.asarray(points, dtype=float))
