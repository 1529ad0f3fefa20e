"""Seeded property suites for the inequalities and the lemmas behind them.

Every suite is a function ``trial(seed, **options) -> Trial``.  A suite run
derives one integer seed per trial from the root seed, so any failing trial
can be replayed on its own with :func:`run_trial`.
"""
from __future__ import annotations

import dataclasses
import json
import math
import time
from typing import Callable

import numpy as np

from .diagram import check_complete_system, diagram_map, new_inequality_rhs, starshape_combine
from .errors import RdrError, UnknownName
from .functionals import FunctionalTriple, circumradius, diameter, functional_triple, inradius, inradius_gauge
from .geometry import Gauge, VBody, ball_points, hull_facets, random_rotation, simplex_vertices_regular, sphere_points
from .simplices import (
    SQRT_3,
    SQRT_8_3,
    MovingVertexConfig,
    appendix_f,
    appendix_g_h_q,
    appendix_q,
    isosceles_inradius,
    isosceles_simplex,
    k_alpha,
)


@dataclasses.dataclass
class Trial:
    passed: bool
    worst_slack: float
    inputs: dict
    skipped: bool = False
    note: str = ""


@dataclasses.dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list[dict]
    skipped: list[dict]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "skipped": self.skipped,
            "elapsed_s": self.elapsed,
        }


def _listify(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, dict):
        return {k: _listify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_listify(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    return x


# -- random inputs ---------------------------------------------------------

def random_polytope_gauge(rng: np.random.Generator, dim: int = 3) -> Gauge:
    while True:
        pts = sphere_points(rng, int(rng.integers(6, 11)), dim)
        body = VBody(pts)
        if not body.full_dimensional:
            continue
        body = body.hull()
        return Gauge.from_vertices(body.vertices - body.vertices.mean(axis=0))


def random_config(rng: np.random.Generator) -> MovingVertexConfig:
    while True:
        facet = sphere_points(rng, 3)
        d = [np.linalg.norm(facet[i] - facet[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
        if min(d) >= 0.5:
            break
    normal = np.cross(facet[1] - facet[0], facet[2] - facet[0])
    normal /= np.linalg.norm(normal)
    centroid = facet.mean(axis=0)
    apexes = []
    for _ in range(2):
        offset = rng.normal(0.0, 0.5, 3)
        offset -= (offset @ normal) * normal
        apexes.append(centroid + offset + rng.uniform(0.1, 1.5) * normal)
    return MovingVertexConfig(apexes[0], apexes[1], facet)


def random_opt_simplex(rng: np.random.Generator) -> VBody:
    """Simplex with vertices on the unit sphere, containing the origin and
    with diameter below ``sqrt(3)``."""
    while True:
        if rng.random() < 0.5:
            base = simplex_vertices_regular()
        else:
            base = isosceles_simplex(SQRT_8_3 + rng.random() * (SQRT_3 - SQRT_8_3) * 0.99).vertices
        base = base @ random_rotation(rng).T
        pts = base + rng.normal(0.0, rng.uniform(0.0, 0.12), base.shape)
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        M = np.vstack([pts.T, np.ones(4)])
        try:
            bary = np.linalg.solve(M, np.r_[0.0, 0.0, 0.0, 1.0])
        except np.linalg.LinAlgError:
            continue
        if bary.min() <= 1e-6:
            continue
        S = VBody(pts)
        if diameter(S)[0] < SQRT_3:
            return S


def _barycentric(vertices: np.ndarray, x: np.ndarray) -> np.ndarray:
    M = np.vstack([vertices.T, np.ones(vertices.shape[0])])
    return np.linalg.solve(M, np.r_[x, 1.0])


def _gauge_probe(rng: np.random.Generator, gauge: Gauge) -> np.ndarray:
    V = gauge.polytope.vertices
    w = rng.dirichlet(np.ones(V.shape[0]))
    return w @ V


# -- suites ----------------------------------------------------------------

def _config_from_options(rng, config):
    if config is None:
        return random_config(rng)
    if isinstance(config, MovingVertexConfig):
        return config
    return MovingVertexConfig(np.asarray(config["p0"]), np.asarray(config["p1"]), np.asarray(config["facet"]))


def trial_quasiconcavity(seed: int, alphas: int = 21, config=None) -> Trial:
    rng = np.random.default_rng(seed)
    gauge = random_polytope_gauge(rng)
    cfg = _config_from_options(rng, config)
    values = []
    for alpha in np.linspace(0.0, 1.0, alphas):
        values.append(inradius_gauge(hull_facets(k_alpha(cfg, float(alpha))), gauge)[0])
    values = np.array(values)
    floor = min(values[0], values[-1])
    worst = float((values - floor).min())
    inputs = {"p0": cfg.p0, "p1": cfg.p1, "facet": cfg.facet, "gauge": gauge.polytope.vertices}
    return Trial(worst >= -1e-9, worst, inputs)


def _apex_simplex(apex: np.ndarray, facet: np.ndarray, s: float) -> VBody:
    centroid = facet.mean(axis=0)
    return VBody(np.vstack([centroid + s * (apex - centroid), facet]))


def equalize_inradii(cfg: MovingVertexConfig, gauge: Gauge, tol: float = 1e-10) -> MovingVertexConfig:
    """Shrink the apex with the larger inradius towards the facet centroid
    until both simplices have the same inradius (bisection on the scale).

    The simplices are nested in the scale, so the inradius is monotone in it
    and tends to zero as the apex approaches the facet.
    """
    def r_of(apex, s):
        return inradius_gauge(hull_facets(_apex_simplex(apex, cfg.facet, s)), gauge)[0]

    r0, r1 = r_of(cfg.p0, 1.0), r_of(cfg.p1, 1.0)
    big, target = (cfg.p0, r1) if r0 > r1 else (cfg.p1, r0)
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if r_of(big, mid) < target:
            lo = mid
        else:
            hi = mid
    centroid = cfg.facet.mean(axis=0)
    moved = centroid + hi * (big - centroid)
    if r0 > r1:
        return MovingVertexConfig(moved, cfg.p1, cfg.facet)
    return MovingVertexConfig(cfg.p0, moved, cfg.facet)


def trial_ratio_constancy(seed: int, probes: int = 20, config=None) -> Trial:
    rng = np.random.default_rng(seed)
    gauge = random_polytope_gauge(rng)
    cfg = equalize_inradii(_config_from_options(rng, config), gauge)
    K0, K1 = k_alpha(cfg, 0.0), k_alpha(cfg, 1.0)
    r0, c = inradius_gauge(hull_facets(K0), gauge)
    r1, d = inradius_gauge(hull_facets(K1), gauge)
    r = r0
    ratios = []
    for _ in range(probes):
        v = _gauge_probe(rng, gauge)
        lam = _barycentric(K0.vertices, r * v + c)[0]
        mu = _barycentric(K1.vertices, r * v + d)[0]
        ratios.append(lam / mu)
    ratios = np.array(ratios)
    h0, h1 = cfg.heights()
    expected = h1 / h0
    spread = float(max(ratios.max() - ratios.min(), np.abs(ratios - expected).max()))
    inputs = {"p0": cfg.p0, "p1": cfg.p1, "facet": cfg.facet, "gauge": gauge.polytope.vertices,
              "r0": r0, "r1": r1}
    return Trial(spread <= 1e-8, -spread, inputs)


def _convex_polygon_apexes(rng: np.random.Generator, cfg_normal, centroid) -> np.ndarray:
    while True:
        u = rng.standard_normal(3)
        v = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        v -= (v @ u) * u
        v /= np.linalg.norm(v)
        base = centroid + rng.uniform(0.6, 1.2) * cfg_normal
        st = rng.uniform(-0.5, 0.5, (int(rng.integers(3, 7)), 2))
        poly = VBody(st)
        if not poly.full_dimensional:
            continue
        st = poly.hull().vertices
        pts = base + st[:, :1] * u + st[:, 1:] * v
        if ((pts - centroid) @ cfg_normal).min() >= 0.1:
            return pts


def trial_extreme_point_minimum(seed: int, samples: int = 200) -> Trial:
    rng = np.random.default_rng(seed)
    gauge = random_polytope_gauge(rng)
    cfg = random_config(rng)
    normal, _ = cfg.facet_plane()
    if normal @ (cfg.p0 - cfg.facet[0]) < 0:
        normal = -normal
    P = _convex_polygon_apexes(rng, normal, cfg.facet.mean(axis=0))

    def r_of(p):
        return inradius_gauge(hull_facets(VBody(np.vstack([p, cfg.facet]))), gauge)[0]

    at_vertices = min(r_of(p) for p in P)
    weights = rng.dirichlet(np.ones(P.shape[0]) * 0.7, samples)
    interior = min(r_of(w @ P) for w in weights)
    worst = float(interior - at_vertices)
    inputs = {"facet": cfg.facet, "apex_polygon": P, "gauge": gauge.polytope.vertices}
    return Trial(worst >= -1e-7, worst, inputs)


def random_opt_body(rng: np.random.Generator) -> VBody:
    """Random hull normalized so that its circumball is the unit ball."""
    body = VBody(ball_points(rng, int(rng.integers(4, 13))))
    R, c = circumradius(body)
    return VBody((body.vertices - c) / R)


def trial_starshape(seed: int, lambdas: int = 11) -> Trial:
    rng = np.random.default_rng(seed)
    K = random_opt_body(rng)
    f0 = diagram_map(functional_triple(K))
    worst = 0.0
    for lam in np.linspace(0.0, 1.0, lambdas):
        _, p = starshape_combine(K, float(lam))
        ex, ey = (1 - lam) * f0.x + lam, (1 - lam) * f0.y + lam
        worst = max(worst, abs(p.x - ex), abs(p.y - ey))
    return Trial(worst <= 1e-9, -worst, {"vertices": K.vertices})


def appendix_d_grid(count: int) -> np.ndarray:
    """``count`` values strictly inside ``(8/3, 3)``."""
    return 8 / 3 + (1 / 3) * np.arange(1, count + 1) / (count + 1)


def check_appendix_at(d: float, x_points: int = 100) -> Trial:
    x0, x1 = (4 - d) / 2, d / 4
    xs = np.linspace(x0, x1, x_points)
    f = np.array([appendix_f(float(x), d) for x in xs])
    diffs = np.diff(f)
    q_half = appendix_q(0.5, d)
    step = 1e-6
    dq_half = (appendix_q(0.5 + step, d) - appendix_q(0.5 - step, d)) / (2 * step)
    g, h, _ = appendix_g_h_q(x0, d)
    q_grid = max(appendix_q(float(x), d) for x in xs[1:])
    endpoint = abs(f[-1] - isosceles_inradius(math.sqrt(d), 1.0))
    checks = {
        "f_decreasing": -float(diffs.max()) - 1e-12,
        "q_half_negative": -q_half,
        "dq_half_negative": -dq_half,
        "q_negative_on_grid": -q_grid,
        "g_plus_h_zero": 1e-9 - abs(g + h),
        "f_endpoint_isosceles": 1e-12 - endpoint,
    }
    worst = min(checks.values())
    return Trial(worst > 0, worst, {"d": d, "x_points": x_points, "checks": checks})


def trial_appendix(seed: int, index: int = 0, count: int = 20, x_points: int = 100) -> Trial:
    return check_appendix_at(float(appendix_d_grid(count)[index]), x_points)


def trial_equality_case(seed: int, D: float | None = None) -> Trial:
    rng = np.random.default_rng(seed)
    if D is None:
        D = SQRT_8_3 + rng.random() * (SQRT_3 - 1e-3 - SQRT_8_3)
    S = VBody(isosceles_simplex(D).vertices @ random_rotation(rng).T)
    gap = abs(inradius(S) - new_inequality_rhs(D, 1.0))
    return Trial(gap <= 1e-6, -gap, {"D": D, "vertices": S.vertices})


def trial_minimality(seed: int) -> Trial:
    rng = np.random.default_rng(seed)
    S = random_opt_simplex(rng)
    D = diameter(S)[0]
    R, _ = circumradius(S)
    r = inradius(S)
    slack = r - new_inequality_rhs(D, R)
    inputs = {"vertices": S.vertices, "r": r, "D": D, "R": R}
    return Trial(slack >= -1e-8 and abs(R - 1) <= 1e-8, slack, inputs)


def trial_strict_inclusion(seed: int) -> Trial:
    rng = np.random.default_rng(seed)
    while True:
        S = VBody(ball_points(rng, 4))
        H = hull_facets(S)
        if len(H) == 4 and inradius(S) > 0.02:
            break
    j = int(rng.integers(4))
    on_facet = rng.dirichlet(np.ones(4))
    # a point of facet j: barycentric weight zero on the opposite vertex
    opposite = int(np.argmax(S.vertices @ -H.normals[j]))
    on_facet[opposite] = 0.0
    on_facet /= on_facet.sum()
    q = on_facet @ S.vertices + rng.uniform(0.05, 0.5) * H.normals[j]
    r_s = inradius(S)
    r_k = inradius(VBody(np.vstack([S.vertices, q])))
    gain = r_k - r_s
    return Trial(gain > 1e-12, gain, {"simplex": S.vertices, "q": q})


def trial_soundness(seed: int) -> Trial:
    rng = np.random.default_rng(seed)
    body = VBody(ball_points(rng, int(rng.integers(4, 13))))
    triple = functional_triple(body)
    verdict = check_complete_system(triple, tol=1e-8)
    worst = min(verdict.slacks.values())
    inputs = {"vertices": body.vertices, "triple": dataclasses.asdict(triple), "slacks": verdict.slacks}
    return Trial(verdict.feasible, worst, inputs)


SUITES: dict[str, Callable[..., Trial]] = {
    "ratio-constancy": trial_ratio_constancy,
    "quasiconcavity": trial_quasiconcavity,
    "extreme-point-minimum": trial_extreme_point_minimum,
    "starshape": trial_starshape,
    "appendix-monotonicity": trial_appendix,
    "equality-case": trial_equality_case,
    "minimality": trial_minimality,
    "strict-inclusion": trial_strict_inclusion,
    "soundness": trial_soundness,
}


def trial_seeds(root_seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(root_seed).generate_state(trials, dtype=np.uint32)]


def run_trial(suite: str, seed: int, **options) -> Trial:
    """Run one trial; precondition errors turn into a skipped trial."""
    if suite not in SUITES:
        raise UnknownName(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    try:
        return SUITES[suite](seed, **options)
    except RdrError as exc:
        return Trial(True, math.nan, _listify(options), skipped=True, note=f"{type(exc).__name__}: {exc}")


def run_suite(suite: str, trials: int, root_seed: int = 0, **options) -> SuiteReport:
    if suite not in SUITES:
        raise UnknownName(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    start = time.perf_counter()
    failures, skipped = [], []
    for k, seed in enumerate(trial_seeds(root_seed, trials)):
        opts = dict(options)
        if suite == "appendix-monotonicity":
            opts.setdefault("count", trials)
            opts["index"] = k
        elif suite == "equality-case" and "D" not in opts:
            grid = np.linspace(SQRT_8_3, SQRT_3 - 1e-3, trials)
            opts["D"] = float(grid[k])
        t = run_trial(suite, seed, **opts)
        if t.skipped:
            skipped.append({"seed": seed, "reason": t.note})
        elif not t.passed:
            failures.append({
                "seed": seed,
                "description": json.dumps(_listify({"suite": suite, "options": opts, "inputs": t.inputs})),
                "worst_slack": t.worst_slack,
            })
    return SuiteReport(suite, trials, failures, skipped, time.perf_counter() - start)
