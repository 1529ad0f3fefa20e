"""The (r, D, R) diagram: feasibility oracle, boundary, sampling and output."""
from __future__ import annotations

import csv
import dataclasses
import io
import math
import xml.etree.ElementTree as ET
from typing import Iterable, Sequence

import numpy as np

from . import settings
from .errors import DomainError, NotOptimallyContained, UnknownName
from .functionals import (
    FunctionalTriple,
    circumradius,
    functional_triple,
    optimal_containment_certificate,
    rounded_functionals,
)
from .geometry import VBody, ball_points, random_rotation, simplex_vertices_regular
from .simplices import SQRT_3, SQRT_8_3, isosceles_simplex

INEQUALITY_IDS = ("D<=2R", "jung", "concentricity", "r>=0", "new")
ARC_IDS = ("left", "new", "jung", "concentricity", "top")
FAMILIES = ("random-hull", "isosceles", "rounded-tetra", "planar-triangle", "segment-combos")

SQRT_2_3 = math.sqrt(2.0 / 3.0)


@dataclasses.dataclass(frozen=True)
class DiagramPoint:
    x: float
    y: float


@dataclasses.dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    slacks: dict[str, float]
    violations: list[tuple[str, float]]
    equalities: list[str]

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "slacks": self.slacks,
            "violations": [{"id": i, "slack": s} for i, s in self.violations],
            "equalities": self.equalities,
        }


def new_inequality_rhs(D: float, R: float = 1.0) -> float:
    """Lower bound on the inradius for ``D <= sqrt(3) R``."""
    if not (R > 0 and D > 0):
        raise DomainError("need D > 0 and R > 0")
    s = (SQRT_3 * R - D) * (SQRT_3 * R + D)
    if s < -1e-12 * R * R:
        raise DomainError(f"D = {D!r} exceeds sqrt(3) R; the bound does not apply")
    root = math.sqrt(max(s, 0.0))
    return D * D * root / (4 * R * root + SQRT_3 * (4 * R * R - D * D))


def check_complete_system(triple: FunctionalTriple, tol: float | None = None) -> FeasibilityVerdict:
    tol = settings.get().tight if tol is None else tol
    r, D, R = triple.as_tuple()
    slacks = {
        "D<=2R": 2 * R - D,
        "jung": SQRT_3 * D - math.sqrt(8.0) * R,
        "concentricity": D - r - R,
        "r>=0": r,
    }
    if R > 0 and 0 < D <= SQRT_3 * R:
        slacks["new"] = r - new_inequality_rhs(D, R)
    violations = [(k, v) for k, v in slacks.items() if v < -tol]
    equalities = [k for k, v in slacks.items() if abs(v) <= tol]
    return FeasibilityVerdict(not violations, slacks, violations, equalities)


def diagram_map(triple: FunctionalTriple) -> DiagramPoint:
    if triple.R <= 0:
        raise DomainError("the diagram map needs R > 0")
    return DiagramPoint(triple.r / triple.R, triple.D / (2 * triple.R))


def region_slacks(point: DiagramPoint) -> dict[str, float]:
    """Signed distance-like slacks of a diagram point against each boundary arc.

    Nonnegative everywhere means the point is on the feasible side of all arcs.
    """
    x, y = point.x, point.y
    out = {
        "left": x,
        "top": 1.0 - y,
        "jung": y - SQRT_2_3,
        "concentricity": y - (1 + x) / 2,
    }
    if 2 * y <= SQRT_3:
        out["new"] = x - new_inequality_rhs(2 * y, 1.0)
    return out


def boundary_polyline(samples_per_arc: int) -> list[tuple[DiagramPoint, str]]:
    """Closed boundary of the diagram as five sampled arcs.

    Order: left edge downwards from (0, 1), the new curve to the
    tetrahedron corner, the Jung floor, the concentricity line up to (1, 1),
    and the top edge back to (0, 1).
    """
    if samples_per_arc < 2:
        raise ValueError("samples_per_arc must be at least 2")
    t = np.linspace(0.0, 1.0, samples_per_arc)
    corner_x = SQRT_8_3 - 1
    out: list[tuple[DiagramPoint, str]] = []
    for y in 1.0 + t * (SQRT_3 / 2 - 1.0):
        out.append((DiagramPoint(0.0, float(y)), "left"))
    for y in SQRT_3 / 2 + t * (SQRT_2_3 - SQRT_3 / 2):
        y = float(y)
        out.append((DiagramPoint(new_inequality_rhs(2 * y, 1.0), y), "new"))
    for x in 1 / 3 + t * (corner_x - 1 / 3):
        out.append((DiagramPoint(float(x), SQRT_2_3), "jung"))
    for x in corner_x + t * (1.0 - corner_x):
        out.append((DiagramPoint(float(x), (1 + float(x)) / 2), "concentricity"))
    for x in 1.0 - t:
        out.append((DiagramPoint(float(x), 1.0), "top"))
    return out


def arcs(boundary: Sequence[tuple[DiagramPoint, str]]) -> dict[str, list[DiagramPoint]]:
    grouped: dict[str, list[DiagramPoint]] = {}
    for p, arc in boundary:
        grouped.setdefault(arc, []).append(p)
    return grouped


def starshape_combine(body: VBody, lam: float) -> tuple[FunctionalTriple, DiagramPoint]:
    """Functionals and diagram point of ``(1 - lam) K + lam B``.

    ``body`` must be optimally contained in the unit ball centred at the origin.
    """
    if not 0.0 <= lam <= 1.0:
        raise DomainError("lambda must lie in [0, 1]")
    R, _ = circumradius(body)
    if abs(R - 1.0) > 1e-8 or np.linalg.norm(body.vertices, axis=1).max() > 1 + 1e-8:
        raise NotOptimallyContained(f"body has circumradius {R!r} or leaves the unit ball")
    if not optimal_containment_certificate(body, center=np.zeros(body.dim), radius=1.0).valid:
        raise NotOptimallyContained("origin is not in the hull of the contact points")
    triple = rounded_functionals(body.scaled(1.0 - lam), lam)
    return triple, diagram_map(triple)


# -- sampling --------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SampleRow:
    x: float
    y: float
    r: float
    D: float
    R: float
    family: str
    id: int


def _normalize(body: VBody) -> VBody:
    R, c = circumradius(body)
    return VBody((body.vertices - c) / R)


def _random_hull(rng):
    return functional_triple(VBody(ball_points(rng, int(rng.integers(4, 13)))))


def _isosceles(rng):
    D = SQRT_8_3 + rng.random() * (SQRT_3 - SQRT_8_3) * 0.999
    S = VBody(isosceles_simplex(D).vertices @ random_rotation(rng).T)
    return functional_triple(S)


def _rounded_tetra(rng):
    T = VBody(simplex_vertices_regular() @ random_rotation(rng).T)
    return starshape_combine(T, float(rng.random()))[0]


def _planar_triangle(rng):
    # acute triangle on a great circle: its circumcircle is the great circle
    while True:
        ang = np.sort(rng.random(3) * 2 * math.pi)
        gaps = np.diff(np.r_[ang, ang[0] + 2 * math.pi])
        if gaps.max() < math.pi:
            break
    pts = np.column_stack([np.cos(ang), np.sin(ang), np.zeros(3)]) @ random_rotation(rng).T
    return functional_triple(VBody(pts))


def _segment_combo(rng):
    lam = float(rng.random())
    seg = VBody(np.array([[-1.0, 0, 0], [1.0, 0, 0]]))
    return rounded_functionals(seg.scaled(1 - lam), lam)


_GENERATORS = {
    "random-hull": _random_hull,
    "isosceles": _isosceles,
    "rounded-tetra": _rounded_tetra,
    "planar-triangle": _planar_triangle,
    "segment-combos": _segment_combo,
}


def sample_diagram(families: Iterable[str], count: int, seed: int) -> list[SampleRow]:
    """Sample ``count`` bodies from each named family.

    Each body gets its own generator spawned from ``seed``, so a row does
    not depend on which other families were requested.
    """
    families = list(families)
    for fam in families:
        if fam not in _GENERATORS:
            raise UnknownName(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    rows: list[SampleRow] = []
    for fam in families:
        fam_seq = np.random.SeedSequence([seed, FAMILIES.index(fam)])
        for child in fam_seq.spawn(count):
            triple = _GENERATORS[fam](np.random.default_rng(child))
            p = diagram_map(triple)
            rows.append(SampleRow(p.x, p.y, triple.r, triple.D, triple.R, fam, len(rows)))
    return rows


# -- output ----------------------------------------------------------------

def _fmt(v: float) -> str:
    return f"{v:.17g}"


def rows_to_csv(rows: Sequence[SampleRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "r", "D", "R", "family", "id"])
    for row in rows:
        w.writerow([_fmt(row.x), _fmt(row.y), _fmt(row.r), _fmt(row.D), _fmt(row.R), row.family, row.id])
    return buf.getvalue()


def boundary_to_csv(boundary: Sequence[tuple[DiagramPoint, str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "arc"])
    for p, arc in boundary:
        w.writerow([_fmt(p.x), _fmt(p.y), arc])
    return buf.getvalue()


SVG_SIZE = 1000
X_RANGE = (0.0, 1.0)
Y_RANGE = (SQRT_2_3 - 0.05, 1.02)
_FAMILY_COLORS = {
    "random-hull": "#1f77b4",
    "isosceles": "#d62728",
    "rounded-tetra": "#2ca02c",
    "planar-triangle": "#9467bd",
    "segment-combos": "#ff7f0e",
}


def to_pixel(x: float, y: float) -> tuple[float, float]:
    px = 60 + (x - X_RANGE[0]) / (X_RANGE[1] - X_RANGE[0]) * 900
    py = 940 - (y - Y_RANGE[0]) / (Y_RANGE[1] - Y_RANGE[0]) * 880
    return px, py


def render_svg(points: Sequence[SampleRow], boundary: Sequence[tuple[DiagramPoint, str]], path) -> None:
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", viewBox=f"0 0 {SVG_SIZE} {SVG_SIZE}",
                     width=str(SVG_SIZE), height=str(SVG_SIZE))
    ET.SubElement(svg, "rect", x="0", y="0", width=str(SVG_SIZE), height=str(SVG_SIZE), fill="white")
    for arc, pts in arcs(boundary).items():
        coords = " ".join("{:.3f},{:.3f}".format(*to_pixel(p.x, p.y)) for p in pts)
        ET.SubElement(svg, "polyline", points=coords, fill="none", stroke="black",
                      attrib={"stroke-width": "2", "data-arc": arc})
    for row in points:
        px, py = to_pixel(row.x, row.y)
        ET.SubElement(svg, "circle", cx=f"{px:.3f}", cy=f"{py:.3f}", r="3",
                      fill=_FAMILY_COLORS.get(row.family, "gray"), attrib={"data-family": row.family})
    x_marks = [(0.0, "0"), (1 / 3, "1/3"), (SQRT_8_3 - 1, "√(8/3)−1"), (1.0, "1")]
    y_marks = [(SQRT_2_3, "2/√6"), (SQRT_3 / 2, "√3/2"), (1.0, "1")]
    for x, label in x_marks:
        px, _ = to_pixel(x, Y_RANGE[0])
        t = ET.SubElement(svg, "text", x=f"{px:.3f}", y="975", attrib={"text-anchor": "middle", "font-size": "20"})
        t.text = label
    for y, label in y_marks:
        _, py = to_pixel(X_RANGE[0], y)
        t = ET.SubElement(svg, "text", x="55", y=f"{py + 6:.3f}", attrib={"text-anchor": "end", "font-size": "20"})
        t.text = label
    ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)
