"""Inradius, circumradius and diameter of convex polytopes.

The package computes the three functionals for polytopes in Euclidean
space, tests triples ``(r, D, R)`` against the complete system of
inequalities in 3-space, builds the extremal simplices in coordinates and
runs seeded property suites for the supporting lemmas.
"""
from .diagram import (
    DiagramPoint,
    FeasibilityVerdict,
    boundary_polyline,
    check_complete_system,
    diagram_map,
    new_inequality_rhs,
    render_svg,
    sample_diagram,
    starshape_combine,
)
from .errors import (
    DegenerateBody,
    DimensionMismatch,
    DomainError,
    NoContacts,
    NotOptimallyContained,
    NumericalFailure,
    RdrError,
)
from .functionals import (
    ContainmentCertificate,
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
from .geometry import Gauge, HBody, VBody, contains_point, hull_facets, support_value
from .lp import LPProblem, LPSolution, LPStatus, solve_lp
from .simplices import (
    CPHullQuery,
    MovingVertexConfig,
    SpecialSimplexParams,
    appendix_f,
    appendix_g_h_q,
    base_pair,
    closed_form_inradius,
    cp_hull_member,
    isosceles_inradius,
    isosceles_simplex,
    k_alpha,
    short_edge_for_five_diametral,
    special_simplex,
    star_points,
)
from .verify import SuiteReport, run_suite

__version__ = "0.1.0"
