import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from rdr.lp import LPProblem, LPStatus, solve_lp


def test_simple_max():
    sol = solve_lp(LPProblem([1.0], [[1.0], [-1.0]], [3.0, 0.0]))
    assert sol.status is LPStatus.OPTIMAL
    assert sol.value == pytest.approx(3.0)


def test_infeasible():
    sol = solve_lp(LPProblem([1.0], [[-1.0], [1.0]], [-2.0, 1.0]))
    assert sol.status is LPStatus.INFEASIBLE
    assert not sol.optimal


def test_unbounded():
    sol = solve_lp(LPProblem([1.0, 0.0], [[0.0, 1.0]], [1.0]))
    assert sol.status is LPStatus.UNBOUNDED


def test_cube_chebyshev_value():
    A = np.vstack([np.eye(3), -np.eye(3)])
    A_ub = np.vstack([np.hstack([A, np.ones((6, 1))]), np.r_[np.zeros(3), -1.0]])
    sol = solve_lp(LPProblem([0, 0, 0, 1.0], A_ub, np.r_[np.ones(6), 0.0]))
    assert sol.value == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(sol.x[:3], 0.0, atol=1e-12)


def test_equality_and_sign_constraints():
    # max x + y, x + y + z = 1, z >= 0.25, all nonnegative
    p = LPProblem([1.0, 1.0, 0.0], [[0, 0, -1.0]], [-0.25], A_eq=[[1.0, 1.0, 1.0]], b_eq=[1.0],
                  nonneg=[True, True, True])
    sol = solve_lp(p)
    assert sol.value == pytest.approx(0.75)


def test_redundant_equalities():
    p = LPProblem([1.0, 0.0], A_eq=[[1.0, 1.0], [2.0, 2.0]], b_eq=[1.0, 2.0], nonneg=[True, True])
    sol = solve_lp(p)
    assert sol.value == pytest.approx(1.0)


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook largest-coefficient rule
    c = np.array([0.75, -150.0, 0.02, -6.0])
    A = np.array([[0.25, -60.0, -0.04, 9.0], [0.5, -90.0, -0.02, 3.0], [0.0, 0.0, 1.0, 0.0]])
    b = np.array([0.0, 0.0, 1.0])
    sol = solve_lp(LPProblem(c, A, b, nonneg=np.ones(4, dtype=bool)))
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(0, None)] * 4, method="highs")
    assert sol.value == pytest.approx(-ref.fun, abs=1e-10)


def test_shape_validation():
    with pytest.raises(ValueError):
        LPProblem([1.0, 2.0], [[1.0]], [1.0])


def _brute_force_2d(c, A, b):
    """Best vertex among all pairwise constraint intersections."""
    best = None
    for i, j in itertools.combinations(range(len(A)), 2):
        M = A[[i, j]]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[[i, j]])
        if np.all(A @ x <= b + 1e-9):
            v = c @ x
            best = v if best is None else max(best, v)
    return best


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_2d_against_vertex_enumeration(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(3, 9))
    ang = rng.uniform(0, 2 * np.pi, m)
    A = np.column_stack([np.cos(ang), np.sin(ang)])
    b = rng.uniform(-0.3, 1.0, m)
    box = np.vstack([np.eye(2), -np.eye(2)])  # keeps the region bounded
    A = np.vstack([A, box])
    b = np.r_[b, np.full(4, 5.0)]
    c = rng.normal(size=2)
    sol = solve_lp(LPProblem(c, A, b))
    ref = _brute_force_2d(c, A, b)
    if ref is None:
        assert sol.status is LPStatus.INFEASIBLE
    else:
        assert sol.optimal
        assert sol.value == pytest.approx(ref, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_against_scipy(seed):
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(2, 6)), int(rng.integers(3, 12))
    A = rng.normal(size=(m, n))
    x0 = rng.normal(size=n)
    b = A @ x0 + rng.uniform(0.0, 1.0, m)  # x0 is feasible
    A = np.vstack([A, np.eye(n), -np.eye(n)])
    b = np.r_[b, np.full(2 * n, 10.0)]
    c = rng.normal(size=n)
    sol = solve_lp(LPProblem(c, A, b))
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
    assert sol.optimal and ref.status == 0
    assert sol.value == pytest.approx(-ref.fun, abs=1e-8)
    assert np.all(A @ sol.x <= b + 1e-9)
