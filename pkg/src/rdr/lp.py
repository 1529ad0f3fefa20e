"""Dense two-phase simplex method for small linear programs.

Problems in this package have at most a few dozen variables and about a
hundred constraints, so the tableau is kept dense and Bland's rule is used
throughout for guaranteed termination.  After the final basis is found the
basic solution is recomputed from the original data by a direct solve,
which removes the error accumulated over the pivots.
"""
from __future__ import annotations

import dataclasses
import enum

import numpy as np

from . import settings
from .errors import NumericalFailure


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclasses.dataclass(frozen=True)
class LPProblem:
    """maximize ``c @ x`` subject to ``A_ub @ x <= b_ub`` and ``A_eq @ x == b_eq``.

    Variables are free unless flagged in ``nonneg``.
    """

    c: np.ndarray
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    nonneg: np.ndarray | None = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        n = c.shape[0]
        object.__setattr__(self, "c", c)
        for a_name, b_name in (("A_ub", "b_ub"), ("A_eq", "b_eq")):
            A, b = getattr(self, a_name), getattr(self, b_name)
            if A is None:
                A, b = np.zeros((0, n)), np.zeros(0)
            A = np.asarray(A, dtype=float).reshape(-1, n)
            b = np.asarray(b, dtype=float).reshape(-1)
            if A.shape[0] != b.shape[0]:
                raise ValueError(f"{a_name} has {A.shape[0]} rows but {b_name} has {b.shape[0]}")
            object.__setattr__(self, a_name, A)
            object.__setattr__(self, b_name, b)
        nonneg = np.zeros(n, dtype=bool) if self.nonneg is None else np.asarray(self.nonneg, dtype=bool)
        if nonneg.shape != (n,):
            raise ValueError("nonneg mask must have one entry per variable")
        object.__setattr__(self, "nonneg", nonneg)
        for arr in (c, self.A_ub, self.b_ub, self.A_eq, self.b_eq):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP coefficients must be finite")

    @property
    def n(self) -> int:
        return self.c.shape[0]


@dataclasses.dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    x: np.ndarray | None = None
    value: float | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


_REDUCED_COST_TOL = 1e-11
_RATIO_TOL = 1e-11


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    others = T[:, col].copy()
    others[row] = 0.0
    T -= np.outer(others, T[row])


def _bland_phase(T: np.ndarray, basis: list[int], n_cols: int, max_iter: int) -> tuple[str, int]:
    """Run simplex iterations on tableau ``T`` whose last row is the objective.

    The objective row holds reduced costs for a maximization; an entering
    column has a positive entry.  Only the first ``n_cols`` columns may enter.
    """
    m = len(basis)
    for it in range(max_iter):
        obj = T[-1, :n_cols]
        candidates = np.flatnonzero(obj > _REDUCED_COST_TOL)
        if candidates.size == 0:
            return "optimal", it
        col = int(candidates[0])
        column = T[:m, col]
        eligible = np.flatnonzero(column > _RATIO_TOL)
        if eligible.size == 0:
            return "unbounded", it
        ratios = T[eligible, -1] / column[eligible]
        best = ratios.min()
        ties = eligible[ratios <= best + 1e-14 * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        if abs(T[row, col]) < settings.get().lp_pivot:
            raise NumericalFailure(f"pivot magnitude {T[row, col]:.3e} below threshold")
        _pivot(T, row, col)
        basis[row] = col
    raise NumericalFailure(f"simplex did not terminate within {max_iter} iterations")


def _standard_form(p: LPProblem):
    """Rewrite with all variables nonnegative; free ones are split in two."""
    free = np.flatnonzero(~p.nonneg)
    cols = [np.eye(p.n)[:, j] for j in range(p.n)] + [-np.eye(p.n)[:, j] for j in free]
    back = np.column_stack(cols) if cols else np.zeros((p.n, 0))  # x = back @ z
    c = p.c @ back
    A_ub = p.A_ub @ back
    A_eq = p.A_eq @ back
    return c, A_ub, p.b_ub.copy(), A_eq, p.b_eq.copy(), back


def solve_lp(problem: LPProblem, max_iter: int = 5000) -> LPSolution:
    """Solve ``problem`` with the two-phase simplex method and Bland's rule."""
    c, A_ub, b_ub, A_eq, b_eq, back = _standard_form(problem)
    nz = c.shape[0]
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    # rows: [structural | slacks(m_ub) | artificials] = rhs
    rows = np.zeros((m, nz + m_ub))
    rhs = np.zeros(m)
    rows[:m_ub, :nz] = A_ub
    rows[:m_ub, nz:] = np.eye(m_ub)
    rhs[:m_ub] = b_ub
    rows[m_ub:, :nz] = A_eq
    rhs[m_ub:] = b_eq
    flip = rhs < 0
    rows[flip] *= -1
    rhs[flip] *= -1

    needs_art = [i for i in range(m) if i >= m_ub or flip[i]]
    n_real = nz + m_ub
    n_art = len(needs_art)
    T = np.zeros((m + 1, n_real + n_art + 1))
    T[:m, :n_real] = rows
    T[:m, -1] = rhs
    basis = [nz + i for i in range(m)]
    for k, i in enumerate(needs_art):
        T[i, n_real + k] = 1.0
        basis[i] = n_real + k

    iterations = 0
    if n_art:
        # phase 1: maximize -(sum of artificials)
        for i in needs_art:
            T[-1] += T[i]
        T[-1, n_real:n_real + n_art] = 0.0
        status, it = _bland_phase(T, basis, n_real + n_art, max_iter)
        iterations += it
        scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
        if T[-1, -1] > settings.get().lp_feasibility * scale:
            return LPSolution(LPStatus.INFEASIBLE, iterations=iterations)
        # drive remaining artificials out of the basis
        keep = []
        for r in range(m):
            if basis[r] < n_real:
                keep.append(r)
                continue
            entries = np.abs(T[r, :n_real])
            j = int(np.argmax(entries)) if entries.size else -1
            if j >= 0 and entries[j] > 1e-9:
                _pivot(T, r, j)
                basis[r] = j
                keep.append(r)
            # otherwise the row is redundant and is dropped
        T = np.vstack([T[keep][:, list(range(n_real)) + [T.shape[1] - 1]], np.zeros((1, n_real + 1))])
        basis = [basis[r] for r in keep]
        rows_kept = keep
    else:
        T = np.delete(T, np.s_[n_real:n_real + n_art], axis=1)
        rows_kept = list(range(m))

    # phase 2 objective row: reduced costs c_j - c_B B^-1 A_j
    cost = np.zeros(n_real)
    cost[:nz] = c
    T[-1, :n_real] = cost
    T[-1, -1] = 0.0
    for r, j in enumerate(basis):
        if cost[j] != 0.0:
            T[-1] -= cost[j] * T[r]
    status, it = _bland_phase(T, basis, n_real, max_iter)
    iterations += it
    if status == "unbounded":
        return LPSolution(LPStatus.UNBOUNDED, iterations=iterations)

    z_full = _refine(rows[rows_kept], rhs[rows_kept], basis, n_real, T)
    z = z_full[:nz]
    x = back @ z
    _check_feasible(problem, x)
    return LPSolution(LPStatus.OPTIMAL, x=x, value=float(problem.c @ x), iterations=iterations)


def _refine(rows: np.ndarray, rhs: np.ndarray, basis: list[int], n_real: int, T: np.ndarray) -> np.ndarray:
    z = np.zeros(n_real)
    if not basis:
        return z
    B = rows[:, basis]
    try:
        zb = np.linalg.solve(B, rhs)
    except np.linalg.LinAlgError:
        zb = T[:-1, -1]
    if not np.all(np.isfinite(zb)) or np.abs(zb - T[:-1, -1]).max() > 1e-6 * max(1.0, np.abs(zb).max()):
        zb = T[:-1, -1]
    z[basis] = np.maximum(zb, 0.0)
    return z


def _check_feasible(p: LPProblem, x: np.ndarray) -> None:
    tol = settings.get().lp_feasibility
    scale = 1.0 + float(np.abs(x).max(initial=0.0))
    viol = 0.0
    if p.A_ub.shape[0]:
        viol = max(viol, float((p.A_ub @ x - p.b_ub).max()))
    if p.A_eq.shape[0]:
        viol = max(viol, float(np.abs(p.A_eq @ x - p.b_eq).max()))
    if p.nonneg.any():
        viol = max(viol, float(-x[p.nonneg].min()))
    if viol > tol * scale:
        raise NumericalFailure(f"LP solution violates constraints by {viol:.3e}")
