"""Global tolerance record.

All predicates in the package read their tolerances from a single
:class:`Tolerances` instance.  The environment variable ``RDR_TOL``
overrides the geometric and tightness tolerances at import time; :func:`using` swaps
the record for the duration of a ``with`` block.
"""
from __future__ import annotations

import contextlib
import dataclasses
import math
import os


@dataclasses.dataclass(frozen=True)
class Tolerances:
    geometric: float = 1e-9
    dedup: float = 1e-12
    lp_feasibility: float = 1e-9
    lp_pivot: float = 1e-13
    contact: float = 1e-7
    tight: float = 1e-9
    equality_case: float = 1e-6


def _from_env() -> tuple[Tolerances, str | None]:
    """Defaults plus ``RDR_TOL``; a bad value is reported, not raised."""
    raw = os.environ.get("RDR_TOL")
    if not raw:
        return Tolerances(), None
    try:
        value = float(raw)
    except ValueError:
        value = math.nan
    if not (value > 0 and math.isfinite(value)):
        return Tolerances(), f"RDR_TOL must be a positive number, got {raw!r}"
    return Tolerances(geometric=value, tight=value), None


_current, ENV_ERROR = _from_env()


def get() -> Tolerances:
    return _current


def set_tolerances(tol: Tolerances) -> None:
    global _current
    _current = tol


@contextlib.contextmanager
def using(**overrides):
    """Temporarily replace fields of the active tolerance record."""
    global _current
    saved = _current
    _current = dataclasses.replace(saved, **overrides)
    try:
        yield _current
    finally:
        _current = saved
