"""Command-line interface.

Exit codes: 0 success or feasible, 1 infeasible or suite failure,
2 usage or parse error, 3 degenerate input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import diagram, settings, verify
from .errors import DegenerateBody, DomainError, RdrError, UnknownName
from .functionals import FunctionalTriple, circumradius, diameter, inradius
from .geometry import Gauge, VBody
from .simplices import isosceles_simplex, short_edge_for_five_diametral


class UsageError(Exception):
    pass


def dumps17(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return json.dumps(None)
        return f"{v:.17g}" if v != int(v) or abs(v) >= 1e16 else f"{v:.1f}"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps17(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps17(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _output_path(path: str | None) -> None:
    if path is None:
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise UsageError(f"output directory does not exist: {parent}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _load_body(path: str) -> VBody:
    data = _read_json(path)
    try:
        body = VBody.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad body file {path}: {exc}")
    if body.dim != 3:
        raise UsageError(f"the command line works in dimension 3, got {body.dim}")
    return body


def cmd_functionals(args) -> int:
    body = _load_body(args.input)
    gauge = None
    if args.gauge:
        data = _read_json(args.gauge)
        try:
            gauge = Gauge.from_json(data, dim=3)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad gauge file {args.gauge}: {exc}")
    out = {"r": inradius(body), "D": diameter(body)[0], "R": circumradius(body)[0]}
    if gauge is not None:
        out["r_gauge"] = inradius(body, gauge)
    if not body.full_dimensional:
        out["note"] = "planar" if body.affine_dim == 2 else f"affine dimension {body.affine_dim}"
    print(dumps17(out))
    return 0


def cmd_check(args) -> int:
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    verdict = diagram.check_complete_system(FunctionalTriple(args.r, args.D, args.R), tol=args.tol)
    print(dumps17(verdict.to_json()))
    return 0 if verdict.feasible else 1


def cmd_boundary(args) -> int:
    _output_path(args.out)
    text = diagram.boundary_to_csv(diagram.boundary_polyline(args.samples))
    _emit(text, args.out)
    return 0


def cmd_sample(args) -> int:
    _output_path(args.out)
    _output_path(args.svg)
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    rows = diagram.sample_diagram(families, args.n, args.seed)
    _emit(diagram.rows_to_csv(rows), args.out)
    if args.svg:
        diagram.render_svg(rows, diagram.boundary_polyline(args.boundary_samples), args.svg)
    return 0


def cmd_isosceles(args) -> int:
    S = isosceles_simplex(args.diameter, args.R)
    out = {
        "D": args.diameter,
        "R": args.R,
        "short_edge": short_edge_for_five_diametral(args.diameter, args.R),
        "vertices": S.vertices.tolist(),
        "r": inradius(S),
    }
    print(dumps17(out))
    return 0


def cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, args.trials, args.seed)
    print(dumps17(report.to_json()))
    return 0 if report.passed else 1


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rdr", description="Inradius, diameter and circumradius of convex bodies in 3-space.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("functionals", help="compute r, D, R of a body given as JSON")
    s.add_argument("input")
    s.add_argument("--gauge", help="gauge JSON for the generalized inradius")
    s.set_defaults(func=cmd_functionals)

    s = sub.add_parser("check", help="test a triple against the complete system of inequalities")
    s.add_argument("--r", type=_finite, required=True)
    s.add_argument("--D", type=_finite, required=True)
    s.add_argument("--R", type=_finite, required=True)
    s.add_argument("--tol", type=_finite, default=None, help="tightness tolerance (default 1e-9 or RDR_TOL)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("boundary", help="write the diagram boundary as CSV")
    s.add_argument("--samples", type=_positive_int, default=100)
    s.add_argument("--out")
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("sample", help="sample bodies and write their diagram points")
    s.add_argument("--families", default=",".join(diagram.FAMILIES))
    s.add_argument("--n", type=_positive_int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--svg")
    s.add_argument("--boundary-samples", type=_positive_int, default=200)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("isosceles", help="coordinates and inradius of the five-diametral-edge simplex")
    s.add_argument("--diameter", type=_finite, required=True)
    s.add_argument("--R", type=_finite, default=1.0)
    s.set_defaults(func=cmd_isosceles)

    s = sub.add_parser("verify", help="run a property suite")
    s.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    s.add_argument("--trials", type=_positive_int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if settings.ENV_ERROR:
        print(f"error: {settings.ENV_ERROR}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, DomainError, UnknownName) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateBody as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 3
    except RdrError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
