"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 usage/domain error, 3 quadrature
failure, 4 root-solver failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .base import (BodyMeasures, ConeGeom, CylinderGeom, DomainError, QuadratureError,
                   RootError, ToleranceConfig)
from .cone import cone_measures
from .cylinder import cyl_measures
from .elliptic import eta, xi
from .halfcone import HalfSide, half_measures, instantaneous_ratios
from .optimize import PROBLEMS, solve
from .verify import run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_QUAD, EXIT_SOLVER, EXIT_IO = range(6)

MEASURE_FIELDS = ("volume", "area_lateral", "area_total", "integrated_mean_curvature",
                  "edge_term", "mean_width")
CSV_COLUMNS = ("body", "a", "b") + MEASURE_FIELDS + ("provenance",)


class _Fmt:
    def __init__(self, digits: int | None):
        self.digits = 17 if digits is None else digits

    def num(self, x: float) -> str:
        return format(x, f".{self.digits}g")

    def clean(self, obj):
        """Round floats for display only; never fed back into computation."""
        if isinstance(obj, float):
            return float(self.num(obj)) if math.isfinite(obj) else obj
        if isinstance(obj, dict):
            return {k: self.clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self.clean(v) for v in obj]
        return obj


def _measures(body: str, a: float, b: float) -> BodyMeasures:
    if body == "cylinder":
        return cyl_measures(CylinderGeom(a, b))
    return cone_measures(ConeGeom(a, b))


def _record(body, a, b, m: BodyMeasures) -> dict:
    return {"body": body, "a": a, "b": b, "measures": m.as_dict(), "provenance": "closed_form"}


def _csv_rows(records, fmt: _Fmt) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r["body"], fmt.num(r["a"]), fmt.num(r["b"])]
                   + [fmt.num(r["measures"][k]) for k in MEASURE_FIELDS] + [r["provenance"]])
    return buf.getvalue()


def _text(obj, fmt: _Fmt, indent: str = "") -> str:
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, fmt, indent + "  "))
        elif isinstance(v, float):
            lines.append(f"{indent}{k}: {fmt.num(v)}")
        elif isinstance(v, (list, tuple)):
            lines.append(f"{indent}{k}: " + ", ".join(fmt.num(x) if isinstance(x, float) else str(x) for x in v))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _emit(obj, args, out=None):
    fmt = _Fmt(args.digits)
    out = out or sys.stdout
    if args.format == "json":
        out.write(json.dumps(fmt.clean(obj), indent=2) + "\n")
    elif args.format == "text":
        out.write(_text(obj, fmt) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        flat = _flatten(obj)
        w.writerow(flat.keys())
        w.writerow(fmt.num(v) if isinstance(v, float) else v for v in flat.values())
        out.write(buf.getvalue())


def _flatten(obj, prefix=""):
    flat = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            for i, x in enumerate(v):
                flat[f"{key}.{i}"] = x
        else:
            flat[key] = v
    return flat


# -- commands --------------------------------------------------------------------

def cmd_measures(args) -> int:
    rec = _record(args.body, args.a, args.b, _measures(args.body, args.a, args.b))
    if args.format == "csv":
        sys.stdout.write(_csv_rows([rec], _Fmt(args.digits)))
    else:
        _emit(rec, args)
    return EXIT_OK


def cmd_split(args) -> int:
    g = ConeGeom(args.a, args.b)
    out = {"body": "halfcone", "a": g.a, "b": g.b, "provenance": "quadrature"}
    for side in HalfSide:
        out[side.value] = half_measures(g, side).as_dict()
        del out[side.value]["side"]
    out["ratios"] = instantaneous_ratios(g)
    _emit(out, args)
    return EXIT_OK


def cmd_solve(args) -> int:
    _emit(solve(args.problem).as_dict(), args)
    return EXIT_OK


def cmd_constants(args) -> int:
    _emit({"xi_1": xi(1.0), "xi_2_over_pi": xi(2 / math.pi),
           "eta_1_over_pi": eta(1 / math.pi)}, args)
    return EXIT_OK


def _grid(lo, hi, steps, name):
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi or steps < 1:
        raise DomainError(f"invalid {name} range [{lo}, {hi}] with {steps} steps")
    if steps == 1:
        if lo != hi:
            raise DomainError(f"{name}: one step needs lo == hi")
        return [lo]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def cmd_sweep(args) -> int:
    na, nb = (args.steps * 2)[:2] if len(args.steps) == 1 else args.steps
    a_vals = _grid(*args.a_range, na, "a")
    b_vals = _grid(*args.b_range, nb, "b")
    if a_vals[0] < 0 or b_vals[0] <= 0:
        raise DomainError("sweep needs a >= 0 and b > 0 throughout")
    records = [_record(args.body, a, b, _measures(args.body, a, b))
               for a in a_vals for b in b_vals]
    fmt = _Fmt(args.digits)
    if args.format == "csv":
        text = _csv_rows(records, fmt)
    elif args.format == "json":
        text = json.dumps(fmt.clean(records), indent=2) + "\n"
    else:
        text = "\n\n".join(_text(r, fmt) for r in records) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.tol > 0:
        raise DomainError(f"--tol must be positive, got {args.tol}")
    tol = ToleranceConfig(oracle_rel=args.tol)
    report = run_suite(args.suite, tol=tol, seed=args.seed, samples=args.samples)
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_VERIFY


# -- parser ----------------------------------------------------------------------

def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format (default text; csv for sweep)")
    common.add_argument("--digits", type=int, default=None,
                        help="significant digits shown (display only; default 17)")

    p = argparse.ArgumentParser(prog="oblique", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("measures", parents=[common], help="volume, areas, mean width of a body")
    s.add_argument("body", choices=("cylinder", "cone"))
    s.add_argument("a", type=float)
    s.add_argument("b", type=float)
    s.set_defaults(func=cmd_measures)

    s = sub.add_parser("split", parents=[common], help="half-cone measures and ratios")
    s.add_argument("a", type=float)
    s.add_argument("b", type=float)
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("solve", parents=[common], help="optimal apex offset of a ratio problem")
    s.add_argument("problem", choices=tuple(PROBLEMS))
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("constants", parents=[common], help="xi(1), xi(2/pi), eta(1/pi)")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("sweep", parents=[common], help="measures over an (a, b) grid, a-major")
    s.add_argument("body", choices=("cylinder", "cone"))
    s.add_argument("--a-range", nargs=2, type=float, metavar=("LO", "HI"), required=True)
    s.add_argument("--b-range", nargs=2, type=float, metavar=("LO", "HI"), required=True)
    s.add_argument("--steps", nargs="+", type=int, default=[5], metavar="N",
                   help="grid points per axis (one value, or one for a and one for b)")
    s.add_argument("--out", default=None, help="output file (default stdout)")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", help="closed forms against the independent oracles")
    s.add_argument("suite", nargs="?", choices=("cylinder", "cone", "halfcone", "all"), default="all")
    s.add_argument("--tol", type=float, default=1e-10, help="relative tolerance of quadrature checks")
    s.add_argument("--seed", type=_u64, default=0)
    s.add_argument("--samples", type=int, default=200_000, help="Monte Carlo sample count")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", "text") is None:
        args.format = "csv" if args.command == "sweep" else "text"
    if getattr(args, "digits", None) is not None and args.digits < 1:
        parser.error("--digits must be at least 1")
    if getattr(args, "command", None) == "sweep" and len(args.steps) > 2:
        parser.error("--steps takes one or two values")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUAD
    except RootError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    raise SystemExit(main())
