"""Command-line front end.

Exit status: 0 on success, 1 for invalid input, 2 for a degenerate numerical
condition or an inconclusive certificate.  Errors are written to stderr as a
JSON object ``{"error": <name>, "message": <text>}``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import InvalidInput, LaterationError, NumericalCondition
from .experiments import monte_carlo, region_map
from .model import GroundTruth, Scenario, load_json, satellites_from_doc, synthesize_times, validate
from .numkernel import DEFAULT_TOL, Tolerance
from .solver import solve
from .uniqueness import certify_uniqueness, classify_uniqueness, sample_hyperboloid_witness


class UsageError(InvalidInput):
    pass


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats written to 17 significant digits; NaN/inf become null."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return f"{v:.17g}" if math.isfinite(v) else "null"
    if obj is None:
        return "null"
    return json.dumps(obj)


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"cannot parse vector {text!r}") from exc


def _parse_bbox(text: str, n: int) -> list:
    """``lo,hi;lo,hi`` with one pair per dimension, or a single pair for all."""
    pairs = [_parse_vector(p) for p in text.split(";")]
    if any(len(p) != 2 for p in pairs):
        raise UsageError("bbox entries must be lo,hi pairs")
    if len(pairs) == 1:
        pairs = pairs * n
    if len(pairs) != n:
        raise UsageError(f"bbox has {len(pairs)} pairs, satellites have dimension {n}")
    return [tuple(p) for p in pairs]


def _load(path):
    if path is None:
        raise UsageError("missing input file")
    try:
        return load_json(path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tol(args) -> Tolerance:
    try:
        return Tolerance(args.rank_tol, args.class_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    tol = _tol(args)
    s = validate(Scenario.from_json(_load(args.input)), tol)
    _emit(args, dumps(solve(s, tol).to_json()))
    return 0


def cmd_synth(args) -> int:
    tol = _tol(args)
    sats = satellites_from_doc(_load(args.satellites))
    if args.input:
        truth = GroundTruth.from_json(_load(args.input))
    elif args.user:
        truth = GroundTruth(_parse_vector(args.user), args.bias)
    else:
        raise UsageError("synth needs --user or --in with a ground-truth document")
    _emit(args, dumps(synthesize_times(sats, truth, tol).to_json()))
    return 0


def cmd_classify(args) -> int:
    tol = _tol(args)
    if args.user is None:
        raise UsageError("classify needs --user")
    sats = satellites_from_doc(_load(args.satellites))
    x = _parse_vector(args.user)
    if x.shape[0] != sats.shape[1]:
        raise UsageError("user position and satellites differ in dimension")
    _emit(args, dumps(classify_uniqueness(sats, x, tol, args.bias).to_json()))
    return 0


def cmd_certify(args) -> int:
    tol = _tol(args)
    res = certify_uniqueness(satellites_from_doc(_load(args.satellites)), None, tol)
    _emit(args, dumps(res.to_json()))
    return 0 if res.certified else 2


def cmd_witness(args) -> int:
    try:
        x, sats = sample_hyperboloid_witness(args.n, args.m, args.seed, tol=_tol(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, dumps({"dimension": args.n, "user": x, "satellites": sats}))
    return 0


def cmd_montecarlo(args) -> int:
    try:
        h = monte_carlo(args.n, args.m, args.configs, args.users, args.seed, args.box,
                        _tol(args), args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, h.to_csv())
    return 0


def cmd_regionmap(args) -> int:
    tol = _tol(args)
    sats = satellites_from_doc(_load(args.satellites))
    if args.bbox is None:
        raise UsageError("regionmap needs --bbox")
    bbox = _parse_bbox(args.bbox, sats.shape[1])
    try:
        rm = region_map(sats, bbox, args.resolution, tol)
    except InvalidInput:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, rm.to_csv())
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--rank-tol", type=float, default=DEFAULT_TOL.rank_rel)
    common.add_argument("--class-tol", type=float, default=DEFAULT_TOL.class_abs)

    p = _Parser(prog="lateration", description="Exact multilateration and uniqueness analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve", parents=[common], help="solve a scenario")
    sp.add_argument("--in", dest="input", required=True, help="scenario JSON")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("synth", parents=[common], help="synthesize arrival times")
    sp.add_argument("--satellites", required=True)
    sp.add_argument("--in", dest="input", help="ground-truth JSON with user and bias")
    sp.add_argument("--user", help="comma-separated user position")
    sp.add_argument("--bias", type=float, default=0.0)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("classify", parents=[common], help="is this user position unique?")
    sp.add_argument("--satellites", required=True)
    sp.add_argument("--user", required=True)
    sp.add_argument("--bias", type=float, default=0.0)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("certify", parents=[common], help="certify uniqueness for all positions")
    sp.add_argument("--satellites", required=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("witness", parents=[common], help="sample an ambiguous configuration")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("montecarlo", parents=[common], help="uniqueness histogram (CSV)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--configs", type=int, default=10000)
    sp.add_argument("--users", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--box", type=float, default=1.0, help="half-width of the sampling cube")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_montecarlo)

    sp = sub.add_parser("regionmap", parents=[common], help="uniqueness case on a grid (CSV)")
    sp.add_argument("--satellites", required=True)
    sp.add_argument("--bbox", required=True, help="lo,hi;lo,hi (one pair per axis)")
    sp.add_argument("--resolution", type=int, default=100)
    sp.set_defaults(func=cmd_regionmap)
    return p


def _fail(exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InvalidInput as exc:
        return _fail(exc, 1)
    except NumericalCondition as exc:
        return _fail(exc, 2)
    except LaterationError as exc:
        return _fail(exc, 2)


if __name__ == "__main__":
    sys.exit(main())
