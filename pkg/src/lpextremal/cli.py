"""Command-line front end.

Subcommands: center, ratio, simplex, generate, check-lemma, trend.  A JSON
report goes to stdout and a one-line summary to stderr.

Exit codes: 0 success, 1 lemma violation, 2 parse/validation error,
3 solver non-convergence, 4 empty greedy intersection.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import fileio
from .chebyshev import (
    NonConvergence,
    SolverConfig,
    chebyshev_center,
    extract_certificate,
    t_identity,
    verify_certificate,
)
from .extremal import (
    DegenerateSet,
    basis_radius_oracle,
    chernykh_check,
    extremality_report,
    generate_basis_set,
    generate_hadamard_set,
    jung_constant,
)
from .lp_core import LpSpace, diameter
from .simplex_extract import ExtractionParams, IntersectionEmpty, extract_simplex, packing_lower_bound

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_NONCONVERGENCE = 3
EXIT_INTERSECTION = 4


class UsageError(ValueError):
    pass


def _config(args) -> SolverConfig:
    return SolverConfig(tol=args.tol, max_iters=args.max_iters, seed=args.seed)


def _read_input(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    return fileio.loads(text, args.p), fileio.digest(text)


def _center_block(A, res, cfg: SolverConfig) -> dict:
    block = {
        "center": [float(x) for x in res.center],
        "radius": res.radius,
        "iterations": res.iterations,
        "certificate_residual": res.certificate_residual,
    }
    if res.radius > 0:
        cert = extract_certificate(A, res.center, cfg.active_tol)
        check = verify_certificate(A, res.center, cert, cfg.tol)
        block["certificate"] = {
            "active_indices": [int(i) for i in cert.active_indices],
            "weights": [float(a) for a in cert.weights],
            "radius": cert.radius,
        }
        block["residuals"] = check.as_dict()
        block["t_identity"] = t_identity(A, res.center, cert)
        block["t_identity_residual"] = abs(block["t_identity"] - 2.0 * cert.radius)
    return block


def cmd_center(args):
    A, dig = _read_input(args)
    cfg = _config(args)
    try:
        res = chebyshev_center(A, cfg)
    except NonConvergence as e:
        return {"input_digest": dig, "error": str(e), "best": _center_block(A, e.best, cfg)}, EXIT_NONCONVERGENCE
    block = _center_block(A, res, cfg)
    return {"input_digest": dig, "results": block}, EXIT_OK


def cmd_ratio(args):
    A, dig = _read_input(args)
    cfg = _config(args)
    rep = extremality_report(A, cfg)
    return {"input_digest": dig, "results": rep.as_dict()}, EXIT_OK


def cmd_simplex(args):
    A, dig = _read_input(args)
    cfg = _config(args)
    params = ExtractionParams(args.m, args.delta)
    d = diameter(A)
    try:
        res = extract_simplex(A, params, cfg)
    except IntersectionEmpty as e:
        return {
            "input_digest": dig,
            "error": str(e),
            "found": [int(i) for i in e.found],
            "diameter": d,
            "diagnostics": e.diagnostics.as_dict(),
        }, EXIT_INTERSECTION
    return {
        "input_digest": dig,
        "results": {
            "vertex_indices": [int(i) for i in res.vertex_indices],
            "min_edge": res.min_edge,
            "edge_bound": d * (1.0 - params.delta) ** (1.0 / A.p),
            "diameter": d,
            "feasibility_margin": res.diagnostics.feasibility_margin,
            "lambda": res.diagnostics.lam,
            "diagnostics": res.diagnostics.as_dict(),
        },
    }, EXIT_OK


def _generate(kind: str, size: int, p: float):
    s = LpSpace(p)
    if kind == "basis":
        return generate_basis_set(size, s)
    return generate_hadamard_set(size, s)


def cmd_generate(args):
    if args.p is None:
        raise UsageError("--p is required")
    A = _generate(args.kind, args.size, args.p)
    text = fileio.dumps(A)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return {"results": {"kind": args.kind, "size": args.size, "p": A.p, "n_points": len(A),
                            "dim": A.dim, "out": args.out, "digest": fileio.digest(text)}}, EXIT_OK
    sys.stdout.write(text)
    return None, EXIT_OK


def cmd_check_lemma(args):
    if args.p is None:
        raise UsageError("--p is required")
    s = LpSpace(args.p)
    rng = np.random.default_rng(args.seed)
    ab = rng.uniform(-args.range, args.range, size=(2, args.samples))
    a, b = ab
    res = chernykh_check(a, b, s)
    scale = np.maximum(1.0, np.abs(a) ** s.p + np.abs(b) ** s.p)
    rel = res / scale
    bad = np.flatnonzero(rel < -1e-10)
    k = int(np.argmin(rel))
    out = {
        "p": s.p,
        "inequality": "i" if s.p <= 2 else "ii",
        "samples": args.samples,
        "min_residual": float(res.min()),
        "min_relative_residual": float(rel[k]),
        "argmin": [float(a[k]), float(b[k])],
        "violations": int(bad.size),
    }
    return {"results": out}, (EXIT_VIOLATION if bad.size else EXIT_OK)


def _parse_sizes(text: str) -> list:
    sizes = [int(x) for x in text.replace(" ", "").split(",") if x]
    if not sizes:
        raise UsageError("--sizes must list at least one size")
    return sizes


TREND_COLUMNS = ["size", "n_points", "p", "diameter", "radius", "jung", "ratio", "gap", "oracle_ratio", "packing_bound"]


def trend_rows(kind: str, p: float, sizes: list, m: int, cfg: SolverConfig) -> list:
    rows = []
    for size in sizes:
        A = _generate(kind, size, p)
        rep = extremality_report(A, cfg)
        oracle = ""
        if kind == "basis":
            oracle = basis_radius_oracle(size, A.space) / (rep.jung * rep.diameter)
        pack = packing_lower_bound(A, m, cfg) if len(A) >= m + 1 else ""
        rows.append([size, len(A), p, rep.diameter, rep.radius, rep.jung, rep.ratio, rep.gap, oracle, pack])
    return rows


def cmd_trend(args):
    if args.p is None:
        raise UsageError("--p is required")
    sizes = _parse_sizes(args.sizes)
    cfg = _config(args)
    rows = trend_rows(args.kind, args.p, sizes, args.m, cfg)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TREND_COLUMNS)
    for row in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
        return {"results": {"kind": args.kind, "p": args.p, "sizes": sizes, "out": args.out,
                            "ratios": [r[6] for r in rows]}}, EXIT_OK
    sys.stdout.write(buf.getvalue())
    return None, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, default=None, help="exponent p (overrides the input file)")
    common.add_argument("--tol", type=float, default=1e-8, help="certificate residual target (default: 1e-8)")
    common.add_argument("--max-iters", type=int, default=100_000, dest="max_iters")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    ap = argparse.ArgumentParser(prog="lpextremal", description="Chebyshev centers and extremal sets in l_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [
        ("center", cmd_center, "Chebyshev center, radius and certificate residuals"),
        ("ratio", cmd_ratio, "diameter, radius, Jung constant, extremality ratio and gap"),
        ("simplex", cmd_simplex, "greedy m-simplex with near-diameter edges"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", nargs="?", default=None, help="point-set file (default: stdin)")
        if name == "simplex":
            sp.add_argument("--m", type=int, required=True)
            sp.add_argument("--delta", type=float, required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("generate", parents=[common], help="write a basis or Hadamard point-set file")
    sp.add_argument("kind", choices=["basis", "hadamard"])
    sp.add_argument("--size", type=int, required=True, help="n for basis, k (2^k points) for hadamard")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("check-lemma", parents=[common], help="sample the scalar inequality used in the packing argument")
    sp.add_argument("--samples", type=int, default=1_000_000)
    sp.add_argument("--range", type=float, default=10.0)
    sp.set_defaults(func=cmd_check_lemma)

    sp = sub.add_parser("trend", parents=[common], help="CSV of ratio and packing bound against family size")
    sp.add_argument("kind", choices=["basis", "hadamard"])
    sp.add_argument("--sizes", required=True, help="comma-separated sizes")
    sp.add_argument("--m", type=int, default=2, help="simplex dimension for the packing bound")
    sp.set_defaults(func=cmd_trend)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        report, code = args.func(args)
    except (fileio.ParseError, UsageError, DegenerateSet, ValueError, OSError) as e:
        report, code = {"error": str(e)}, EXIT_PARSE
    if report is not None:
        report = {"command": ["lpextremal", *argv], **report, "wall_time": time.perf_counter() - t0}
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    status = "ok" if code == EXIT_OK else f"exit {code}"
    msg = report.get("error", "") if report else ""
    print(f"lpextremal {args.command}: {status} {msg}".rstrip(), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
