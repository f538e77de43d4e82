"""Command-line interface: ``einstab <command> ...`` or ``python3 -m einstab``.

Exit codes: 0 success, 1 reproduction mismatch, 2 usage error,
3 precondition failure (metric not Einstein).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .catalog import FAMILIES, CatalogError, parse_space
from .curvature import curvature_report
from .flow import flow, write_csv
from .lichnerowicz import NotEinsteinError, classify
from .solvers import solve_auto, solve_numeric
from .space import DescriptorError, DiagonalMetric, descriptor_to_dict
from .tables import GATED_IDS, TABLE_IDS, fmt, reproduce

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_NOT_EINSTEIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_metric(text: str) -> DiagonalMetric:
    """``1,1,2`` or ``1/2,1,3/4`` give exact coefficients, decimals give floats."""
    values = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise UsageError(f"empty coefficient in metric {text!r}")
        try:
            values.append(float(tok) if any(c in tok for c in ".eE") else Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse metric coefficient {tok!r}") from None
    try:
        return DiagonalMetric(tuple(values))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _space(spec: str):
    try:
        return parse_space(spec)
    except (CatalogError, DescriptorError, OSError, ValueError) as exc:
        raise UsageError(f"cannot load space {spec!r}: {exc}") from None


def _num(value):
    """JSON value: exact rationals as strings, floats as numbers."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


# --- spaces ----------------------------------------------------------------------

def cmd_spaces(args) -> int:
    if args.action == "list":
        if args.format == "json":
            print(json.dumps([{"name": k, "description": v} for k, v in FAMILIES.items()], indent=2))
        else:
            width = max(map(len, FAMILIES))
            for name, desc in FAMILIES.items():
                print(f"{name.ljust(width)}  {desc}")
        return EXIT_OK
    if not args.name:
        raise UsageError("spaces show needs a space name")
    space = _space(args.name)
    if args.format == "json":
        print(json.dumps(descriptor_to_dict(space), indent=2))
        return EXIT_OK
    print(f"name: {space.name}")
    if space.notes:
        print(f"notes: {space.notes}")
    print(f"r: {space.r}  n: {space.n}")
    print(f"dims: ({', '.join(map(str, space.dims))})")
    print(f"killing: ({', '.join(fmt(b) for b in space.killing)})")
    print(f"trivial_dim: {space.trivial_dim}")
    print("constants:")
    for triple, value in space.constants:
        print(f"  [{''.join(map(str, triple))}] = {fmt(value)}")
    return EXIT_OK


# --- curvature and classification ----------------------------------------------------

def cmd_curvature(args) -> int:
    space = _space(args.space)
    g = parse_metric(args.metric)
    if len(g) != space.r:
        raise UsageError(f"metric has {len(g)} coefficients, space has r={space.r}")
    rep = curvature_report(space, g)
    doc = {
        "space": space.name,
        "metric": [fmt(v) for v in g.x],
        "ricci": [_num(v) for v in rep.rho],
        "scalar": _num(rep.scalar),
        "scalar_normalized": _num(rep.scalar_normalized),
        "einstein_residual": rep.einstein_residual,
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"space: {space.name}  metric: ({', '.join(doc['metric'])})")
        print(f"ricci: ({', '.join(fmt(v) for v in rep.rho)})")
        print(f"scalar: {fmt(rep.scalar)}")
        print(f"scalar_normalized: {fmt(rep.scalar_normalized)}")
        print(f"einstein_residual: {rep.einstein_residual:.3e}")
    return EXIT_OK


def verdict_doc(space, g, v) -> dict:
    """Stable JSON schema of ``classify``."""
    return {
        "space": space.name,
        "metric": [fmt(x) for x in g.x],
        "two_rho": float(v.two_rho),
        "two_rho_exact": str(v.two_rho) if isinstance(v.two_rho, Fraction) else None,
        "lambda_p": v.lambda_min if v.tt_spectrum else None,
        "lambda_max": v.lambda_max if v.tt_spectrum else None,
        "tt_spectrum": list(v.tt_spectrum),
        "kind": v.kind.value,
        "coindex": v.coindex,
        "ricci_locally_invertible": v.ricci_locally_invertible,
        "margin": None if v.margin == float("inf") else v.margin,
        "tolerance": v.tolerance,
    }


def cmd_classify(args) -> int:
    space = _space(args.space)
    g = parse_metric(args.metric)
    if len(g) != space.r:
        raise UsageError(f"metric has {len(g)} coefficients, space has r={space.r}")
    try:
        v = classify(space, g, tol=args.tol)
    except NotEinsteinError as exc:
        print(f"error: not an Einstein metric, residual {exc.residual:.6e}", file=sys.stderr)
        return EXIT_NOT_EINSTEIN
    doc = verdict_doc(space, g, v)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"space: {space.name}  metric: ({', '.join(doc['metric'])})")
    print(f"2rho: {fmt(v.two_rho)}")
    print(f"lambda_p: {fmt(doc['lambda_p'])}")
    print(f"lambda_max: {fmt(doc['lambda_max'])}")
    print(f"tt_spectrum: [{', '.join(fmt(x) for x in v.tt_spectrum)}]")
    print(f"verdict: {v.kind.value}  coindex: {v.coindex}")
    print(f"ricci_locally_invertible: {str(v.ricci_locally_invertible).lower()}")
    print(f"margin: {fmt(doc['margin'])}  tolerance: {v.tolerance:g}")
    return EXIT_OK


# --- Einstein metrics ----------------------------------------------------------------

def cmd_einstein(args) -> int:
    space = _space(args.space)
    sols = solve_auto(space) if args.method == "auto" else solve_numeric(space)
    docs = []
    for sol in sols:
        if not sol.exists:
            docs.append({"label": sol.label, "source": sol.source.value, "exists": False, "reason": sol.reason})
            continue
        v = classify(space, sol.metric, tol=args.tol)
        docs.append({
            "label": sol.label,
            "source": sol.source.value,
            "exists": True,
            "metric": [fmt(x) for x in sol.metric.x],
            "two_rho": float(sol.two_rho),
            "residual": sol.residual,
            "kind": v.kind.value,
            "coindex": v.coindex,
            "tt_spectrum": list(v.tt_spectrum),
        })
    if args.format == "json":
        print(json.dumps({"space": space.name, "solutions": docs}, indent=2))
        return EXIT_OK
    found = sum(d["exists"] for d in docs)
    print(f"space: {space.name}  Einstein metrics found: {found}")
    for d in docs:
        if not d["exists"]:
            print(f"  {d['label']}: absent ({d['reason']}) [{d['source']}]")
            continue
        print(f"  {d['label']}: ({', '.join(d['metric'])})  2rho={d['two_rho']:.10g}  "
              f"residual={d['residual']:.1e}  {d['kind']} coindex {d['coindex']}  [{d['source']}]")
    return EXIT_OK


# --- tables ------------------------------------------------------------------------------

def cmd_reproduce(args) -> int:
    report = reproduce(args.table, args.descriptor_dir)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render())
    if not report.complete:
        return EXIT_USAGE
    return EXIT_OK if report.passed else EXIT_MISMATCH


# --- flow ---------------------------------------------------------------------------------

def cmd_flow(args) -> int:
    space = _space(args.space)
    x0 = parse_metric(args.x0)
    if len(x0) != space.r:
        raise UsageError(f"x0 has {len(x0)} coefficients, space has r={space.r}")
    try:
        traj = flow(space, x0, t_max=args.t_max, dt=args.dt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        write_csv(traj, args.out)
    final = traj.final
    print(f"terminal: {traj.terminal.value}  t={traj.times[-1]:.6g}  value={traj.terminal_value:.3e}")
    print(f"final: ({', '.join(f'{v:.10g}' for v in final.as_float())})")
    print(f"scalar: {traj.scalars[0]:.10g} -> {traj.scalars[-1]:.10g}")
    if args.out:
        print(f"wrote {len(traj.times)} rows to {args.out}")
    return EXIT_OK


# --- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="einstab", description="G-stability of homogeneous Einstein metrics")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt_flag(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("spaces", help="list catalog families or show one descriptor")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    fmt_flag(p)
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser("curvature", help="Ricci eigenvalues and scalar curvature of a metric")
    p.add_argument("--space", required=True)
    p.add_argument("--metric", required=True, help="x1,...,xr; p/q for exact values")
    fmt_flag(p)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("classify", help="stability type of an Einstein metric")
    p.add_argument("--space", required=True)
    p.add_argument("--metric", required=True, help="x1,...,xr; p/q for exact values")
    p.add_argument("--tol", type=float, default=None, help="classification tolerance (default: ESW_TOL or 1e-7)")
    fmt_flag(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("einstein", help="find all invariant Einstein metrics")
    p.add_argument("--space", required=True)
    p.add_argument("--method", choices=("auto", "numeric"), default="auto")
    p.add_argument("--tol", type=float, default=None)
    fmt_flag(p)
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("reproduce", help="recompute a table and diff against embedded values")
    p.add_argument("--table", required=True, choices=TABLE_IDS + GATED_IDS)
    p.add_argument("--descriptor-dir", default=None, help="descriptor files for the flag tables")
    fmt_flag(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("flow", help="integrate the normalized Ricci flow")
    p.add_argument("--space", required=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--out", default=None, help="CSV path")
    p.set_defaults(func=cmd_flow)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
