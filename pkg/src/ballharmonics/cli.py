"""Command-line front end.

Subcommands:
  verify   run verification suites, write JSON/CSV reports
  bloch    univalent-ball radius table for given (n, p, norm, M)
  degree   topological degree of a serialized map at a target
  poisson  solve a Poisson problem file, run membership + covering
  explain  print the formula and design notes behind a check
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .config import resolve_config
from .errors import BallharmonicsError, ConfigError
from .reports import _jsonable


def _add_verify(sub):
    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", default=None, help="suite name (repeatable): lipschitz, schwarz, bloch, degree, poisson, all")
    p.add_argument("--config", default=None, help="flat key = value config file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="ambient dimension")
    p.add_argument("--out", default=None, help="JSON report path")
    p.add_argument("--csv", default=None, help="CSV summary path")


def _add_bloch(sub):
    p = sub.add_parser("bloch", help="univalent-ball radius calculators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--norm", type=float, default=1.0, help="Hardy p-norm of the map")
    p.add_argument("--M", type=float, default=1.0, help="uniform bound for the rho0/R0 radii")
    p.add_argument("--variant", choices=("proof", "statement"), default=None, help="restrict the table to one coefficient variant")
    p.add_argument("--json", action="store_true", help="machine output")


def _add_degree(sub):
    p = sub.add_parser("degree", help="topological degree of a serialized map")
    p.add_argument("--map", required=True, help="JSON file with {n, degree, components}")
    p.add_argument("--target", required=True, help="comma-separated coordinates of the target")
    p.add_argument("--center", default=None, help="ball center (default: origin)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)


def _add_poisson(sub):
    p = sub.add_parser("poisson", help="solve a Poisson problem file and verify membership/covering")
    p.add_argument("--problem", required=True, help="JSON problem file {n, alpha, source, boundary, M}")
    p.add_argument("--mc", type=int, default=1 << 19, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="JSON report path")


def _add_explain(sub):
    p = sub.add_parser("explain", help="describe one check: formula and design notes")
    p.add_argument("name")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballharmonics", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"ballharmonics {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_verify(sub)
    _add_bloch(sub)
    _add_degree(sub)
    _add_poisson(sub)
    _add_explain(sub)
    return parser


def cmd_verify(args) -> int:
    from .suite import run_suite

    cfg = resolve_config(
        file_path=args.config,
        suites=tuple(args.suite) if args.suite else None,
        seed=args.seed,
        n=args.n,
        out_path=args.out,
        csv_path=args.csv,
    )
    report = run_suite(cfg)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.check_name}: constant={check.empirical_constant:.6g} ({check.notes})")
    failures = sum(1 for c in report.checks if not c.passed)
    print(f"{len(report.checks) - failures}/{len(report.checks)} checks passed")
    if args.out:
        print(f"report written to {args.out}")
    return failures


def cmd_bloch(args) -> int:
    from .suite import bloch_table

    table = bloch_table(args.n, args.p, args.norm, args.M)
    if args.json:
        print(json.dumps(_jsonable(table), indent=2, sort_keys=True))
        return 0
    variants = [args.variant] if args.variant else ["proof", "statement"]
    print(f"n = {args.n}, p = {args.p:g}, hardy norm = {args.norm:g}, M = {args.M:g}")
    print(f"{'variant':<12} {'r_star':>12} {'phi_star':>14}")
    for v in variants:
        row = table["variants"][v]
        print(f"{v:<12} {row['r_star']:>12.8f} {row['phi_star']:>14.6e}")
    print(f"rho0 = {table['rho0']:.6e}   R0 = {table['R0']:.6e}")
    return 0


def cmd_degree(args) -> int:
    from .degree import DegreeConfig, degree
    from .geometry import Ball
    from .harmonic import HarmonicMap

    with open(args.map, encoding="utf-8") as fh:
        F = HarmonicMap.from_json(fh.read())
    target = np.array([float(t) for t in args.target.split(",")])
    center = np.zeros(F.n) if args.center is None else np.array([float(t) for t in args.center.split(",")])
    result = degree(F, Ball(center, args.radius), target, DegreeConfig(seed=args.seed))
    print(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    return 0


def _poisson_component(doc, n: int):
    from .polynomials import Polynomial

    if "polynomial" in doc:
        polys = [Polynomial(n, {tuple(int(t) for t in key.split(",")): float(v) for key, v in comp.items()}) for comp in doc["polynomial"]]

        def fn(X):
            X = np.atleast_2d(np.asarray(X, dtype=float))
            return np.column_stack([p.evaluate(X) for p in polys])

        return fn
    builtin = doc.get("builtin")
    if builtin == "zero":
        return lambda X: np.zeros((np.atleast_2d(np.asarray(X, dtype=float)).shape[0], n))
    if builtin == "constant":
        value = float(doc.get("value", 0.0))
        return lambda X: np.full((np.atleast_2d(np.asarray(X, dtype=float)).shape[0], n), value)
    if builtin == "coordinates":
        return lambda X: np.atleast_2d(np.asarray(X, dtype=float))
    raise ConfigError(f"unknown source/boundary spec {doc!r}", fields=["problem"])


def cmd_poisson(args) -> int:
    from .poisson import PoissonProblem, estimate_holder_seminorm, pe_membership, solve_newtonian

    with open(args.problem, encoding="utf-8") as fh:
        doc = json.load(fh)
    n = int(doc["n"])
    alpha = float(doc.get("alpha", 0.5))
    M = float(doc.get("M", 1.0))
    source = _poisson_component(doc["source"], n)
    boundary = _poisson_component(doc.get("boundary", {"builtin": "zero"}), n)
    seminorm = estimate_holder_seminorm(source, n, alpha, pair_count=20_000, seed=args.seed)
    problem = PoissonProblem(n=n, source=source, boundary=boundary, holder_alpha=alpha, holder_seminorm_estimate=seminorm, label=doc.get("label", args.problem))
    solution = solve_newtonian(problem, mc_count=args.mc, seed=args.seed)
    membership = pe_membership(solution, M, seed=args.seed, problem=problem)
    report = {
        "problem": {"n": n, "alpha": alpha, "M": M, "label": problem.label},
        "holder_seminorm_estimate": seminorm,
        "solver": {"method": solution.method, "residual_estimate": solution.residual_estimate, **solution.details},
        "membership": membership.to_dict(),
        "note": "covered-radius values are empirical witnesses, never certified constants",
    }
    if membership.details["center_residual"] < 1e-6:
        from .degree import CallableMap, DegreeConfig, covering_radius
        from .geometry import Ball

        radius = covering_radius(CallableMap(solution.evaluate, n), Ball.unit(n), config=DegreeConfig(seed=args.seed))
        report["covering_radius"] = radius
    else:
        report["covering_radius"] = None
        report["note"] += "; covering skipped (solution not normalized to u(0) = 0)"
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if membership.passed else 1


def cmd_explain(args) -> int:
    from .suite import EXPLANATIONS, explain

    try:
        print(explain(args.name))
        return 0
    except KeyError:
        print(f"unknown check {args.name!r}; available topics:")
        for key in sorted(EXPLANATIONS):
            print(f"  {key}")
        return 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "bloch": cmd_bloch,
        "degree": cmd_degree,
        "poisson": cmd_poisson,
        "explain": cmd_explain,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except BallharmonicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
