"""Command-line entry point: ``commulab <subcommand> ...``.

Exit codes follow the report semantics: 0 when everything passed, 1 on a
falsification (FAIL), 2 when something was inconclusive or the input was bad.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import equations as eqs
from .groebner import variety_dimension_experiment
from .matrix import Matrix
from .poly import UniPoly
from .registry import PROFILES, REGISTRY, run_all, run_check
from .report import FAIL, INCONCLUSIVE, PASS, emit_report, exit_code
from .rings import RingError, parse_ring
from .spectral import HypothesisError, simultaneous_triangularization

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


def _matrix(ring, text: str) -> Matrix:
    return Matrix.from_json(ring, text)


def _poly(ring, text: str | None) -> UniPoly:
    if not text:
        return UniPoly(ring, [ring.one()])
    return UniPoly.from_values(ring, [c.strip() for c in text.split(",")])


def _print(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_list(args) -> int:
    for e in REGISTRY.values():
        print(f"{e.check_id:<4} [{e.profile:<8}] {e.title}")
        print(f"     {e.anchor}")
    return 0


def cmd_verify(args) -> int:
    config = {}
    if args.ring:
        config["ring"] = args.ring
    if args.all:
        reports = run_all(args.profile, seed=args.seed, workers=args.workers, config=config)
    elif args.id:
        reports = []
        for cid in args.id:
            cfg = dict(config)
            if args.seed is not None:
                cfg["seed"] = args.seed
            reports.append(run_check(cid, cfg))
    else:
        print("verify: give --id or --all", file=sys.stderr)
        return 2
    text = emit_report(reports, args.format, args.out, include_timing=args.timing)
    if args.out is None:
        sys.stdout.write(text)
    for r in reports:
        line = f"{r.check_id}: {r.status}" + (f" ({r.detail})" if r.detail else "")
        print(line, file=sys.stderr)
    return exit_code(reports)


def cmd_groebner_dim(args) -> int:
    start = time.perf_counter()
    rep = variety_dimension_experiment(
        args.system, args.n, args.alpha, char=args.char, order=args.order, max_pairs=args.max_pairs, time_limit=args.time_limit
    )
    m = rep.metrics
    out = {
        "system": args.system,
        "n": args.n,
        "alpha": args.alpha,
        "dimension": m.get("dimension"),
        "basis_size": m.get("basis_size"),
        "ms": round((time.perf_counter() - start) * 1000),
        "status": rep.status,
    }
    for k in ("expected", "total", "expected_total"):
        if k in m:
            out[k] = m[k]
    if rep.detail:
        out["detail"] = rep.detail
    _print(out)
    return EXIT[rep.status]


def cmd_st_check(args) -> int:
    R = parse_ring(args.ring)
    A, B = _matrix(R, args.A), _matrix(R, args.B)
    res = simultaneous_triangularization(A, B)
    out = {"status": res.status}
    if res.P is not None:
        out["P"] = res.P.to_strings()
    if res.stage is not None:
        out["stage"] = res.stage
    if res.reason:
        out["reason"] = res.reason
    _print(out)
    return {"ST": 0, "NotST": 0, "Incomplete": 2}[res.status]


def cmd_solve(args) -> int:
    R = parse_ring(args.ring)
    g = _poly(R, args.g) if args.eq.lower() == "powerxg" else None
    eq = eqs.parse_equation(args.eq, alpha=args.alpha, k=args.k, g=g)
    A = _matrix(R, args.A)
    fam = eqs.brute_force_solutions(eq, A, "nilpotent-only" if args.nilpotent_only else "all", budget=args.budget)
    _print(fam.to_dict())
    return 0


def cmd_jordan_fiber(args) -> int:
    R = parse_ring(args.ring)
    params = [p.strip() for p in args.params.split(",")] if args.params else []
    try:
        fam = eqs.solve_jordan_fiber(args.n, args.alpha, params, R)
    except eqs.PivotFailure as exc:
        _print({"solutions": [], "count": 0, "budget_exhausted": False, "error": str(exc), "trace": exc.trace})
        return 2
    _print(fam.to_dict())
    return 0


def cmd_generic_check(args) -> int:
    rep = eqs.generic_membership_check(
        args.n, args.alpha, args.exponent, char=args.char, expect=args.expect, max_pairs=args.max_pairs, time_limit=args.time_limit
    )
    _print(rep.to_dict())
    return EXIT[rep.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commulab", description="Exact solving and verification of matrix commutator equations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("list", help="print the check registry")
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("verify", help="run registry checks")
    s.add_argument("--id", action="append", choices=sorted(REGISTRY), help="check id (repeatable)")
    s.add_argument("--all", action="store_true", help="run every check of --profile")
    s.add_argument("--profile", choices=PROFILES, default="quick")
    s.add_argument("--ring", help="ring override, e.g. Zmod:9")
    s.add_argument("--seed", type=int)
    s.add_argument("--out", help="write the report here instead of stdout")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identical output)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("groebner-dim", help="Hilbert dimension of a named system")
    s.add_argument("--system", required=True, choices=("Y", "S_fiber", "S", "N", "W", "V4_fiber", "V4_commuting_fiber"))
    s.add_argument("--n", type=int)
    s.add_argument("--alpha", type=int)
    s.add_argument("--char", type=int, default=32003)
    s.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    s.add_argument("--max-pairs", type=int, default=200_000)
    s.add_argument("--time-limit", type=float, default=600.0)
    s.set_defaults(func=cmd_groebner_dim)

    s = sub.add_parser("st-check", help="decide simultaneous triangularizability")
    s.add_argument("--ring", required=True)
    s.add_argument("--A", required=True, help='JSON matrix, e.g. [["0","1"],["0","0"]]')
    s.add_argument("--B", required=True)
    s.set_defaults(func=cmd_st_check)

    s = sub.add_parser("solve", help="enumerate solutions X for a fixed A over a finite ring")
    s.add_argument("--eq", required=True, help="powerX, powerXg, powerA, square, cube, simN, lieSquare, genBinom")
    s.add_argument("--alpha", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--g", help="coefficients of g, constant first, e.g. 1,1 for 1+t")
    s.add_argument("--ring", required=True)
    s.add_argument("--A", required=True)
    s.add_argument("--nilpotent-only", action="store_true")
    s.add_argument("--budget", type=int, default=eqs.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("jordan-fiber", help="parametrized solution of X J - J X = X^alpha")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--ring", required=True)
    s.add_argument("--params", default="", help="comma-separated x_{1,2}, ..., x_{1,n}")
    s.set_defaults(func=cmd_jordan_fiber)

    s = sub.add_parser("generic-check", help="ideal membership for the generic matrix")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--exponent", type=int, required=True)
    s.add_argument("--char", type=int, default=0)
    s.add_argument("--expect", choices=("member", "nonmember"), default="member")
    s.add_argument("--max-pairs", type=int)
    s.add_argument("--time-limit", type=float)
    s.set_defaults(func=cmd_generic_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RingError, HypothesisError, ValueError, KeyError) as exc:
        print(f"commulab {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
