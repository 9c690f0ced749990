"""Command-line interface: ``anchorpack <command> ...``.

Exit status is 0 on success, 2 on bad input and 3 when the solver's node
budget runs out before optimality is proven.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import closed_forms as cf
from .geometry import Configuration, InvalidConfiguration, Scalar
from .minimax import minimize_over_configs, verify_mountain_inequality
from .permutations import Permutation, classify, permutation_of
from .pointfile import format_value, load_points
from .render import render
from .solver import DEFAULT_BUDGET, solve_max

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3

BOUND_CLASSES = ("increasing", "decreasing", "cliff", "start1", "increasing-start", "231",
                 "213", "sparse", "sparse-limit", "prelayer-threshold", "mountain-end")
EXTREMAL_CLASSES = ("increasing", "decreasing", "cliff", "213", "231", "312")


class UsageError(Exception):
    pass


def fmt(v: Scalar) -> str:
    """``p/q ≈ 0.xxxxxx`` for exact values, ``≈ 0.xxxxxx`` for floats."""
    if isinstance(v, Fraction):
        return f"{format_value(v)} ≈ {float(v):.6f}"
    return f"≈ {float(v):.6f}"


def _json_value(v):
    if isinstance(v, Fraction):
        return {"exact": format_value(v), "float": float(v)}
    if isinstance(v, (int, float)):
        return {"exact": None, "float": float(v)}
    return v


def _json_config(c: Configuration | None):
    if c is None:
        return None
    return [[format_value(x), format_value(y)] for x, y in c.coords()]


class Output:
    def __init__(self, command: str, json_lines: bool, stream=None):
        self.command = command
        self.json_lines = json_lines
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        if not self.json_lines:
            print(line, file=self.stream)

    def record(self, inputs: dict, value, config=None, certificate=None) -> None:
        if self.json_lines:
            rec = {"command": self.command, "inputs": inputs, "value": _json_value(value),
                   "config": _json_config(config), "certificate": _json_value(certificate)}
            print(json.dumps(rec, sort_keys=True, ensure_ascii=False), file=self.stream)


def _number(text: str) -> Fraction | float:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.cls} needs {' '.join(missing)}")


def cmd_classify(args, out: Output) -> int:
    c = load_points(args.file)
    p = permutation_of(c)
    rep = classify(p)
    out.text(f"permutation  ({p})")
    out.text(f"classes      {', '.join(rep.names())}")
    out.text(f"greedy dec   {list(rep.greedy_dec_subseq)}")
    out.text(f"splitting    {list(rep.splitting_points)}")
    out.text(f"final run    starts at {rep.final_dec_run_start}")
    out.record({"file": args.file}, {"permutation": str(p), "classes": rep.names()}, c)
    return EXIT_OK


def cmd_solve(args, out: Output) -> int:
    c = load_points(args.file)
    if args.float:
        c = c.to_float()
    res = solve_max(c, budget=args.budget)
    status = "optimal" if res.proof_of_optimality else "budget exhausted, best found"
    out.text(f"area   {fmt(res.area)}  ({status}, {res.nodes_explored} nodes)")
    for i, r in enumerate(res.best.rects):
        out.text(f"  P{i:<3} ({format_value(r.x0)}, {format_value(r.y0)}) -> "
                 f"({format_value(r.right)}, {format_value(r.top)})  area {fmt(r.area)}")
    out.record({"file": args.file, "budget": args.budget, "rational": not args.float},
               res.area, c, {"proof_of_optimality": res.proof_of_optimality,
                             "nodes": res.nodes_explored})
    return EXIT_OK if res.proof_of_optimality else EXIT_BUDGET


def _bound(args) -> cf.BoundResult | Scalar:
    cls = args.cls
    if cls == "increasing":
        _need(args, "n")
        return cf.bound_increasing(args.n)
    if cls == "decreasing":
        _need(args, "n")
        return cf.bound_decreasing(args.n)
    if cls == "cliff":
        _need(args, "n", "m")
        return cf.bound_cliff(args.n, args.m)
    if cls == "start1":
        _need(args, "k")
        return cf.bound_start1(args.k)
    if cls == "increasing-start":
        _need(args, "m", "k")
        return cf.bound_increasing_start(args.m, args.k)
    if cls == "231":
        if args.k is None:
            return cf.bound_231_n4()
        return cf.bound_231(args.k)
    if cls == "213":
        return cf.bound_213()
    if cls == "sparse":
        _need(args, "k", "l")
        return cf.bound_sparse(args.k, args.l)
    if cls == "sparse-limit":
        _need(args, "k")
        return cf.bound_sparse_limit(args.k)
    if cls == "prelayer-threshold":
        if args.m is None:
            return cf.threshold_prelayer_limit()
        return cf.threshold_prelayer(args.m)
    if cls == "mountain-end":
        _need(args, "m", "k")
        return cf.mountain_end_bound(args.m, args.k)
    raise UsageError(f"unknown class {cls!r}")


def cmd_bound(args, out: Output) -> int:
    res = _bound(args)
    inputs = {k: (format_value(v) if isinstance(v, Fraction) else v)
              for k, v in (("class", args.cls), ("n", args.n), ("m", args.m),
                           ("k", args.k), ("l", args.l)) if v is not None}
    if isinstance(res, cf.BoundResult):
        out.text(fmt(res.bound))
        if res.tight_points:
            pts = ", ".join(f"({format_value(p.x)}, {format_value(p.y)})" for p in res.tight_points)
            out.text(f"tight points  {pts}")
        out.record(inputs, res.bound, res.tight_config)
    else:
        out.text(fmt(res))
        out.record(inputs, res)
    return EXIT_OK


def cmd_extremal(args, out: Output) -> int:
    cls = args.cls
    if cls in ("increasing", "decreasing"):
        _need(args, "n")
        res = cf.bound_increasing(args.n) if cls == "increasing" else cf.bound_decreasing(args.n)
        c = res.tight_config
    elif cls == "cliff":
        _need(args, "n", "m")
        c = cf.bound_cliff(args.n, args.m).tight_config
    else:
        c = cf.tight_config_for(Permutation.parse(",".join(cls)).values)
    if c is None:
        raise UsageError(f"no extremal configuration for {cls}")
    area = solve_max(c).area
    out.text(f"# permutation ({permutation_of(c)}), optimal area {fmt(area)}")
    for x, y in c.coords():
        out.text(f"{format_value(x)} {format_value(y)}")
    out.record({"class": cls, "n": args.n, "m": args.m}, area, c)
    return EXIT_OK


def cmd_minimax(args, out: Output) -> int:
    seed = int(os.environ.get("ANCHORPACK_SEED", args.seed))
    rep = minimize_over_configs(args.perm, restarts=args.restarts, tol=args.tol,
                                seed=seed, workers=args.workers)
    out.text(f"permutation  ({rep.permutation})")
    out.text(f"area         {fmt(rep.best_area)}")
    if rep.exact_area is not None:
        out.text(f"rounded      {fmt(rep.exact_area)}")
    out.text(f"certificate  {rep.certificate:.3e}")
    out.text(f"restarts     {rep.restarts}  converged {rep.converged}  evaluations {rep.evaluations}")
    for x, y in rep.best_config.coords():
        out.text(f"  {x:.9f} {y:.9f}")
    out.record({"perm": str(rep.permutation), "restarts": args.restarts, "tol": args.tol,
                "seed": seed}, rep.best_area, rep.exact_config or rep.best_config.to_exact(),
               rep.certificate)
    return EXIT_OK


def cmd_table(args, out: Output) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    for n, v in cf.kn_table(args.n_max):
        out.text(f"{n:>4}  {v:.4f}")
        out.record({"n": n}, v)
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    if args.grid <= 0:
        raise UsageError("--grid must be positive")
    rep = verify_mountain_inequality(args.grid)
    a = rep.argmin
    out.text(f"grid         {format_value(args.grid)}  ({rep.evaluations} points, m = 2..20)")
    out.text(f"minimum      {rep.min_value:.3e} at k={a['k']:g} m={a['m']} x={a['x']:g} y={a['y']:g}")
    out.text(f"violations   {rep.violations}")
    out.text(f"x = 0 slice  min {rep.x0_min:.3e}, {rep.x0_negative} negative")
    out.record({"grid": format_value(args.grid)}, rep.min_value, None,
               {"violations": rep.violations, "argmin": a})
    return EXIT_OK


def cmd_render(args, out: Output) -> int:
    c = load_points(args.file)
    res = solve_max(c, budget=args.budget)
    fig = render(res.best, staircase=args.staircase, hyperbola=args.hyperbola)
    if args.out:
        fig.save(args.out)
        out.text(f"wrote {args.out}  (area {fmt(res.area)})")
    elif not out.json_lines:
        sys.stdout.write(fig.text)
    out.record({"file": args.file, "out": args.out}, res.area, c)
    return EXIT_OK if res.proof_of_optimality else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-lines", action="store_true", default=argparse.SUPPRESS,
                        help="one JSON record per result")
    ap = argparse.ArgumentParser(prog="anchorpack", parents=[common],
                                 description="Anchored rectangle packings of the unit square.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="permutation classes of a point file")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", parents=[common], help="maximum-area packing of a point file")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--rational", dest="float", action="store_false", help="exact arithmetic (default)")
    mode.add_argument("--float", dest="float", action="store_true", help="binary64 arithmetic")
    s.set_defaults(func=cmd_solve, float=False)

    for name, func, choices, helptext in (
        ("bound", cmd_bound, BOUND_CLASSES, "closed-form lower bound"),
        ("extremal", cmd_extremal, EXTREMAL_CLASSES, "configuration attaining a bound"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("cls", metavar="CLASS", choices=choices, help=", ".join(choices))
        s.add_argument("--n", type=int)
        s.add_argument("--m", type=int)
        s.add_argument("--k", type=_number)
        s.add_argument("--l", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("minimax", parents=[common], help="search for the least optimal area")
    s.add_argument("perm", type=_perm, metavar="PERM", help='e.g. "2,1,3"')
    s.add_argument("--restarts", type=int, default=16)
    s.add_argument("--tol", type=float, default=1e-4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_minimax)

    s = sub.add_parser("table", parents=[common], help="lower bounds k_n")
    s.add_argument("--n-max", type=int, default=10)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify-inequality", parents=[common], help="grid scan of the mountain inequality")
    s.add_argument("--grid", type=_number, default=Fraction(1, 50))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", parents=[common], help="SVG of the optimal packing")
    s.add_argument("file")
    s.add_argument("--out")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--staircase", action="store_true")
    s.add_argument("--hyperbola", type=float)
    s.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    out = Output(args.command, getattr(args, "json_lines", False))
    try:
        return args.func(args, out)
    except (UsageError, InvalidConfiguration, ValueError, OSError) as exc:
        print(f"anchorpack {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
