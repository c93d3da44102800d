"""Command-line front end: compute one constant, sweep a parameter, or run
the verification suite.  Output is JSON (default) or CSV; identical argv and
seed produce byte-identical documents."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .constants import CONSTANT_IDS, resolve_strategy
from . import constants as cns
from .search import Estimate, strategy_descriptor
from .spaces import SpaceError, descriptor, parse_space
from .verify import (PROFILES, default_suite_spaces, report_json, run_suite)

# parameters each constant consumes; anything else on the command line
# is rejected so a typo cannot silently alter the computation
CONSTANT_PARAMS = {
    "gamma_p": ("p", "t"),
    "cinj_iso": ("alpha", "p"),
    "cinj_via_gamma": ("alpha", "p"),
    "cnj_p": ("p",),
    "cnj_modified_p": ("p",),
    "james": (),
    "schaffer": (),
    "rho": ("t",),
    "jxp": ("p", "t"),
    "nu_p": ("p",),
    "omega_prime": (),
    "smoothness_quotient": ("alpha", "p"),
}

GRID_LIMIT = 100001


class UsageError(ValueError):
    pass


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` with both endpoints included (within 1e-12)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise UsageError(f"grid has a non-numeric field: {text!r}")
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise UsageError(f"grid fields must be finite: {text!r}")
    if step <= 0.0 or stop < start:
        raise UsageError(f"grid needs step > 0 and stop >= start: {text!r}")
    values = []
    i = 0
    while True:
        v = start + i * step
        if v > stop + 1e-12:
            break
        values.append(stop if abs(v - stop) <= 1e-12 else v)
        i += 1
        if i > GRID_LIMIT:
            raise UsageError(f"grid {text!r} has more than {GRID_LIMIT} points")
    return values


def _fmt17(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _witness_field(w) -> str:
    return "(" + ", ".join(f"{x:.17g}" for x in w) + ")"


def write_csv(rows: list[dict], header: list[str], out) -> None:
    """RFC-4180-style rows; floats carry 17 significant digits."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt17(row[k]) for k in header])


def _emit(doc: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(doc)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(doc)


def _collect_params(args, needed: tuple[str, ...]) -> dict:
    given = {name: getattr(args, name) for name in ("alpha", "p", "q", "t")
             if getattr(args, name) is not None}
    extra = set(given) - set(needed)
    if extra:
        tok = sorted(extra)[0]
        raise UsageError(f"--{tok} is not a parameter of {args.constant}")
    missing = [n for n in needed if n not in given]
    if missing:
        raise UsageError(f"{args.constant} requires --{missing[0]}")
    return {k: given[k] for k in needed}


def _run_constant(space, constant: str, params: dict, strategy):
    fn = getattr(cns, constant)
    result = fn(space, strategy=strategy, **params)
    if isinstance(result, Estimate):
        return result
    return result  # smoothness_quotient returns a bare float


def _cmd_compute(args) -> int:
    space = parse_space(args.space)
    params = _collect_params(args, CONSTANT_PARAMS[args.constant])
    strat = resolve_strategy(args.strategy, space, seed=args.seed)
    result = _run_constant(space, args.constant, params, strat)
    strat_text = strategy_descriptor(strat)
    if isinstance(result, Estimate):
        payload = {"space": descriptor(space), "constant": args.constant,
                   "params": params, "value": result.value,
                   "witness": [list(result.witness[0]), list(result.witness[1])],
                   "strategy": strat_text, "exact": result.exact,
                   "evaluations": result.evaluations,
                   "meta": _jsonable_meta(result.meta)}
        row = {"constant": args.constant, "space": descriptor(space),
               "value": result.value,
               "witness1": _witness_field(result.witness[0]),
               "witness2": _witness_field(result.witness[1]),
               "strategy": strat_text, "exact": result.exact}
    else:
        payload = {"space": descriptor(space), "constant": args.constant,
                   "params": params, "value": result, "witness": None,
                   "strategy": strat_text, "exact": False,
                   "evaluations": None, "meta": {}}
        row = {"constant": args.constant, "space": descriptor(space),
               "value": result, "witness1": "", "witness2": "",
               "strategy": strat_text, "exact": False}
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        write_csv([row], ["constant", "space", "value", "witness1", "witness2",
                          "strategy", "exact"], buf)
        _emit(buf.getvalue(), args.out)
    return 0


def _jsonable_meta(meta: dict) -> dict:
    out = {}
    for k, v in meta.items():
        if isinstance(v, tuple):
            out[k] = json.loads(json.dumps(v))
        else:
            out[k] = v
    return out


def _cmd_sweep(args) -> int:
    space = parse_space(args.space)
    if (args.alpha_grid is None) == (args.t_grid is None):
        raise UsageError("sweep needs exactly one of --alpha-grid or --t-grid")
    var = "alpha" if args.alpha_grid is not None else "t"
    needed = CONSTANT_PARAMS[args.constant]
    if var not in needed:
        raise UsageError(f"{args.constant} does not take --{var}; "
                         f"it cannot be swept over a {var} grid")
    grid = parse_grid(args.alpha_grid if var == "alpha" else args.t_grid)
    fixed_names = tuple(n for n in needed if n != var)
    given = {n: getattr(args, n) for n in fixed_names if getattr(args, n) is not None}
    missing = [n for n in fixed_names if n not in given]
    if missing:
        raise UsageError(f"{args.constant} requires --{missing[0]}")
    for name in ("alpha", "p", "q", "t"):
        if getattr(args, name) is not None and name not in fixed_names:
            raise UsageError(f"--{name} is not a fixed parameter of this sweep")
    strat = resolve_strategy(args.strategy, space, seed=args.seed)
    strat_text = strategy_descriptor(strat)

    rows = []
    json_rows = []
    for value in grid:
        params = dict(given)
        params[var] = value
        result = _run_constant(space, args.constant, params, strat)
        if isinstance(result, Estimate):
            rows.append({var: value, "value": result.value,
                         "witness1": _witness_field(result.witness[0]),
                         "witness2": _witness_field(result.witness[1]),
                         "strategy": strat_text, "exact": result.exact})
            json_rows.append({var: value, "value": result.value,
                              "witness": [list(result.witness[0]),
                                          list(result.witness[1])],
                              "strategy": strat_text, "exact": result.exact})
        else:
            rows.append({var: value, "value": result, "witness1": "",
                         "witness2": "", "strategy": strat_text, "exact": False})
            json_rows.append({var: value, "value": result, "witness": None,
                              "strategy": strat_text, "exact": False})

    if args.format == "json":
        payload = {"space": descriptor(space), "constant": args.constant,
                   "sweep": var, "params": given, "rows": json_rows}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        write_csv(rows, [var, "value", "witness1", "witness2", "strategy",
                         "exact"], buf)
        _emit(buf.getvalue(), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.space:
        spaces = [parse_space(s) for s in args.space]
    else:
        spaces = list(default_suite_spaces())
    report = run_suite(spaces, seed=args.seed, profile=args.profile)
    if args.format == "json":
        _emit(report_json(report) + "\n", args.out)
    else:
        rows = [{"check_id": r.check_id, "space": r.space,
                 "params": json.dumps(r.params, sort_keys=True),
                 "passed": r.passed, "slack_used": r.slack_used,
                 "runtime_ms": 0}
                for r in report.checks]
        buf = io.StringIO()
        write_csv(rows, ["check_id", "space", "params", "passed",
                         "slack_used", "runtime_ms"], buf)
        _emit(buf.getvalue(), args.out)
    return 0 if report.summary["failed"] == 0 else 1


def _cmd_spaces(args) -> int:
    kinds = [
        "lp:q=<exponent>,dim=<n>          p-norm; q=1, q=2, q=inf, or any q >= 1",
        "wlp:q=<exponent>,dim=<n>,w=a;b   weighted p-norm with positive weights",
        "poly2d:v=(x,y);(x,y);...         symmetric polygon gauge from vertices",
    ]
    defaults = [descriptor(s) for s in default_suite_spaces()]
    if args.format == "json":
        payload = {"kinds": [k.split()[0] for k in kinds],
                   "default_suite": defaults}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        rows = [{"descriptor": d} for d in defaults]
        buf = io.StringIO()
        write_csv(rows, ["descriptor"], buf)
        _emit(buf.getvalue(), args.out)
    else:
        lines = ["space descriptor syntax:"]
        lines += ["  " + k for k in kinds]
        lines.append("default verification suite:")
        lines += ["  " + d for d in defaults]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normconst",
        description="Geometric constants of finite-dimensional normed spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json", fmt_choices=("json", "csv")):
        p.add_argument("--strategy", default=None,
                       help="exact | grid2d:res=..,refine=.. | "
                            "multistart:starts=..,steps=..,seed=..")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--format", choices=fmt_choices, default=fmt_default)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    def scalars(p):
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--p", type=float, default=None)
        p.add_argument("--q", type=float, default=None)
        p.add_argument("--t", type=float, default=None)

    pc = sub.add_parser("compute", help="compute one constant on one space")
    pc.add_argument("--space", required=True)
    pc.add_argument("--constant", required=True, choices=CONSTANT_IDS)
    scalars(pc)
    common(pc)
    pc.set_defaults(fn=_cmd_compute)

    ps = sub.add_parser("sweep", help="sweep alpha or t over a grid")
    ps.add_argument("--space", required=True)
    ps.add_argument("--constant", required=True, choices=CONSTANT_IDS)
    ps.add_argument("--alpha-grid", dest="alpha_grid", default=None,
                    metavar="START:STOP:STEP")
    ps.add_argument("--t-grid", dest="t_grid", default=None,
                    metavar="START:STOP:STEP")
    scalars(ps)
    common(ps)
    ps.set_defaults(fn=_cmd_sweep)

    pv = sub.add_parser("verify", help="run the verification suite")
    pv.add_argument("--space", action="append", default=None,
                    help="repeatable; defaults to the built-in suite")
    pv.add_argument("--profile", choices=sorted(PROFILES), default="fast")
    common(pv)
    pv.set_defaults(fn=_cmd_verify)

    pl = sub.add_parser("spaces", help="describe available spaces")
    pl.add_argument("action", choices=("list",))
    pl.add_argument("--format", choices=("text", "json", "csv"), default="text")
    pl.add_argument("--out", default=None)
    pl.set_defaults(fn=_cmd_spaces)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, SpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
