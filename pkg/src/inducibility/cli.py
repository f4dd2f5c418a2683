"""Command-line front end.

Counts are printed as decimal strings and rationals as ``p/q``.  Exit status
is 0 on success, 1 on a domain error (or a failed verification suite) and 2
on a usage error.

Config fields can be set through the environment: INDUCIBILITY_SUBSET_BUDGET,
INDUCIBILITY_LEAF_BUDGET, INDUCIBILITY_CACHE_DIR, INDUCIBILITY_FORMAT.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from .constructions import DEFAULT_LEAF_BUDGET, compose, g_map, iterate_compose, t_star
from .counting import DEFAULT_SUBSET_BUDGET, brute_force_count, count_copies, count_through_leaf
from .enumeration import EnumerationSpec, count_trees, enumerate_trees
from .errors import BudgetExceeded, InducibilityError
from .extremal import (
    bounds_table,
    caterpillar_count,
    intervals_across_d,
    lower_bound_generic,
    max_density,
    star_inducibility,
    strict_gap,
)
from .tree import induce, parse, serialize
from .verify import SUITES, verify

FORMATS = ("json", "csv", "lines")


@dataclass(frozen=True)
class Config:
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    leaf_budget: int = DEFAULT_LEAF_BUDGET
    cache_dir: str | None = None
    output_format: str | None = None

    def __post_init__(self):
        if self.subset_budget <= 0 or self.leaf_budget <= 0:
            raise ValueError("budgets must be positive")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if x is None:
        return ""
    return str(x)


def _stringify(record: dict, keep_bool: bool = False) -> dict:
    out = {}
    for k, val in record.items():
        if isinstance(val, (list, tuple)):
            out[k] = [_fmt(v) for v in val]
        elif isinstance(val, bool):
            out[k] = val if keep_bool else str(val).lower()
        else:
            out[k] = _fmt(val)
    return out


class _Writer:
    def __init__(self, out: TextIO, fmt: str):
        self.out, self.fmt = out, fmt

    def scalar(self, value) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(_fmt(value)) + "\n")
        else:
            self.out.write(_fmt(value) + "\n")

    def record(self, record: dict) -> None:
        self.records([record], single=True)

    def records(self, records: list[dict], single: bool = False) -> None:
        rows = [_stringify(r, keep_bool=self.fmt == "json") for r in records]
        if self.fmt == "json":
            self.out.write(json.dumps(rows[0] if single else rows) + "\n")
        elif self.fmt == "csv":
            if rows:
                w = csv.DictWriter(self.out, fieldnames=list(rows[0]), lineterminator="\n")
                w.writeheader()
                for r in rows:
                    w.writerow({k: (" ".join(v) if isinstance(v, list) else v) for k, v in r.items()})
        else:
            for r in rows:
                self.out.write(" ".join(" ".join(v) if isinstance(v, list) else v for v in r.values()) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inducibility", description=__doc__.split("\n")[0])
    p.add_argument("--format", choices=FORMATS, help="output format (default depends on the command)")
    p.add_argument("--subset-budget", type=int, help="cap on subsets for brute-force counting")
    p.add_argument("--leaf-budget", type=int, help="cap on leaves of constructed trees")
    p.add_argument("--cache-dir", help="directory for cached enumeration counts")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="copies and density of a pattern in a tree")
    c.add_argument("--pattern", required=True)
    c.add_argument("--tree", required=True)
    c.add_argument("--per-leaf", action="store_true", help="also report per-leaf copy counts")
    c.add_argument("--oracle", action="store_true", help="use brute-force subset enumeration")

    c = sub.add_parser("induce", help="leaf-induced subtree on DFS leaf indices")
    c.add_argument("--tree", required=True)
    c.add_argument("--leaves", required=True, type=_int_list)

    c = sub.add_parser("enumerate", help="list tree shapes by canonical code")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--leaves", type=int, required=True)
    c.add_argument("--strict", action="store_true")
    c.add_argument("--count-only", action="store_true")

    c = sub.add_parser("maximize", help="maximum density over a universe of shapes")
    c.add_argument("--pattern", required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--leaves", type=int, required=True)
    c.add_argument("--strict", action="store_true")
    c.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("bounds", help="table of inducibility intervals for increasing n")
    c.add_argument("--pattern", required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--max-leaves", type=int, required=True)
    c.add_argument("--min-leaves", type=int)
    c.add_argument("--time-budget", type=float, help="stop after this many seconds (partial table)")
    c.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("construct", help="tree constructions")
    csub = c.add_subparsers(dest="construction", required=True)
    g = csub.add_parser("gmap")
    g.add_argument("--tree", required=True)
    g.add_argument("--d", type=int, required=True)
    g = csub.add_parser("compose")
    g.add_argument("--s1", required=True)
    g.add_argument("--s2", required=True)
    g = csub.add_parser("iterate")
    g.add_argument("--pattern", required=True)
    g.add_argument("--steps", type=int, required=True)
    g = csub.add_parser("tstar")
    g.add_argument("--tree", required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, required=True)

    c = sub.add_parser("verify", help="run a theorem-verification suite")
    c.add_argument("suite", choices=sorted(SUITES) + ["all"])
    c.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="override a suite parameter (JSON value, tree, or p/q)")

    c = sub.add_parser("formulas", help="closed-form values")
    fsub = c.add_subparsers(dest="formula", required=True)
    f = fsub.add_parser("stars")
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f = fsub.add_parser("caterpillars")
    f.add_argument("--d", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f = fsub.add_parser("lower-bound")
    f.add_argument("--k", type=int, required=True)

    c = sub.add_parser("explore", help="exploratory reports (no guarantees asserted)")
    esub = c.add_subparsers(dest="report", required=True)
    e = esub.add_parser("strict-gap")
    e.add_argument("--pattern", required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--leaves", type=int, required=True)
    e = esub.add_parser("across-d")
    e.add_argument("--pattern", required=True)
    e.add_argument("--ds", type=_int_list, required=True)
    e.add_argument("--leaves", type=int, required=True)
    return p


def _config(args, env) -> Config:
    def pick(flag, var, conv, default):
        if flag is not None:
            return flag
        if env.get(var):
            return conv(env[var])
        return default

    return Config(
        subset_budget=pick(args.subset_budget, "INDUCIBILITY_SUBSET_BUDGET", int, DEFAULT_SUBSET_BUDGET),
        leaf_budget=pick(args.leaf_budget, "INDUCIBILITY_LEAF_BUDGET", int, DEFAULT_LEAF_BUDGET),
        cache_dir=pick(args.cache_dir, "INDUCIBILITY_CACHE_DIR", str, None),
        output_format=pick(args.format, "INDUCIBILITY_FORMAT", str, None),
    )


def _suite_params(suite: str, pairs: list[str], parser: argparse.ArgumentParser) -> dict:
    allowed = inspect.signature(SUITES[suite]).parameters
    params = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep:
            parser.error(f"--param expects NAME=VALUE, got {pair!r}")
        if name not in allowed:
            parser.error(f"--param: suite {suite!r} has no parameter {name!r} (choose from {', '.join(allowed)})")
        raw = raw.strip()
        if raw.startswith("(") or raw == "*":
            params[name] = parse(raw)
        elif name in ("target", "tol"):
            params[name] = Fraction(raw)
        else:
            try:
                params[name] = json.loads(raw)
            except json.JSONDecodeError:
                parser.error(f"--param {name}: cannot read value {raw!r}")
    return params


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None,
        env: dict | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    env = env if env is not None else os.environ
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args, env)
    except ValueError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    if cfg.output_format is not None and cfg.output_format not in FORMATS:
        err.write(f"usage error: unknown output format {cfg.output_format!r}\n")
        return 2

    def writer(default: str) -> _Writer:
        return _Writer(out, cfg.output_format or default)

    try:
        return _dispatch(args, cfg, writer, parser)
    except SystemExit as exc:
        # late usage errors (e.g. a bad --param) raised through parser.error
        return int(exc.code or 0)
    except InducibilityError as exc:
        err.write(f"error: {exc}\n")
        return 1


def _dispatch(args, cfg: Config, writer, parser) -> int:
    cmd = args.command
    if cmd == "count":
        pattern, tree = parse(args.pattern), parse(args.tree)
        res = brute_force_count(pattern, tree, cfg.subset_budget) if args.oracle else count_copies(pattern, tree)
        record = {"copies": res.copies, "total": res.total_subsets, "density": res.density}
        if args.per_leaf:
            record["per_leaf"] = list(count_through_leaf(pattern, tree).per_leaf)
        writer("json").record(record)
    elif cmd == "induce":
        writer("lines").scalar(serialize(induce(parse(args.tree), args.leaves)))
    elif cmd == "enumerate":
        spec = EnumerationSpec(args.d, args.leaves, args.strict)
        w = writer("lines")
        if args.count_only:
            w.scalar(count_trees(spec, cfg.cache_dir))
        elif w.fmt == "lines":
            for t in enumerate_trees(spec):
                w.out.write(t.code + "\n")
        else:
            w.records([{"code": t.code} for t in enumerate_trees(spec)])
    elif cmd == "maximize":
        spec = EnumerationSpec(args.d, args.leaves, args.strict)
        res = max_density(parse(args.pattern, args.d), spec, args.workers)
        writer("json").record({"n": res.n, "d": res.d, "strict": res.strict,
                               "max_density": res.max_density, "maximizers": list(res.maximizers)})
    elif cmd == "bounds":
        pattern = parse(args.pattern, args.d)
        w = writer("json")
        rows = bounds_table(pattern, args.d, args.max_leaves, args.min_leaves, args.time_budget, args.workers)
        if w.fmt == "json":
            w.records(list(rows))
        else:
            # csv / lines stream row by row so partial tables survive interruption
            header = True
            for row in rows:
                if w.fmt == "csv" and header:
                    w.out.write(",".join(row) + "\n")
                    header = False
                sep = "," if w.fmt == "csv" else " "
                w.out.write(sep.join(_fmt(v) for v in row.values()) + "\n")
                w.out.flush()
    elif cmd == "construct":
        _construct(args, cfg, writer)
    elif cmd == "verify":
        names = sorted(SUITES) if args.suite == "all" else [args.suite]
        if args.suite == "all" and args.param:
            parser.error("--param cannot be combined with 'all'")
        reports = [verify(name, **_suite_params(name, args.param, parser)) for name in names]
        w = writer("json")
        if w.fmt == "json":
            payload = [r.as_dict() for r in reports]
            w.out.write(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n")
        else:
            w.records([{"suite": r.suite, "pass": r.passed, "checked": r.checked} for r in reports])
        return 0 if all(r.passed for r in reports) else 1
    elif cmd == "formulas":
        w = writer("lines")
        if args.formula == "stars":
            w.scalar(star_inducibility(args.d, args.k))
        elif args.formula == "caterpillars":
            w.scalar(caterpillar_count(args.d, args.k, args.n))
        else:
            w.scalar(lower_bound_generic(args.k))
    elif cmd == "explore":
        pattern = parse(args.pattern)
        w = writer("json")
        if args.report == "strict-gap":
            w.record(strict_gap(pattern, args.d, args.leaves))
        else:
            w.records([{"d": iv.d, "n": iv.n_used, "lower": iv.lower, "upper": iv.upper}
                       for iv in intervals_across_d(pattern, args.ds, args.leaves)])
    return 0


def _construct(args, cfg: Config, writer) -> None:
    kind = args.construction
    w = writer("lines")
    if kind == "gmap":
        tree = parse(args.tree, args.d)
        # G is taken to be the identity on binary trees
        w.scalar(serialize(tree if args.d == 2 else g_map(tree, args.d)))
    elif kind == "compose":
        w.scalar(serialize(_bounded(compose, cfg, parse(args.s1), parse(args.s2))))
    elif kind == "iterate":
        w.scalar(serialize(iterate_compose(parse(args.pattern), args.steps, cfg.leaf_budget)))
    else:
        trace = t_star(parse(args.tree, args.d), args.d, args.n)
        out = writer("json")
        if out.fmt == "json":
            out.out.write(json.dumps(trace.as_dict()) + "\n")
        else:
            flat = {k: v for k, v in trace.as_dict().items() if k != "sizes"}
            out.record(flat)


def _bounded(fn, cfg: Config, s1, s2):
    size = s1.leaf_count * s2.leaf_count
    if size > cfg.leaf_budget:
        raise BudgetExceeded(f"result would have {size} leaves, over the budget of {cfg.leaf_budget}")
    return fn(s1, s2)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
