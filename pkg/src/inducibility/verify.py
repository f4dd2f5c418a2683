"""Exhaustive re-checks of the finite statements behind the inducibility results.

Each suite returns a :class:`Report`; on failure ``witness`` holds the first
counterexample found, in grammar strings and exact numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .constructions import DEFAULT_LEAF_BUDGET, compose, g_map, iterate_compose, t_star
from .counting import DEFAULT_SUBSET_BUDGET, PatternTable, brute_force_count, count_copies
from .enumeration import EnumerationSpec, count_trees, count_trees_by_height, enumerate_trees
from .errors import InducibilityError
from .extremal import (
    caterpillar_count,
    contains_binary_caterpillar,
    lower_bound_generic,
    max_density,
    star_inducibility,
)
from .tree import Tree, build_caterpillar, build_complete, build_star, serialize

__all__ = ["Report", "verify", "SUITES"]


@dataclass
class Report:
    suite: str
    params: dict
    passed: bool = True
    checked: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def fail(self, **witness) -> None:
        if self.passed:
            self.passed = False
            self.witness = witness

    def as_dict(self) -> dict:
        return _jsonable(
            {
                "suite": self.suite,
                "params": self.params,
                "pass": self.passed,
                "checked": self.checked,
                "witness": self.witness,
                "details": self.details,
            }
        )


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, Tree):
        return serialize(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset, range)):
        return [_jsonable(v) for v in x]
    return str(x)


def _trees(d: int, n: int, strict: bool = False):
    return enumerate_trees(EnumerationSpec(d, n, strict))


def _patterns(d: int, k_lo: int, k_hi: int) -> list[Tree]:
    return [p for k in range(k_lo, k_hi + 1) for p in _trees(d, k)]


def suite_oracle(ds=(2, 3), max_leaves=8, min_pattern=2, max_pattern=4, subset_budget=DEFAULT_SUBSET_BUDGET):
    """DP count equals brute-force subset count."""
    r = Report("oracle", dict(ds=ds, max_leaves=max_leaves, pattern_leaves=[min_pattern, max_pattern]))
    for d in ds:
        patterns = _patterns(d, min_pattern, max_pattern)
        for n in range(1, max_leaves + 1):
            for t in _trees(d, n):
                table = PatternTable()
                for p in patterns:
                    fast = count_copies(p, t, table).copies
                    slow = brute_force_count(p, t, subset_budget).copies
                    r.checked += 1
                    if fast != slow:
                        r.fail(d=d, pattern=p, tree=t, dp=fast, brute_force=slow)
    return r


def suite_completeness(ds=(2, 3), max_leaves=8, ks=(2, 3, 4)):
    """Every k-subset of leaves induces exactly one shape."""
    r = Report("completeness", dict(ds=ds, max_leaves=max_leaves, ks=ks))
    for d in ds:
        by_k = {k: list(_trees(d, k)) for k in ks}
        for n in range(1, max_leaves + 1):
            for t in _trees(d, n):
                table = PatternTable()
                for k in ks:
                    total = sum(count_copies(p, t, table).copies for p in by_k[k])
                    r.checked += 1
                    if total != math.comb(n, k):
                        r.fail(d=d, k=k, tree=t, sum=total, binom=math.comb(n, k))
    return r


def _is_complete(t: Tree, d: int) -> bool:
    h = t.height
    return t.leaf_count == d**h and t.code == build_complete(d, h).code


def _log_exact(n: int, d: int) -> int | None:
    h, p = 0, 1
    while p < n:
        h, p = h + 1, p * d
    return h if p == n else None


def suite_stars(d=3, ns=(3, 5, 7, 9, 11, 13), k=3, formula_ds=10, formula_ks=(3, 4, 5)):
    """Star count bound with its equality case, plus the closed-form values."""
    r = Report("stars", dict(d=d, ns=ns, k=k, formula_ks=formula_ks, formula_max_d=formula_ds))
    star = build_star(k)
    equality = {}
    for n in ns:
        bound = Fraction(math.comb(d, k) * (n**k - n), d**k - d)
        table = PatternTable()
        for t in _trees(d, n, strict=True):
            c = count_copies(star, t, table).copies
            r.checked += 1
            if c > bound:
                r.fail(check="bound", n=n, tree=t, copies=c, bound=bound)
            if (c == bound) != _is_complete(t, d):
                r.fail(check="equality iff complete", n=n, tree=t, copies=c, bound=bound)
            if c == bound:
                equality.setdefault(n, []).append(t.code)
        h = _log_exact(n, d)
        if h is not None and n >= k:
            res = max_density(star, EnumerationSpec(d, n, strict=True))
            want = bound / math.comb(n, k)
            complete = build_complete(d, h).code
            if res.max_density != want or res.maximizers != (complete,):
                r.fail(check="max density", n=n, got=res.max_density, want=want, maximizers=res.maximizers)
            r.details.setdefault("max_density", {})[n] = {"value": res.max_density, "maximizers": res.maximizers}
    r.details["equality_cases"] = equality

    values = {}
    for kk in formula_ks:
        seq = [star_inducibility(dd, kk) for dd in range(kk, formula_ds + 1)]
        values[kk] = seq
        for a, b in zip(seq, seq[1:]):
            r.checked += 1
            if not a < b:
                r.fail(check="increasing in d", k=kk, values=seq)
    r.details["star_inducibility"] = values
    return r


def suite_caterpillars(ds=(2, 3, 4), ks=range(2, 7), max_n=21):
    """Closed-form count of binary caterpillars inside d-ary caterpillars."""
    r = Report("caterpillars", dict(ds=ds, ks=list(ks), max_n=max_n))
    for d in ds:
        for n in range(d, max_n + 1, d - 1):
            host = build_caterpillar(d, n)
            table = PatternTable()
            for k in ks:
                formula = caterpillar_count(d, k, n)
                counted = count_copies(build_caterpillar(2, k), host, table).copies
                r.checked += 1
                if formula != counted:
                    r.fail(d=d, k=k, n=n, formula=formula, counted=counted)
                if d == 2 and formula != math.comb(n, k):
                    r.fail(d=d, k=k, n=n, formula=formula, binom=math.comb(n, k))
    return r


def suite_monotone(d=2, pattern: Tree | None = None, ns=range(4, 13)):
    """Maximum densities decrease with n; the interval width shrinks."""
    pattern = pattern if pattern is not None else build_complete(2, 2)
    k = pattern.leaf_count
    r = Report("monotone", dict(d=d, pattern=pattern, ns=list(ns)))
    rows = []
    for n in ns:
        upper = max_density(pattern, EnumerationSpec(d, n)).max_density
        lower = upper * (1 - Fraction(k * (k - 1), n))
        row = {"n": n, "max_density": upper, "lower": lower, "upper": upper, "width": upper - lower}
        strict_spec = EnumerationSpec(d, n, strict=True)
        if d > 2 and strict_spec.feasible and n >= k:
            m_strict = max_density(pattern, strict_spec).max_density
            row["strict_max_density"] = m_strict
            row["strict_gap"] = upper - m_strict
            if m_strict > upper:
                r.fail(check="strict <= general", n=n, strict=m_strict, general=upper)
        rows.append(row)
        r.checked += 1
        if not lower < upper:
            r.fail(check="non-degenerate", n=n, lower=lower, upper=upper)
    for a, b in zip(rows, rows[1:]):
        if b["max_density"] > a["max_density"]:
            r.fail(check="non-increasing", n=b["n"], previous=a["max_density"], current=b["max_density"])
        if not b["width"] < a["width"]:
            r.fail(check="shrinking", n=b["n"], previous=a["width"], current=b["width"])
    r.details["rows"] = rows
    return r


def suite_gmap(d=3, max_tree=9, max_binary=5):
    """G keeps leaf counts, is binary, and never loses binary copies."""
    r = Report("gmap", dict(d=d, max_tree=max_tree, max_binary=max_binary))
    binaries = _patterns(2, 2, max_binary)
    for n in range(1, max_tree + 1):
        for t in _trees(d, n, strict=True):
            g = g_map(t, d)
            r.checked += 1
            if g.leaf_count != t.leaf_count or not g.valid_for(2):
                r.fail(check="size/binary", tree=t, image=g)
            for b in binaries:
                before, after = count_copies(b, t).copies, count_copies(b, g).copies
                r.checked += 1
                if after < before:
                    r.fail(check="injection", tree=t, image=g, pattern=b, before=before, after=after)
    image = g_map(build_star(d), d)
    if image.code != build_caterpillar(2, d).code:
        r.fail(check="star image", image=image)
    r.details["star_image"] = image
    return r


def suite_compose(d=3, max_s=3, max_tree=6):
    """Copies of F(S1;S2) in F(S1;T) are at least c(S2,T)^|S1|."""
    r = Report("compose", dict(d=d, max_s=max_s, max_tree=max_tree))
    s1s = [t for n in range(1, max_s + 1) for t in _trees(d, n)]
    s2s = _patterns(d, 2, max_s)
    hosts = [t for n in range(1, max_tree + 1) for t in _trees(d, n)]
    for s1 in s1s:
        for s2 in s2s:
            big = compose(s1, s2)
            if big.leaf_count != s1.leaf_count * s2.leaf_count:
                r.fail(check="size", s1=s1, s2=s2)
            for t in hosts:
                lhs = count_copies(big, compose(s1, t)).copies
                rhs = count_copies(s2, t).copies ** s1.leaf_count
                r.checked += 1
                if lhs < rhs:
                    r.fail(check="count bound", s1=s1, s2=s2, tree=t, lhs=lhs, rhs=rhs)
    return r


def _iterate_floor(k: int, n: int) -> Fraction:
    """Finite lower bound on the density of D in T^[n], |D| = k."""
    size = k ** (n - 1)
    if size < k:
        return Fraction(0)
    return Fraction(k ** ((n - 1) * k) - k ** (n - 1), (k**k - k) * math.comb(size, k))


def suite_iterate(pattern: Tree | None = None, max_n=5, gamma_steps=7, target=None, tol=Fraction(1, 100),
                  leaf_budget=DEFAULT_LEAF_BUDGET):
    """Recurrence along T^[n] and the density of the last iterate."""
    pattern = pattern if pattern is not None else build_star(3)
    k = pattern.leaf_count
    r = Report("iterate", dict(pattern=pattern, max_n=max_n, gamma_steps=gamma_steps, target=target, tol=tol))
    table = PatternTable()
    trees = [iterate_compose(pattern, n, leaf_budget) for n in range(1, max_n + 2)]
    for n in range(1, max_n + 1):
        cur, nxt = trees[n - 1], trees[n]
        c_cur = count_copies(pattern, cur, table).copies
        c_nxt = count_copies(pattern, nxt, table).copies
        bound = k * c_cur + cur.leaf_count**k
        r.checked += 1
        if c_nxt < bound:
            r.fail(check="recurrence", n=n, lhs=c_nxt, rhs=bound)
    big = iterate_compose(pattern, gamma_steps, leaf_budget)
    gamma = count_copies(pattern, big, table).density
    floor = _iterate_floor(k, gamma_steps)
    r.details.update(leaves=big.leaf_count, density=gamma, density_float=float(gamma),
                     finite_lower_bound=floor, limit_lower_bound=lower_bound_generic(k))
    r.checked += 1
    if gamma < floor:
        r.fail(check="finite lower bound", density=gamma, bound=floor)
    if target is not None:
        r.checked += 1
        if abs(gamma - Fraction(target)) > tol:
            r.fail(check="target", density=gamma, target=target, tol=tol)
    return r


def suite_tstar(ds=(2, 3), ns=(16, 25, 13, 37), max_pattern=3, constant=5):
    """T* construction ledger and the observed density gap."""
    r = Report("tstar", dict(ds=ds, ns=ns, max_pattern=max_pattern, constant=constant))
    cases = []
    for d in ds:
        patterns = _patterns(d, 2, max_pattern)
        for n in ns:
            if (n - 1) % (d - 1):
                cases.append({"d": d, "n": n, "skipped": f"n is not 1 mod {d - 1}"})
                continue
            size = math.isqrt(n)
            worst, worst_at = Fraction(0), None
            trees = 0
            for t in _trees(d, size):
                tr = t_star(t, d, n)
                trees += 1
                r.checked += 1
                if tr.result.leaf_count != n or not tr.result.strict_for(d):
                    r.fail(check="ledger", d=d, n=n, tree=t)
                for p in patterns:
                    if p.leaf_count > size:
                        continue
                    gap = abs(count_copies(p, t).density - count_copies(p, tr.result).density)
                    if gap > worst:
                        worst, worst_at = gap, {"tree": t, "pattern": p, "t_star": tr.result}
            # gap <= c / sqrt(n)  <=>  gap^2 * n <= c^2
            ok = worst * worst * n <= constant * constant
            case = {"d": d, "n": n, "trees": trees, "max_gap": worst, "max_gap_float": float(worst),
                    "measured_constant": float(worst) * math.sqrt(n), "within_bound": ok}
            if worst_at:
                case["worst"] = worst_at
            cases.append(case)
            if not ok:
                r.fail(check="gap", **case)
    r.details["cases"] = cases
    return r


def suite_containment(ds=(2, 3), ks=(3, 4, 5), extra=3, small=8, small_ks=range(2, 6),
                      enumeration_budget=10**5):
    """Trees with more than d^(k-2) leaves contain the k-leaf binary caterpillar."""
    r = Report("containment", dict(ds=ds, ks=ks, extra=extra, small=small, enumeration_budget=enumeration_budget))
    ranges = []
    for d in ds:
        for k in ks:
            cat = build_caterpillar(2, k)
            lo = d ** (k - 2)
            for n in range(lo + 1, lo + extra + 1):
                spec = EnumerationSpec(d, n)
                total = count_trees(spec)
                entry = {"d": d, "k": k, "n": n, "trees": total}
                if total <= enumeration_budget:
                    entry["method"] = "enumeration"
                    table = PatternTable()
                    for t in enumerate_trees(spec):
                        r.checked += 1
                        if count_copies(cat, t, table).copies < 1 or not contains_binary_caterpillar(t, k):
                            r.fail(check="large trees contain", d=d, k=k, tree=t)
                else:
                    # only trees of height <= k-2 can avoid the caterpillar; count them exactly
                    short = count_trees_by_height(spec, k - 2)
                    entry.update(method="height-count", trees_of_height_at_most_k_minus_2=short)
                    r.checked += 1
                    if short:
                        r.fail(check="large trees contain", d=d, k=k, n=n, short_trees=short)
                ranges.append(entry)
    for d in ds:
        for n in range(1, small + 1):
            table = PatternTable()
            for t in _trees(d, n):
                for k in small_ks:
                    has = count_copies(build_caterpillar(2, k), t, table).copies >= 1
                    r.checked += 1
                    if has != contains_binary_caterpillar(t, k):
                        r.fail(check="equivalence", d=d, k=k, tree=t, counted=has)
    if contains_binary_caterpillar(build_complete(2, 2), 4):
        r.fail(check="complete binary height 2", k=4)
    r.details["ranges"] = ranges
    return r


SUITES: dict[str, Callable[..., Report]] = {
    "oracle": suite_oracle,
    "stars": suite_stars,
    "caterpillars": suite_caterpillars,
    "monotone": suite_monotone,
    "gmap": suite_gmap,
    "compose": suite_compose,
    "iterate": suite_iterate,
    "tstar": suite_tstar,
    "containment": suite_containment,
    "completeness": suite_completeness,
}


def verify(suite: str, **params) -> Report:
    """Run one named suite; keyword arguments override its defaults."""
    try:
        fn = SUITES[suite]
    except KeyError:
        raise InducibilityError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}") from None
    return fn(**params)
