"""Maximum densities, inducibility intervals and closed-form values."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .counting import PatternTable, count_copies
from .enumeration import EnumerationSpec, enumerate_trees, first_branch_sizes
from .errors import PreconditionError
from .tree import Tree, canonicalize, parse

__all__ = [
    "MaxDensityResult",
    "InducibilityInterval",
    "max_density",
    "inducibility_interval",
    "bounds_table",
    "star_inducibility",
    "caterpillar_count",
    "lower_bound_generic",
    "contains_binary_caterpillar",
    "strict_gap",
    "intervals_across_d",
]


@dataclass(frozen=True)
class MaxDensityResult:
    n: int
    d: int
    strict: bool
    max_density: Fraction
    maximizers: tuple[str, ...]


@dataclass(frozen=True)
class InducibilityInterval:
    pattern: Tree
    d: int
    n_used: int
    lower: Fraction
    upper: Fraction

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper


def _scan(pattern_code: str, spec: EnumerationSpec, first_size: int | None):
    """Best density and its maximizers over (a partition of) the universe."""
    pattern = parse(pattern_code)
    table = PatternTable()
    best, winners = Fraction(-1), []
    for t in enumerate_trees(spec, first_size):
        q = count_copies(pattern, t, table).density
        if q > best:
            best, winners = q, [t.code]
        elif q == best:
            winners.append(t.code)
    return best, winners


def max_density(pattern: Tree, spec: EnumerationSpec, workers: int = 1) -> MaxDensityResult:
    """Exact maximum of the density of ``pattern`` over the universe ``spec``.

    With ``workers > 1`` the universe is split by first-branch size and
    scanned in separate processes; the exact reduction makes the result
    independent of the schedule.
    """
    if pattern.leaf_count > spec.n:
        raise PreconditionError(f"pattern has {pattern.leaf_count} leaves, more than n={spec.n}")
    if not pattern.valid_for(spec.d):
        raise PreconditionError(f"pattern is not {spec.d}-ary")
    if not spec.feasible:
        raise PreconditionError(f"the universe {spec} is empty")
    code = canonicalize(pattern).code
    if workers > 1 and spec.n > 1:
        parts = first_branch_sizes(spec)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan, [code] * len(parts), [spec] * len(parts), parts))
    else:
        results = [_scan(code, spec, None)]
    best = max(r[0] for r in results)
    if best < 0:
        raise PreconditionError(f"the universe {spec} is empty")
    winners = sorted(c for q, ws in results if q == best for c in ws)
    return MaxDensityResult(spec.n, spec.d, spec.strict, best, tuple(winners))


def _interval_from_max(pattern: Tree, d: int, n: int, upper: Fraction) -> InducibilityInterval:
    k = pattern.leaf_count
    return InducibilityInterval(pattern, d, n, upper * (1 - Fraction(k * (k - 1), n)), upper)


def inducibility_interval(pattern: Tree, d: int, n: int, workers: int = 1) -> InducibilityInterval:
    """Rigorous bracket for the inducibility of ``pattern`` in ``d``-ary trees.

    ``upper`` is the maximum density over all ``d``-ary trees with ``n``
    leaves and ``lower = upper * (1 - k(k-1)/n)`` with ``k = |pattern|``.
    """
    k = pattern.leaf_count
    if n <= k * (k - 1):
        raise PreconditionError(f"n={n} must exceed k(k-1)={k * (k - 1)} for a positive lower bound")
    upper = max_density(pattern, EnumerationSpec(d, n), workers).max_density
    return _interval_from_max(pattern, d, n, upper)


def bounds_table(
    pattern: Tree,
    d: int,
    max_leaves: int,
    min_leaves: int | None = None,
    time_budget: float | None = None,
    workers: int = 1,
) -> Iterator[dict]:
    """Rows ``n, M_n, lower, upper`` for increasing ``n``.

    Rows with ``n <= k(k-1)`` carry the trivial lower bound 0.  Stops early,
    after finishing the current row, once ``time_budget`` seconds have passed.
    """
    k = pattern.leaf_count
    start = time.monotonic()
    for n in range(min_leaves or k, max_leaves + 1):
        upper = max_density(pattern, EnumerationSpec(d, n), workers).max_density
        lower = max(Fraction(0), _interval_from_max(pattern, d, n, upper).lower)
        yield {"n": n, "max_density": upper, "lower": lower, "upper": upper}
        if time_budget is not None and time.monotonic() - start > time_budget:
            return


def star_inducibility(d: int, k: int) -> Fraction:
    """Inducibility of the k-leaf star among strictly d-ary trees."""
    if not 2 <= k <= d:
        raise PreconditionError(f"need 2 <= k <= d, got k={k}, d={d}")
    return Fraction(math.factorial(d), math.factorial(d - k) * (d**k - d))


def caterpillar_count(d: int, k: int, n: int) -> int:
    """Copies of the k-leaf binary caterpillar in the n-leaf d-ary caterpillar."""
    if d < 2 or k < 2 or n < 2:
        raise PreconditionError("need d >= 2 and k, n > 1")
    if d > 2 and (n - 1) % (d - 1):
        raise PreconditionError(f"no strictly {d}-ary caterpillar has {n} leaves")
    value = Fraction((d - 1) ** (k - 1) * math.comb((n - 1) // (d - 1), k - 1) * (2 * n - (d - 2) * (k - 2)), 2 * k)
    if value.denominator != 1:
        raise ArithmeticError(f"caterpillar count for d={d}, k={k}, n={n} is not an integer: {value}")
    return int(value)


def lower_bound_generic(k: int) -> Fraction:
    """Inducibility lower bound valid for every tree with ``k`` leaves."""
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    return Fraction(math.factorial(k - 1), k ** (k - 1) - 1)


def contains_binary_caterpillar(t: Tree, k: int) -> bool:
    """Whether some k leaves of ``t`` induce the binary caterpillar F^2_k."""
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    return t.height >= k - 1


def strict_gap(pattern: Tree, d: int, n: int) -> dict:
    """Maximum densities over strict and general d-ary universes at ``n``."""
    general = max_density(pattern, EnumerationSpec(d, n)).max_density
    strict_spec = EnumerationSpec(d, n, strict=True)
    strict = max_density(pattern, strict_spec).max_density if strict_spec.feasible else None
    return {
        "n": n,
        "d": d,
        "general": general,
        "strict": strict,
        "gap": None if strict is None else general - strict,
    }


def intervals_across_d(pattern: Tree, ds, n: int) -> list[InducibilityInterval]:
    """Intervals for one pattern in several degree bounds (exploration only)."""
    return [inducibility_interval(pattern, d, n) for d in ds if pattern.valid_for(d)]
