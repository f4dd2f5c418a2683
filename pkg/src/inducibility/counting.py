"""Exact copy counts c(D, T) and densities of leaf-induced subtrees.

The dynamic program works on a vertex ``v`` of the host tree and a pattern
``p`` drawn from the closure of ``D`` (``D`` itself, every full subtree hanging
at an internal vertex of ``D``, and the single leaf).  A copy of ``p`` under
``v`` either lies inside one child of ``v`` or has ``v`` as its root; in the
latter case the branches of ``p`` are matched to distinct children of ``v``.
That matching is counted by a second DP over the children of ``v`` whose state
is the vector of branch multiplicities still to be placed, so equal branches
are never ordered and no leaf set is counted twice.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceeded, PreconditionError
from .tree import Tree, canonicalize, delete_leaf, induce

__all__ = [
    "CountResult",
    "LeafCopyProfile",
    "PatternTable",
    "count_copies",
    "brute_force_count",
    "count_through_leaf",
    "density",
    "DEFAULT_SUBSET_BUDGET",
]

DEFAULT_SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class CountResult:
    copies: int
    total_subsets: int
    density: Fraction

    @classmethod
    def of(cls, copies: int, n: int, k: int) -> CountResult:
        total = math.comb(n, k)
        # no k-subsets at all when k > n; report density 0 rather than 0/0
        return cls(copies, total, Fraction(copies, total) if total else Fraction(0))

    def as_dict(self) -> dict[str, str]:
        return {"copies": str(self.copies), "total": str(self.total_subsets), "density": _fmt(self.density)}


@dataclass(frozen=True)
class LeafCopyProfile:
    per_leaf: tuple[int, ...]

    def __iter__(self):
        return iter(self.per_leaf)

    def __len__(self):
        return len(self.per_leaf)

    def __getitem__(self, i):
        return self.per_leaf[i]


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class PatternTable:
    """Memo of DP entries keyed by (pattern code, host subtree code).

    Entries are only ever inserted, never changed, so one table can be shared
    between many host trees (and threads) counting the same pattern family.
    """

    def __init__(self):
        self._memo: dict[tuple[str, str], int] = {}

    def __len__(self):
        return len(self._memo)

    def get(self, pattern: Tree, host: Tree) -> int | None:
        return self._memo.get((pattern.code, host.code))

    def put(self, pattern: Tree, host: Tree, value: int) -> int:
        return self._memo.setdefault((pattern.code, host.code), value)


@lru_cache(maxsize=4096)
def _branch_types(p: Tree) -> tuple[tuple[Tree, ...], tuple[int, ...]]:
    mult = Counter(c.code for c in p.children)
    kinds = {}
    for c in p.children:
        kinds.setdefault(c.code, c)
    codes = sorted(kinds)
    return tuple(kinds[c] for c in codes), tuple(mult[c] for c in codes)


def _count(p: Tree, v: Tree, table: PatternTable) -> int:
    if p.is_leaf:
        return v.leaf_count
    if v.is_leaf or p.leaf_count > v.leaf_count or p.max_degree > v.max_degree:
        return 0
    hit = table.get(p, v)
    if hit is not None:
        return hit
    total = sum(_count(p, u, table) for u in v.children) + _span(p, v, table)
    return table.put(p, v, total)


def _span(p: Tree, v: Tree, table: PatternTable) -> int:
    """Copies of ``p`` whose root is exactly ``v``."""
    kinds, mult = _branch_types(p)
    need = sum(mult)
    kids = v.children
    if len(kids) < need:
        return 0
    states: dict[tuple[int, ...], int] = {mult: 1}
    for idx, u in enumerate(kids):
        slots_left = len(kids) - idx - 1
        weights = [_count(b, u, table) for b in kinds]
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for state, ways in states.items():
            remaining = sum(state)
            if remaining <= slots_left:
                nxt[state] += ways
            for j, w in enumerate(weights):
                if state[j] and w:
                    s = list(state)
                    s[j] -= 1
                    nxt[tuple(s)] += ways * w
        states = nxt
    return states.get((0,) * len(mult), 0)


def _check_pattern(d_pattern: Tree) -> Tree:
    if d_pattern.leaf_count < 2:
        raise PreconditionError("pattern must have at least 2 leaves")
    return canonicalize(d_pattern)


def count_copies(d_pattern: Tree, t: Tree, table: PatternTable | None = None) -> CountResult:
    """Number of leaf subsets of ``t`` inducing a copy of ``d_pattern``."""
    p = _check_pattern(d_pattern)
    copies = _count(p, t, table if table is not None else PatternTable())
    return CountResult.of(copies, t.leaf_count, p.leaf_count)


def brute_force_count(d_pattern: Tree, t: Tree, budget: int = DEFAULT_SUBSET_BUDGET) -> CountResult:
    """Reference count: induce every |D|-subset of leaves and compare shapes."""
    p = _check_pattern(d_pattern)
    k, n = p.leaf_count, t.leaf_count
    total = math.comb(n, k)
    if total > budget:
        raise BudgetExceeded(f"{total} leaf subsets exceed the budget of {budget}")
    copies = sum(1 for s in combinations(range(n), k) if induce(t, s).code == p.code)
    return CountResult.of(copies, n, k)


def count_through_leaf(d_pattern: Tree, t: Tree, table: PatternTable | None = None) -> LeafCopyProfile:
    """Per-leaf copy counts c_l(D, T) in DFS leaf order.

    Copies avoiding leaf ``l`` are exactly the copies in ``t`` with ``l``
    deleted, so ``c_l = c(D, T) - c(D, T - l)``.
    """
    p = _check_pattern(d_pattern)
    table = table if table is not None else PatternTable()
    whole = _count(p, t, table)
    out = []
    for leaf in range(t.leaf_count):
        rest = delete_leaf(t, leaf)
        out.append(whole - (_count(p, rest, table) if rest is not None else 0))
    return LeafCopyProfile(tuple(out))


def density(d_pattern: Tree, t: Tree, table: PatternTable | None = None) -> Fraction:
    return count_copies(d_pattern, t, table).density
