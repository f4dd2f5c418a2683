"""Tree transformations: the binary injection G, composition, iterated
composition, and the strictly d-ary padding T*."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionError
from .tree import LEAF, Tree, serialize, sort_key, strict_filler

__all__ = [
    "ConstructionTrace",
    "g_map",
    "compose",
    "iterate_compose",
    "t_star",
    "DEFAULT_LEAF_BUDGET",
]

DEFAULT_LEAF_BUDGET = 10**6


def g_map(t: Tree, d: int) -> Tree:
    """Binary tree G(t) for a strictly ``d``-ary tree ``t`` (``d >= 3``).

    Branches are taken in canonical order T_1 <= ... <= T_d.  G(T_1) and
    G(T_2) form a cherry; each further G(T_i) hangs beside the path built so
    far, so G(T_d) sits directly below the new root.  Leaf counts are kept.
    """
    if d < 3:
        raise PreconditionError(f"g_map needs d >= 3, got {d}")
    if not t.strict_for(d):
        raise PreconditionError(f"input is not strictly {d}-ary")
    return _g(t)


def _g(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    images = [_g(b) for b in sorted(t.children, key=sort_key)]
    node = Tree(images[:2])
    for img in images[2:]:
        node = Tree([node, img])
    return node


def compose(s1: Tree, s2: Tree) -> Tree:
    """Replace every leaf of ``s1`` by a copy of ``s2``."""
    if s1.is_leaf:
        return s2
    if s2.is_leaf:
        return s1
    return _graft(s1, s2)


def _graft(s1: Tree, s2: Tree) -> Tree:
    if s1.is_leaf:
        return s2
    return Tree([_graft(c, s2) for c in s1.children])


def iterate_compose(d_pattern: Tree, steps: int, leaf_budget: int = DEFAULT_LEAF_BUDGET) -> Tree:
    """T^[steps], where T^[1] is a single leaf and T^[j+1] = compose(D, T^[j])."""
    if steps < 1:
        raise PreconditionError(f"steps must be >= 1, got {steps}")
    size = d_pattern.leaf_count ** (steps - 1)
    if size > leaf_budget:
        raise BudgetExceeded(f"T^[{steps}] would have {size} leaves, over the budget of {leaf_budget}")
    t = LEAF
    for _ in range(steps - 1):
        t = compose(d_pattern, t)
    return t


@dataclass(frozen=True)
class ConstructionTrace:
    t_prime: Tree
    added_leaves: int
    m: int
    s: Tree
    t_double_prime: Tree
    s_p: Tree
    result: Tree

    def as_dict(self) -> dict[str, str]:
        return {
            "t_prime": serialize(self.t_prime),
            "added_leaves": str(self.added_leaves),
            "m": str(self.m),
            "s": serialize(self.s),
            "t_double_prime": serialize(self.t_double_prime),
            "s_p": serialize(self.s_p),
            "result": serialize(self.result),
            "sizes": {
                "t_prime": str(self.t_prime.leaf_count),
                "s": str(self.s.leaf_count),
                "t_double_prime": str(self.t_double_prime.leaf_count),
                "s_p": str(self.s_p.leaf_count),
                "result": str(self.result.leaf_count),
            },
        }


def _strictify(t: Tree, d: int) -> tuple[Tree, int]:
    """Pad every internal vertex with single leaves up to ``d`` children.

    Original children keep their positions; the padding leaves come last.
    """
    if t.is_leaf:
        return t, 0
    kids, added = [], d - len(t.children)
    for c in t.children:
        sub, a = _strictify(c, d)
        kids.append(sub)
        added += a
    return Tree(kids + [LEAF] * (d - len(t.children))), added


def _hang_on_original_leaves(t: Tree, d: int, s: Tree) -> Tree:
    # mirrors _strictify: children beyond the original ones are padding leaves
    if t.is_leaf:
        return s
    kids = [_hang_on_original_leaves(c, d, s) for c in t.children]
    return Tree(kids + [LEAF] * (d - len(t.children)))


def _hang_at_last_leaf(host: Tree, t: Tree) -> Tree:
    if host.is_leaf:
        return t
    return Tree(host.children[:-1] + (_hang_at_last_leaf(host.children[-1], t),))


def t_star(t: Tree, d: int, n: int) -> ConstructionTrace:
    """Strictly ``d``-ary tree with ``n`` leaves whose densities track those of ``t``.

    ``t`` has floor(sqrt(n)) leaves.  Steps: pad ``t`` to a strictly d-ary T';
    hang a strict tree S with m - (d - 1) leaves on every original leaf,
    giving T''; then hang T'' at a leaf of a strict tree S_P so that the
    total is exactly ``n``.  S and S_P are d-ary caterpillars.
    """
    if d < 2:
        raise PreconditionError(f"d must be >= 2, got {d}")
    if (n - 1) % (d - 1):
        raise PreconditionError(f"n={n} is not 1 mod {d - 1}")
    root = math.isqrt(n)
    if t.leaf_count != root:
        raise PreconditionError(f"tree has {t.leaf_count} leaves, expected floor(sqrt({n})) = {root}")
    if not t.valid_for(d):
        raise PreconditionError(f"tree is not {d}-ary")
    m = root - (root - 1) % (d - 1)
    if m < d:
        raise PreconditionError(f"m={m} is below d={d}; n={n} is too small")

    t_prime, added = _strictify(t, d)
    s = strict_filler(d, m - (d - 1))
    t_pp = _hang_on_original_leaves(t, d, s)
    sp_size = 1 + n - t_pp.leaf_count
    if sp_size < 1 or (sp_size - 1) % (d - 1) or 1 < sp_size < d:
        raise PreconditionError(f"S_P would need {sp_size} leaves, which no strictly {d}-ary tree has")
    s_p = strict_filler(d, sp_size)
    result = _hang_at_last_leaf(s_p, t_pp)

    trace = ConstructionTrace(t_prime, added, m, s, t_pp, s_p, result)
    _check_trace(trace, t, d, n)
    return trace


def _check_trace(tr: ConstructionTrace, t: Tree, d: int, n: int) -> None:
    ok = (
        tr.t_prime.leaf_count == t.leaf_count + tr.added_leaves
        and tr.t_double_prime.leaf_count == t.leaf_count * tr.s.leaf_count + tr.added_leaves
        and tr.result.leaf_count == tr.t_double_prime.leaf_count + tr.s_p.leaf_count - 1 == n
        and all(x.strict_for(d) for x in (tr.t_prime, tr.s, tr.t_double_prime, tr.s_p, tr.result))
    )
    if not ok:
        raise AssertionError("T* construction violated its size ledger")
