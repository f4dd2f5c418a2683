"""Shared fixtures and independent reference implementations for the tests."""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import strategies as st

from inducibility.tree import LEAF, Tree, canonicalize


def trees(max_degree: int = 3, max_leaves: int = 12):
    """Hypothesis strategy for trees with at most ``max_degree`` children per vertex."""
    return st.recursive(
        st.just(LEAF),
        lambda kids: st.lists(kids, min_size=2, max_size=max_degree).map(Tree),
        max_leaves=max_leaves,
    )


def spanner_induce(t: Tree, leaves) -> str:
    """Leaf-induced subtree computed on an explicit vertex/parent graph.

    Builds the minimal subtree containing the chosen leaves (union of their
    root paths, cut at the deepest common ancestor), then suppresses every
    vertex with exactly one child.  Returns the canonical code.
    """
    parent, kids, leaf_ids = {}, {}, []
    counter = [0]

    def build(node, par):
        vid = counter[0]
        counter[0] += 1
        parent[vid] = par
        kids[vid] = []
        if par is not None:
            kids[par].append(vid)
        if node.is_leaf:
            leaf_ids.append(vid)
        for c in node.children:
            build(c, vid)

    build(t, None)
    chosen = [leaf_ids[i] for i in leaves]

    def path(v):
        out = []
        while v is not None:
            out.append(v)
            v = parent[v]
        return out[::-1]

    paths = [path(v) for v in chosen]
    mrca = None
    for level in zip(*paths):
        if len(set(level)) == 1:
            mrca = level[0]
        else:
            break
    keep = {v for p in paths for v in p[p.index(mrca):]}
    sub = {v: [c for c in kids[v] if c in keep] for v in keep}

    def shape(v):
        ch = sub[v]
        while len(ch) == 1:
            v = ch[0]
            ch = sub[v]
        if not ch:
            return LEAF
        return Tree(shape(c) for c in ch)

    return canonicalize(shape(mrca)).code


def _grow(t: Tree, d: int | None):
    """All trees obtained from ``t`` by inserting one new leaf."""
    new_leaf = LEAF
    # new cherry above this vertex
    yield Tree([t, new_leaf])
    if t.is_leaf:
        return
    if d is None or len(t.children) < d:
        yield Tree(t.children + (new_leaf,))
    for i, c in enumerate(t.children):
        for g in _grow(c, d):
            yield Tree(t.children[:i] + (g,) + t.children[i + 1:])


@lru_cache(maxsize=None)
def universe_by_growth(d: int, n: int) -> frozenset[str]:
    """Canonical codes of all d-ary trees with n leaves, by leaf insertion and dedupe."""
    if n == 1:
        return frozenset({"*"})
    from inducibility.tree import parse

    out = set()
    for code in universe_by_growth(d, n - 1):
        for g in _grow(parse(code), d):
            if g.valid_for(d):
                out.add(g.code)
    return frozenset(out)


@pytest.fixture
def sample_tree():
    from inducibility.tree import parse

    return parse("((*,*),*,((*,*),*,*))")
