"""Rooted tree shapes, their text grammar, canonical forms and leaf-induced subtrees.

A tree is written with the grammar::

    tree := "*" | "(" tree ("," tree)+ ")"

Leaves carry no labels; a leaf is identified only by its position in a
depth-first pre-order walk of one particular serialization (0-based).

Canonical order of siblings is ``(leaf_count, code)`` ascending, where
``code`` is the canonical serialization of the sibling.  The canonical code of
a tree is therefore a complete isomorphism certificate for rooted trees.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ArityError, LeafIndexError, PreconditionError, TreeSyntaxError

__all__ = [
    "Tree",
    "LEAF",
    "parse",
    "serialize",
    "canonicalize",
    "is_isomorphic",
    "induce",
    "delete_leaf",
    "build_star",
    "build_caterpillar",
    "build_complete",
]


class Tree:
    """Immutable rooted tree shape.

    Equality and hashing are structural *with* child order, so
    ``parse(serialize(t)) == t``.  Use :func:`is_isomorphic` (or compare
    ``code``) for equality up to isomorphism.
    """

    __slots__ = (
        "children",
        "leaf_count",
        "height",
        "code",
        "internal_count",
        "max_degree",
        "min_degree",
        "_hash",
    )

    def __init__(self, children: Iterable[Tree] = ()):
        children = tuple(children)
        if len(children) == 1:
            raise ArityError("internal vertex with a single child")
        for c in children:
            if not isinstance(c, Tree):
                raise TypeError(f"children must be Tree instances, got {type(c).__name__}")
        s = object.__setattr__
        s(self, "children", children)
        if not children:
            s(self, "leaf_count", 1)
            s(self, "height", 0)
            s(self, "code", "*")
            s(self, "internal_count", 0)
            s(self, "max_degree", 0)
            s(self, "min_degree", 0)
            s(self, "_hash", hash("*"))
            return
        k = len(children)
        s(self, "leaf_count", sum(c.leaf_count for c in children))
        s(self, "height", 1 + max(c.height for c in children))
        ordered = sorted(children, key=sort_key)
        s(self, "code", "(" + ",".join(c.code for c in ordered) + ")")
        s(self, "internal_count", 1 + sum(c.internal_count for c in children))
        s(self, "max_degree", max(k, max(c.max_degree for c in children)))
        s(self, "min_degree", min([k] + [c.min_degree for c in children if c.children]))
        s(self, "_hash", hash(tuple(c._hash for c in children)))

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __delattr__(self, name):
        raise AttributeError("Tree is immutable")

    def __reduce__(self):
        return (parse, (serialize(self),))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({serialize(self)!r})"

    def __str__(self):
        return serialize(self)

    def __len__(self):
        return self.leaf_count

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def valid_for(self, d: int | None) -> bool:
        """Every vertex has at most ``d`` children (``None`` means unbounded)."""
        return d is None or self.max_degree <= d

    def strict_for(self, d: int) -> bool:
        """Every internal vertex has exactly ``d`` children."""
        return self.is_leaf or (self.max_degree == d and self.min_degree == d)


def sort_key(t: Tree) -> tuple[int, str]:
    """The artifact-wide total order on tree shapes."""
    return (t.leaf_count, t.code)


LEAF = Tree()


def parse(text: str | bytes, d: int | None = None) -> Tree:
    """Parse ``text`` into a :class:`Tree`, keeping the written child order.

    With a bounded ``d`` every vertex must have at most ``d`` children.
    Whitespace between tokens is ignored.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise TreeSyntaxError("non-ASCII byte", exc.start) from None
    if d is not None and d < 2:
        raise PreconditionError(f"degree bound must be >= 2, got {d}")

    # stack entries: [offset of "(", children so far]
    stack: list[tuple[int, list[Tree]]] = []
    result: Tree | None = None
    expect_tree = True
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if result is not None:
            raise TreeSyntaxError(f"unexpected {ch!r} after complete tree", pos)
        if expect_tree:
            if ch == "*":
                node = LEAF
            elif ch == "(":
                stack.append((pos, []))
                pos += 1
                continue
            else:
                raise TreeSyntaxError(f"expected '*' or '(', found {ch!r}", pos)
        elif ch == ",":
            expect_tree = True
            pos += 1
            continue
        elif ch == ")":
            start, kids = stack.pop()
            if len(kids) < 2:
                raise ArityError("vertex has 1 child", start)
            if d is not None and len(kids) > d:
                raise ArityError(f"vertex has {len(kids)} children, more than d={d}", start)
            node = Tree(kids)
        else:
            raise TreeSyntaxError(f"expected ',' or ')', found {ch!r}", pos)
        pos += 1
        expect_tree = False
        if stack:
            stack[-1][1].append(node)
        else:
            result = node
    if result is None:
        if stack and not expect_tree:
            raise TreeSyntaxError("missing ')'", n)
        raise TreeSyntaxError("unexpected end of input", n)
    return result


def serialize(t: Tree) -> str:
    """Write ``t`` in the tree grammar, children in stored order."""
    out: list[str] = []
    stack: list[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif item.is_leaf:
            out.append("*")
        else:
            out.append("(")
            stack.append(")")
            kids = item.children
            for i in range(len(kids) - 1, -1, -1):
                stack.append(kids[i])
                if i:
                    stack.append(",")
    return "".join(out)


def canonicalize(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    return Tree(sorted((canonicalize(c) for c in t.children), key=sort_key))


def is_isomorphic(a: Tree, b: Tree) -> bool:
    return a.code == b.code


def _check_leaf_set(t: Tree, leaves: Iterable[int]) -> list[int]:
    idx = sorted(leaves)
    if not idx:
        raise LeafIndexError("leaf set is empty")
    for i in idx:
        if not isinstance(i, int) or i < 0 or i >= t.leaf_count:
            raise LeafIndexError(f"leaf index {i!r} out of range for a tree with {t.leaf_count} leaves")
    for a, b in zip(idx, idx[1:]):
        if a == b:
            raise LeafIndexError(f"duplicate leaf index {a}")
    return idx


def induce(t: Tree, leaves: Iterable[int]) -> Tree:
    """Canonical leaf-induced subtree of ``t`` on the given DFS leaf indices.

    The result is rooted at the most recent common ancestor of the chosen
    leaves; every vertex left with a single child is suppressed.
    """
    chosen = set(_check_leaf_set(t, leaves))

    def walk(node: Tree, offset: int) -> Tree | None:
        if node.is_leaf:
            return LEAF if offset in chosen else None
        parts = []
        for c in node.children:
            sub = walk(c, offset)
            if sub is not None:
                parts.append(sub)
            offset += c.leaf_count
        if not parts:
            return None
        if len(parts) == 1:
            return parts[0]
        return Tree(sorted(parts, key=sort_key))

    return walk(t, 0)


def delete_leaf(t: Tree, index: int) -> Tree | None:
    """Remove one leaf and suppress its parent if that leaves it one child.

    Returns ``None`` when ``t`` is the single-vertex tree.
    """
    _check_leaf_set(t, [index])

    def walk(node: Tree, offset: int) -> Tree | None:
        if node.is_leaf:
            return None
        kids = list(node.children)
        for j, c in enumerate(kids):
            if offset <= index < offset + c.leaf_count:
                sub = walk(c, offset)
                if sub is None:
                    del kids[j]
                else:
                    kids[j] = sub
                break
            offset += c.leaf_count
        return kids[0] if len(kids) == 1 else Tree(kids)

    return walk(t, 0)


def leaf_depths(t: Tree) -> Iterator[int]:
    """Depths (in edges) of the leaves of ``t`` in DFS order."""
    stack = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        if node.is_leaf:
            yield depth
        else:
            stack.extend((c, depth + 1) for c in reversed(node.children))


def build_star(k: int) -> Tree:
    if k < 2:
        raise PreconditionError(f"a star needs at least 2 leaves, got {k}")
    return Tree([LEAF] * k)


def build_caterpillar(d: int, k: int) -> Tree:
    """Strictly ``d``-ary caterpillar with ``k`` leaves.

    Internal vertices lie on one path from the root; the lowest holds ``d``
    leaves and every other one holds ``d - 1`` leaves plus the next vertex.
    """
    if d < 2:
        raise PreconditionError(f"d must be >= 2, got {d}")
    if k < d or (k - 1) % (d - 1):
        raise PreconditionError(f"no strictly {d}-ary caterpillar has {k} leaves")
    t = Tree([LEAF] * d)
    for _ in range((k - 1) // (d - 1) - 1):
        t = Tree([LEAF] * (d - 1) + [t])
    return t


def build_complete(d: int, h: int) -> Tree:
    if d < 2:
        raise PreconditionError(f"d must be >= 2, got {d}")
    if h < 0:
        raise PreconditionError(f"height must be >= 0, got {h}")
    t = LEAF
    for _ in range(h):
        t = Tree([t] * d)
    return t


def strict_filler(d: int, k: int) -> Tree:
    """Single leaf for ``k == 1``, otherwise the ``d``-ary caterpillar."""
    return LEAF if k == 1 else build_caterpillar(d, k)


def as_tree(t: Tree | str, d: int | None = None) -> Tree:
    return t if isinstance(t, Tree) else parse(t, d)


def iter_subtrees(t: Tree) -> Iterator[Tree]:
    """Every full subtree of ``t`` (pre-order, including ``t`` itself)."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))
