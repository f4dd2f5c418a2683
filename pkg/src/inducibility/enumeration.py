"""Streaming enumeration of d-ary tree shapes with a given number of leaves.

Trees are produced directly in canonical form: the children of every vertex
are a non-decreasing sequence under the artifact order ``(leaf_count, code)``.
The stream for ``n`` leaves comes out sorted by canonical code.  Because codes
are prefix-free, sorting a tree code is the same as sorting its child-code
sequence lexicographically, so the child sequences are generated in that order
by merging the (sorted) sub-streams of every admissible first-child size.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from .errors import PreconditionError
from .tree import LEAF, Tree

__all__ = [
    "EnumerationSpec",
    "enumerate_trees",
    "count_trees",
    "count_trees_by_height",
    "first_branch_sizes",
]

# sub-universes up to this many shapes are kept in memory while generating
_SUBSTREAM_CACHE_LIMIT = 5000


@dataclass(frozen=True)
class EnumerationSpec:
    d: int
    n: int
    strict: bool = False

    def __post_init__(self):
        if self.d < 2:
            raise PreconditionError(f"d must be >= 2, got {self.d}")
        if self.n < 1:
            raise PreconditionError(f"n must be >= 1, got {self.n}")

    @property
    def feasible(self) -> bool:
        return not self.strict or self.n == 1 or (self.n - 1) % (self.d - 1) == 0


def _min_children(d: int, strict: bool) -> int:
    return d if strict else 2


def enumerate_trees(spec: EnumerationSpec, first_size: int | None = None) -> Iterator[Tree]:
    """Yield every shape of ``spec`` once, sorted by canonical code.

    ``first_size`` restricts the stream to trees whose smallest root branch
    has that many leaves; the sub-streams for :func:`first_branch_sizes`
    partition the universe and can be consumed independently.
    """
    if not spec.feasible:
        return
    if spec.n == 1:
        if first_size is None:
            yield LEAF
        return
    for kids in _child_sequences(spec.n, spec.d, spec.strict, None, 0, first_size):
        yield Tree(kids)


def first_branch_sizes(spec: EnumerationSpec) -> list[int]:
    """Candidate sizes of the smallest root branch (some sub-streams may be empty)."""
    if spec.n == 1 or not spec.feasible:
        return []
    m = _min_children(spec.d, spec.strict)
    return [s for s in range(1, spec.n // m + 1) if count_trees(EnumerationSpec(spec.d, s, spec.strict))]


def _child_sequences(
    rem: int,
    d: int,
    strict: bool,
    lo: Tree | None,
    count: int,
    first_size: int | None = None,
) -> Iterator[tuple[Tree, ...]]:
    """Non-decreasing child tuples with ``rem`` leaves in total, in code order."""
    min_kids = _min_children(d, strict)
    if rem == 0:
        if count >= min_kids:
            yield ()
        return
    slots = d - count
    if slots <= 0:
        return
    lo_size = lo.leaf_count if lo is not None else 1
    # children still required after this one, each at least as large
    more = max(0, min_kids - count - 1)
    if more > slots - 1:
        return
    sizes = []
    for s in range(lo_size, rem + 1):
        left = rem - s
        if left == 0 and more:
            break
        if left and (left < s * max(more, 1) or slots == 1):
            continue
        if count_trees(EnumerationSpec(d, s, strict)):
            sizes.append(s)
    if first_size is not None:
        sizes = [s for s in sizes if s == first_size]

    streams = []
    for s in sizes:
        stream: Iterable[Tree] = _universe(s, d, strict)
        if lo is not None and s == lo.leaf_count:
            stream = (t for t in stream if t.code >= lo.code)
        streams.append(stream)
    for c in heapq.merge(*streams, key=lambda t: t.code):
        for rest in _child_sequences(rem - c.leaf_count, d, strict, c, count + 1):
            yield (c,) + rest


def _universe(n: int, d: int, strict: bool) -> Iterable[Tree]:
    if count_trees(EnumerationSpec(d, n, strict)) <= _SUBSTREAM_CACHE_LIMIT:
        return _cached_universe(n, d, strict)
    return enumerate_trees(EnumerationSpec(d, n, strict))


@lru_cache(maxsize=256)
def _cached_universe(n: int, d: int, strict: bool) -> tuple[Tree, ...]:
    return tuple(enumerate_trees(EnumerationSpec(d, n, strict)))


@lru_cache(maxsize=None)
def _count(d: int, n: int, strict: bool, max_height: int | None) -> int:
    if n == 1:
        return 1
    if max_height is not None and max_height <= 0:
        return 0
    if strict and (n - 1) % (d - 1):
        return 0
    sub_h = None if max_height is None else max_height - 1
    # poly[total][k]: multisets of k branches with `total` leaves, sizes < n
    poly = [[0] * (d + 1) for _ in range(n + 1)]
    poly[0][0] = 1
    for s in range(1, n):
        types = _count(d, s, strict, sub_h)
        if not types:
            continue
        new = [row[:] for row in poly]
        for total in range(n + 1):
            for k in range(d + 1):
                base = poly[total][k]
                if not base:
                    continue
                for j in range(1, d - k + 1):
                    t2 = total + j * s
                    if t2 > n:
                        break
                    new[t2][k + j] += base * math.comb(types + j - 1, j)
        poly = new
    lo = _min_children(d, strict)
    return sum(poly[n][k] for k in range(lo, d + 1))


def count_trees(spec: EnumerationSpec, cache_dir: str | Path | None = None) -> int:
    """Number of shapes in the universe, without materializing them.

    With ``cache_dir`` the value is read from / written to a small JSON file.
    """
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"count-d{spec.d}-n{spec.n}-{'strict' if spec.strict else 'free'}.json"
        if path.exists():
            data = json.loads(path.read_text())
            if (data.get("d"), data.get("n"), data.get("strict")) == (spec.d, spec.n, spec.strict):
                return int(data["count"])
    value = _count(spec.d, spec.n, spec.strict, None)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        record = {"d": spec.d, "n": spec.n, "strict": spec.strict, "count": str(value)}
        path.write_text(json.dumps(record) + "\n")
    return value


def count_trees_by_height(spec: EnumerationSpec, max_height: int) -> int:
    """Number of shapes in the universe whose height is at most ``max_height``."""
    if max_height < 0:
        return 0
    return _count(spec.d, spec.n, spec.strict, max_height)
