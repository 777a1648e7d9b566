"""Unrolling an FDS into periodic infinite trees.

A :class:`PeriodicTree` is an infinite in-tree with a single infinite spine.
Spine vertex ``i`` (the root being vertex 0) carries the children of
``tseq[i % period]`` besides its spine child.  Equality is equality of the
infinite trees, so ``tseq`` is compared after reduction to its primitive
period (not after rotation, which would change the tree).
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable

from .fds import Fds, anchor_trees
from .forest import Forest, Tree, decode_cf, format_code, parse_code, truncate_tree, tree_product

__all__ = [
    "PeriodicTree",
    "UnrolledFds",
    "unroll",
    "unroll_truncated",
    "periodic_product",
    "reroll",
    "spine",
    "cmp_periodic",
    "format_periodic",
    "parse_periodic",
]


def _primitive(seq: tuple) -> tuple:
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq[:p] * (n // p) == seq:
            return seq[:p]
    return seq


class PeriodicTree:
    """Infinite tree given by one period of its spine decorations."""

    __slots__ = ("tseq", "_prim", "_truncs")

    def __init__(self, tseq: Iterable[Tree]):
        self.tseq: tuple[Tree, ...] = tuple(tseq)
        if not self.tseq:
            raise ValueError("a periodic tree needs a period of at least 1")
        self._prim = _primitive(self.tseq)
        self._truncs: list[Tree] = []

    @property
    def period(self) -> int:
        return len(self.tseq)

    @property
    def primitive_period(self) -> int:
        return len(self._prim)

    @property
    def height(self) -> int:
        """Largest depth of an anchored tree (the transient part)."""
        return max(t.depth for t in self.tseq)

    def shifted(self, j: int) -> "PeriodicTree":
        """Subtree hanging from spine vertex ``j``."""
        j %= self.period
        return PeriodicTree(self.tseq[j:] + self.tseq[:j])

    def truncate(self, k: int) -> Tree:
        """Finite truncation at depth ``k``."""
        if k < 0:
            raise ValueError("truncation depth must be nonnegative")
        cache = self._truncs
        if k < len(cache):
            return cache[k]
        # [T]_k is built bottom-up along the spine, one level per step
        p = self.period
        t = truncate_tree(self.tseq[k % p], 0)
        for i in range(k - 1, -1, -1):
            anchored = truncate_tree(self.tseq[i % p], k - i)
            t = Tree.of(anchored.children + (t,))
        if k == len(cache):
            cache.append(t)
        return t

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicTree):
            return NotImplemented
        return self._prim == other._prim

    def __hash__(self) -> int:
        return hash(tuple(t.uid for t in self._prim))

    def __lt__(self, other: "PeriodicTree") -> bool:
        return cmp_periodic(self, other) < 0

    def __mul__(self, other: "PeriodicTree") -> "PeriodicTree":
        return periodic_product(self, other)

    def __repr__(self) -> str:
        return "PeriodicTree([" + "; ".join(format_code(t.code) for t in self.tseq) + "])"


def spine() -> PeriodicTree:
    """The bare infinite path, the multiplicative identity."""
    return PeriodicTree([Tree.of()])


def cmp_periodic(a: PeriodicTree, b: PeriodicTree, depth: int | None = None) -> int:
    """Compare in the order of truncation-code sequences.

    Two periodic trees that agree on truncations up to ``max height +
    lcm(periods) + 1`` are equal, so that bound is the default depth.
    """
    if a == b:
        return 0
    if depth is None:
        depth = max(a.height, b.height) + math.lcm(a.primitive_period, b.primitive_period) + 1
    for i in range(depth + 1):
        x, y = a.truncate(i), b.truncate(i)
        if x is not y:
            return -1 if x.levels < y.levels else 1
    return 0


class UnrolledFds:
    """One periodic tree per cycle state; equality is multiset equality."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[PeriodicTree]):
        self.parts: tuple[PeriodicTree, ...] = tuple(parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnrolledFds):
            return NotImplemented
        return Counter(self.parts) == Counter(other.parts)

    def __hash__(self) -> int:
        return hash(frozenset(Counter(self.parts).items()))

    def truncate(self, k: int) -> Forest:
        return Forest(p.truncate(k) for p in self.parts)

    def minimum(self) -> PeriodicTree:
        best = self.parts[0]
        for p in self.parts[1:]:
            if cmp_periodic(p, best) < 0:
                best = p
        return best

    def __repr__(self) -> str:
        return f"UnrolledFds({list(self.parts)!r})"


def unroll(a: Fds) -> UnrolledFds:
    """Periodic tree at every cycle state, in order of the cycles of ``a``.

    For a cycle ``c_0 -> c_1 -> ...`` the part at ``c_i`` has
    ``tseq = (T(c_i), T(c_{i-1}), ...)``, following predecessors.
    """
    st = a.structure
    parts = []
    for cyc in st.cycles:
        ts = [st.trees[c] for c in cyc]
        n = len(ts)
        for i in range(n):
            parts.append(PeriodicTree(ts[(i - j) % n] for j in range(n)))
    return UnrolledFds(parts)


def unroll_truncated(a: Fds, k: int) -> Forest:
    """Depth-``k`` truncations of every part of ``unroll(a)``."""
    if k < 0:
        raise ValueError("truncation depth must be nonnegative")
    st = a.structure
    out: list[Tree] = []
    for cyc in st.cycles:
        ts = [st.trees[c] for c in cyc]
        n = len(ts)
        # level r holds the truncation at remaining depth r for each cycle state
        cur = [truncate_tree(t, 0) for t in ts]
        for r in range(1, k + 1):
            cur = [
                Tree.of(truncate_tree(ts[i], r).children + (cur[(i - 1) % n],))
                for i in range(n)
            ]
        out.extend(cur)
    return Forest(out)


def periodic_product(a: PeriodicTree, b: PeriodicTree) -> PeriodicTree:
    """Product of two periodic trees, computed exactly on one joint period.

    At spine level ``j`` the anchored children are the products of anchored
    children of both factors, plus each anchored child of one factor times
    the truncation of the other factor's spine subtree from level ``j + 1``.
    """
    p = math.lcm(a.period, b.period)
    tseq = []
    for j in range(p):
        xs = a.tseq[j % a.period].children
        ys = b.tseq[j % b.period].children
        kids = [tree_product(x, y) for x in xs for y in ys]
        if xs:
            rest_b = b.shifted(j + 1)
            kids.extend(tree_product(x, rest_b.truncate(x.depth)) for x in xs)
        if ys:
            rest_a = a.shifted(j + 1)
            kids.extend(tree_product(rest_a.truncate(y.depth), y) for y in ys)
        tseq.append(Tree.of(kids))
    return PeriodicTree(tseq)


def reroll(p: PeriodicTree, cycle_len: int | None = None) -> Fds:
    """Connected FDS with cycle length ``cycle_len`` whose unrolling contains ``p``.

    ``cycle_len`` defaults to the stored period and must be a multiple of
    the primitive period.
    """
    n = p.period if cycle_len is None else cycle_len
    if n < 1 or n % p.primitive_period:
        raise ValueError(f"cycle length {n} is not a multiple of the period {p.primitive_period}")
    prim = p._prim
    seq = [prim[i % len(prim)] for i in range(n)]
    # tseq walks predecessors, the cycle walks successors
    return anchor_trees(n, [seq[0]] + seq[:0:-1])


def format_periodic(p: PeriodicTree) -> str:
    return f"{p.period}\n" + "".join(format_code(t.code) + "\n" for t in p.tseq)


def parse_periodic(text: str) -> PeriodicTree:
    rows = [r for r in text.splitlines() if r.strip() and not r.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty periodic tree text")
    n = int(rows[0])
    if len(rows) - 1 != n:
        raise ValueError(f"expected {n} tree codes, got {len(rows) - 1}")
    return PeriodicTree(decode_cf(parse_code(r)) for r in rows[1:])

