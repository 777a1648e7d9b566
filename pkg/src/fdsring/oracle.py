"""Exhaustive enumeration, brute-force searches and named fixtures.

Everything here is deliberately naive; these are the ground truths the
fast algorithms are tested against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .fds import (
    EMPTY,
    ONE,
    Fds,
    anchor_trees,
    canonical_code,
    cycle,
    fds_sum,
    product,
    product_raw,
    truncate,
)
from .forest import LEAF, Tree, path_tree, tree_product

__all__ = [
    "KINDS",
    "enumerate_kind",
    "count",
    "trees",
    "connected",
    "fds_classes",
    "dendrons",
    "permutations",
    "all_maps_classes",
    "brute_divisor_pairs",
    "brute_tree_quotients",
    "Fixture",
    "fixtures",
    "six_cycle_pair",
    "two_factorisations",
]

KINDS = ("fds", "tree", "dendron", "permutation", "connected")


def _multisets(total: int, pool: Sequence, size: Callable, hi: int | None = None) -> Iterator[tuple]:
    """Multisets from ``pool`` with sizes summing to ``total``, as non-increasing index runs."""
    if total == 0:
        yield ()
        return
    top = len(pool) - 1 if hi is None else hi
    for idx in range(top, -1, -1):
        item = pool[idx]
        s = size(item)
        if s > total:
            continue
        for rest in _multisets(total - s, pool, size, idx):
            yield (item,) + rest


@lru_cache(maxsize=None)
def trees(n: int) -> tuple[Tree, ...]:
    """Rooted unlabelled trees with ``n`` vertices, in code order."""
    if n < 1:
        return ()
    pool = [t for m in range(1, n) for t in trees(m)]
    out = {Tree.of(f) for f in _multisets(n - 1, pool, lambda t: t.size)}
    return tuple(sorted(out, key=lambda t: t.levels))


def _necklace_min(seq: tuple) -> bool:
    return all(seq <= seq[r:] + seq[:r] for r in range(1, len(seq)))


@lru_cache(maxsize=None)
def connected(n: int) -> tuple[Fds, ...]:
    """Connected FDSs with ``n`` states: a cycle plus anchored trees up to rotation."""
    if n < 1:
        return ()
    pool = [t for m in range(1, n + 1) for t in trees(m)]
    rank = {t.uid: i for i, t in enumerate(pool)}
    out = []

    def seqs(left: int, slots: int) -> Iterator[tuple[Tree, ...]]:
        if slots == 0:
            if left == 0:
                yield ()
            return
        for m in range(1, left - slots + 2):
            for t in trees(m):
                for rest in seqs(left - m, slots - 1):
                    yield (t,) + rest

    for ell in range(1, n + 1):
        for seq in seqs(n, ell):
            if _necklace_min(tuple(rank[t.uid] for t in seq)):
                # seq lists trees in arrow order along the cycle
                out.append(anchor_trees(ell, seq).canonical())
    return tuple(sorted(out, key=canonical_code))


@lru_cache(maxsize=None)
def fds_classes(n: int) -> tuple[Fds, ...]:
    """Every FDS on ``n`` states up to isomorphism (``n = 0`` gives the empty FDS)."""
    if n == 0:
        return (EMPTY,)
    pool = [c for m in range(1, n + 1) for c in connected(m)]
    out = []
    for combo in _multisets(n, pool, len):
        acc = EMPTY
        for c in combo:
            acc = fds_sum(acc, c)
        out.append(acc.canonical())
    return tuple(sorted(out, key=canonical_code))


def dendrons(n: int) -> tuple[Fds, ...]:
    return tuple(anchor_trees(1, [t]).canonical() for t in trees(n))


def permutations(n: int) -> tuple[Fds, ...]:
    return tuple(a for a in fds_classes(n) if a.is_permutation()) if n <= 8 else _perm_partitions(n)


def _perm_partitions(n: int) -> tuple[Fds, ...]:
    def parts(left: int, cap: int) -> Iterator[list[int]]:
        if left == 0:
            yield []
            return
        for i in range(min(left, cap), 0, -1):
            for rest in parts(left - i, i):
                yield [i] + rest

    out = []
    for p in parts(n, n):
        acc = EMPTY
        for i in p:
            acc = fds_sum(acc, cycle(i))
        out.append(acc.canonical())
    return tuple(sorted(out, key=canonical_code))


def enumerate_kind(kind: str, n: int) -> Iterator:
    """Stream the isomorphism classes of ``kind`` with exactly ``n`` states."""
    if n < 0:
        raise ValueError("size must be nonnegative")
    if kind == "fds":
        yield from fds_classes(n)
    elif kind == "tree":
        yield from trees(n)
    elif kind == "dendron":
        yield from dendrons(n)
    elif kind == "permutation":
        yield from (permutations(n) if n else (EMPTY,))
    elif kind == "connected":
        yield from connected(n)
    else:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")


def count(kind: str, n: int) -> int:
    return sum(1 for _ in enumerate_kind(kind, n))


def all_maps_classes(n: int) -> set:
    """Canonical codes of all ``n**n`` self-maps of ``range(n)``."""
    return {canonical_code(Fds(m)) for m in itertools.product(range(n), repeat=n)}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def brute_divisor_pairs(c: Fds) -> set[tuple[Fds, Fds]]:
    """All unordered ``(a, b)`` with ``a * b == c`` and ``|a| <= |b|``.

    Candidates ``a`` range over every class of each admissible size; a
    cancellative ``a`` is divided directly, any other ``a`` is tried
    against every ``b`` of the complementary size.
    """
    from .division import divide_by_cancellative

    n = len(c)
    if n == 0:
        raise ValueError("the empty FDS has infinitely many divisor pairs")
    found: set[tuple[Fds, Fds]] = set()
    depth = c.depth
    lengths = set(c.cycle_lengths)
    need_fix = c.has_fixpoint()
    for m in _divisors(n):
        if m * m > n:
            break
        for a in fds_classes(m):
            if a.depth > depth or not all(any(L % x == 0 for L in lengths) for x in a.cycle_lengths):
                continue
            if need_fix and not a.has_fixpoint():
                continue
            if a.has_fixpoint():
                out = divide_by_cancellative(c, a)
                cands = [out.quotient] if out.ok else []
            else:
                cands = [b for b in fds_classes(n // m) if b.depth <= depth and product_raw(a, b) == c]
            for b in cands:
                if len(a) == len(b) and canonical_code(b) < canonical_code(a):
                    found.add((b, a))
                else:
                    found.add((a, b))
    return found


def brute_tree_quotients(c: Tree, a: Tree, max_nodes: int | None = None) -> list[Tree]:
    """Trees ``b`` of depth at most ``depth(a)`` with ``a * b == c``."""
    bound = c.size if max_nodes is None else max_nodes
    out = []
    for m in range(1, bound + 1):
        for b in trees(m):
            if b.depth <= a.depth and tree_product(a, b) is c:
                out.append(b)
    return out


# -- fixtures ---------------------------------------------------------------


def six_cycle_pair() -> tuple[Fds, Fds]:
    """A 9-state FDS (3-cycle and 2-cycle) and a 7-state FDS on a 6-cycle."""
    a = Fds([1, 2, 0, 0, 0, 2, 7, 6, 7])
    b = Fds([1, 2, 3, 4, 5, 0, 1])
    return a, b


def two_factorisations() -> dict[str, Fds]:
    """The 12-state dendron with two distinct factorisations, and its factors."""
    p1 = Fds([0, 0])
    b6 = Fds([0, 0, 0, 2, 2, 2])
    s3 = Fds([0, 0, 0])
    d4 = Fds([0, 0, 1, 1])
    return {"P1": p1, "B6": b6, "S3": s3, "D4": d4, "product": product(p1, b6)}


@dataclass(frozen=True)
class Fixture:
    """A named identity: ``relation`` is ``equal``, ``distinct`` or ``unroll-equal``."""

    name: str
    lhs: Fds
    rhs: Fds
    relation: str

    def holds(self) -> bool:
        if self.relation == "equal":
            return self.lhs == self.rhs
        if self.relation == "distinct":
            return self.lhs != self.rhs
        if self.relation == "unroll-equal":
            from .unrolling import unroll

            return unroll(self.lhs) == unroll(self.rhs)
        raise ValueError(self.relation)


def fixtures() -> list[Fixture]:
    c1, c2 = ONE, cycle(2)
    t1, t2 = LEAF, path_tree(1)
    # two quotients with the same product by C_2
    q1 = fds_sum(fds_sum(anchor_trees(1, [t1]), anchor_trees(1, [t1])), anchor_trees(2, [t2, t2]))
    q2 = fds_sum(fds_sum(anchor_trees(2, [t1, t1]), anchor_trees(1, [t2])), anchor_trees(1, [t2]))
    # equal unrollings, different FDSs
    t, u = LEAF, path_tree(1)
    x = fds_sum(fds_sum(anchor_trees(1, [t]), anchor_trees(1, [t])), anchor_trees(2, [u, u]))
    y = fds_sum(fds_sum(anchor_trees(1, [u]), anchor_trees(1, [u])), anchor_trees(2, [t, t]))
    fa, fb = six_cycle_pair()
    cx = two_factorisations()
    pair_product = product(fa, fb)
    six = cycle(6)
    five_c6 = EMPTY
    for _ in range(5):
        five_c6 = fds_sum(five_c6, six)
    return [
        Fixture("c2-squared", product(c2, c2), fds_sum(c2, c2), "equal"),
        Fixture("two-quotient-products", product(c2, q1), product(c2, q2), "equal"),
        Fixture("two-quotient-quotients", q1, q2, "distinct"),
        Fixture("two-quotient-periodic-parts", _perm(q1), _perm(q2), "equal"),
        Fixture("unroll-c3-3c1", cycle(3), fds_sum(fds_sum(c1, c1), c1), "unroll-equal"),
        Fixture("unroll-c3-vs-3c1-distinct", cycle(3), fds_sum(fds_sum(c1, c1), c1), "distinct"),
        Fixture("non-injective-unroll", x, y, "unroll-equal"),
        Fixture("non-injective-distinct", x, y, "distinct"),
        Fixture("twelve-state-two-factorisations", product(cx["P1"], cx["B6"]), product(cx["S3"], cx["D4"]), "equal"),
        Fixture("twelve-state-factors-distinct", cx["B6"], cx["D4"], "distinct"),
        Fixture("six-cycle-pair-periodic-part", _perm(pair_product), five_c6, "equal"),
    ]


def _perm(a: Fds) -> Fds:
    return truncate(a, 0)
