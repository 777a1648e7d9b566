"""Division of trees, dendrons and FDSs by cancellative divisors.

Every entry point multiplies its quotient back before reporting success;
failures carry one of the reason tags in :data:`REASONS`.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Union

from .fds import EMPTY, Fds, anchor_trees, components, fds_sum, product, product_raw, supp
from .forest import LEAF, Tree, tree_product, truncate_tree
from .unrolling import PeriodicTree, reroll, unroll, unroll_truncated

__all__ = [
    "DivisionOutcome",
    "REASONS",
    "divide_trees",
    "divide_dendrons",
    "divide_by_cancellative",
]

REASONS = ("no-candidate", "multiset-mismatch", "post-check-failed")


@dataclass(frozen=True)
class DivisionOutcome:
    """Quotient on success, otherwise ``quotient is None`` and a reason tag."""

    quotient: Union[Tree, Fds, None] = None
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.reason is None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def fail(cls, reason: str) -> "DivisionOutcome":
        if reason not in REASONS:
            raise ValueError(f"unknown failure reason {reason!r}")
        return cls(None, reason)


class _Fail(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def _divide(c: Tree, a: Tree, memo: dict) -> Tree:
    """Core loop: peel the deepest-then-smallest tree off the working multiset."""
    if not c.children:
        return LEAF
    key = (c.uid, a.uid)
    hit = memo.get(key)
    if hit is not None:
        return hit
    da = a.children  # sorted by code
    if not da:
        raise _Fail("no-candidate")
    work = Counter(c.children)
    heap = [(-t.depth, t.levels, t.uid, t) for t in work]
    heapq.heapify(heap)
    found: list[Tree] = []
    while True:
        while heap and work[heap[0][3]] == 0:
            heapq.heappop(heap)
        if not heap:
            break
        t_c = heap[0][3]
        d = t_c.depth
        t_a = next((y for y in da if y.depth >= d), None)
        if t_a is None:
            raise _Fail("no-candidate")
        t_b = _divide(t_c, t_a, memo)
        for y in da:
            p = tree_product(t_b, y)
            if work[p] == 0:
                raise _Fail("multiset-mismatch")
            work[p] -= 1
        found.append(t_b)
    out = Tree.of(found)
    memo[key] = out
    return out


def divide_trees(c: Tree, a: Tree) -> DivisionOutcome:
    """Tree ``b`` with ``a * b == c``, truncated at ``depth(a)``."""
    try:
        q = _divide(c, a, {})
    except _Fail as exc:
        return DivisionOutcome.fail(exc.reason)
    if tree_product(a, q) is not c:
        return DivisionOutcome.fail("post-check-failed")
    return DivisionOutcome(q)


def divide_dendrons(c: Fds, a: Fds) -> DivisionOutcome:
    """Dendron ``b`` with ``a * b == c`` via truncated unrollings."""
    if not (c.is_dendron() and a.is_dendron()):
        raise ValueError("divide_dendrons needs two dendrons")
    k = c.depth
    (tc,) = unroll_truncated(c, k).trees
    (ta,) = unroll_truncated(a, k).trees
    try:
        x = _divide(tc, ta, {})
    except _Fail as exc:
        return DivisionOutcome.fail(exc.reason)
    if k == 0:
        b = anchor_trees(1, [LEAF])
    else:
        # one child of x is the spine itself; the rest hang off the fixpoint
        spine_part = truncate_tree(x, k - 1)
        kids = list(x.children)
        try:
            kids.remove(spine_part)
        except ValueError:
            return DivisionOutcome.fail("post-check-failed")
        b = anchor_trees(1, [Tree.of(kids)])
    if product_raw(a, b) != c:
        return DivisionOutcome.fail("post-check-failed")
    return DivisionOutcome(b.canonical())


def _read_tseq(x: Tree, ell: int) -> list[Tree] | None:
    """Anchored trees on the first ``ell`` spine vertices of a truncation.

    The spine child is the deepest child; a tie between distinct trees
    means the truncation was too shallow to tell, reported as ``None``.
    """
    out = []
    node = x
    for _ in range(ell):
        if not node.children:
            return None
        kids = node.children
        deepest = max(t.depth for t in kids)
        tops = {t for t in kids if t.depth == deepest}
        if len(tops) != 1:
            return None
        (sp,) = tops
        rest = list(kids)
        rest.remove(sp)
        out.append(Tree.of(rest))
        node = sp
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def divide_by_cancellative(d: Fds, a: Fds) -> DivisionOutcome:
    """The unique ``b`` with ``a * b == d`` for a divisor with a fixpoint.

    Components of ``b`` are recovered smallest cycle length first: the
    least periodic tree of the unrolled support of ``d`` divided by that of
    ``a`` is one unrolled part of a component ``e`` of ``b``; then ``a * e``
    is removed from ``d``.
    """
    if not a.has_fixpoint():
        raise ValueError("divisor has no fixpoint")
    if len(d) % len(a):
        return DivisionOutcome.fail("multiset-mismatch")
    left: Counter = Counter(components(d))
    found: list[Fds] = []
    while +left:
        comps = list(left.elements())
        ell = min(x.cycle_lengths[0] for x in comps)
        lengths = _divisors(ell)
        d_part = EMPTY
        for x in comps:
            if x.cycle_lengths[0] == ell:
                d_part = fds_sum(d_part, x)
        a_part = supp(a, lengths)
        t_a = unroll(a_part).minimum()
        t_d = unroll(d_part).minimum()
        depth = max(x.depth for x in comps)
        k = depth + 2 * ell + 1
        try:
            x = _divide(t_d.truncate(k), t_a.truncate(k), {})
        except _Fail as exc:
            return DivisionOutcome.fail(exc.reason)
        tseq = _read_tseq(x, ell)
        if tseq is None:
            return DivisionOutcome.fail("post-check-failed")
        e = reroll(PeriodicTree(tseq), ell)
        for comp in components(product(a, e)):
            if left[comp] == 0:
                return DivisionOutcome.fail("multiset-mismatch")
            left[comp] -= 1
        found.append(e)
    b = EMPTY
    for e in found:
        b = fds_sum(b, e)
    if product_raw(a, b) != d:
        return DivisionOutcome.fail("post-check-failed")
    return DivisionOutcome(b.canonical())
