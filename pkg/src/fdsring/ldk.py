"""Linear dendrons and unique factorisation in the monoids LD_K.

A linear dendron branches only at its fixpoint; LD_K is generated by the
linear dendrons with exactly ``K`` rhizomes (leaf-to-fixpoint paths).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .division import divide_dendrons
from .fds import ONE, Fds, anchor_trees, dendron_tree, product, product_raw
from .forest import LEAF, Tree, path_tree

__all__ = [
    "LinearDendron",
    "FixedStateIndex",
    "LdkError",
    "make_star",
    "make_path",
    "make_linear",
    "recognize_linear",
    "is_irreducible_linear",
    "fixed_index",
    "extract",
    "factor_ldk",
    "discover_k",
    "multiply_linear",
]


class LdkError(ValueError):
    """Input is not in LD_K (or K is wrong); ``reason`` explains where it broke."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True, order=True)
class LinearDendron:
    rhizome_lengths: tuple[int, ...]

    def __init__(self, lengths: Iterable[int]):
        ls = tuple(sorted(int(x) for x in lengths))
        if any(x < 1 for x in ls):
            raise ValueError("rhizome lengths must be positive")
        object.__setattr__(self, "rhizome_lengths", ls)

    @property
    def K(self) -> int:
        return len(self.rhizome_lengths)

    @property
    def size(self) -> int:
        return 1 + sum(self.rhizome_lengths)

    @property
    def depth(self) -> int:
        return max(self.rhizome_lengths, default=0)

    def is_star(self) -> bool:
        return all(x == 1 for x in self.rhizome_lengths) and self.K > 0

    def is_path(self) -> bool:
        return self.K == 1

    def to_fds(self) -> Fds:
        return make_linear(self.rhizome_lengths)

    def tree(self) -> Tree:
        return Tree.of(path_tree(x - 1) for x in self.rhizome_lengths)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.rhizome_lengths) or "(trivial)"


def make_linear(lengths: Iterable[int]) -> Fds:
    ld = LinearDendron(lengths)
    return anchor_trees(1, [ld.tree()]).canonical()


def make_star(n: int) -> Fds:
    """Star with ``n`` states (``n - 1`` leaves on the fixpoint)."""
    if n < 1:
        raise ValueError("a star has at least one state")
    return make_linear([1] * (n - 1))


def make_path(n: int) -> Fds:
    """Single rhizome of length ``n`` (``n + 1`` states)."""
    if n < 1:
        raise ValueError("path length must be positive")
    return make_linear([n])


def recognize_linear(a: Fds) -> LinearDendron:
    """Rhizome lengths of a linear dendron; :class:`LdkError` otherwise."""
    if not a.is_dendron():
        raise LdkError("not a dendron")
    t = dendron_tree(a)
    lengths = []
    for c in t.children:
        n = 1
        while c.children:
            if len(c.children) > 1:
                raise LdkError("a non-fixpoint state has several predecessors")
            (c,) = c.children
            n += 1
        lengths.append(n)
    return LinearDendron(lengths)


def is_irreducible_linear(a: LinearDendron) -> bool:
    """False exactly for stars with a composite number of states."""
    if not a.is_star():
        return True
    n = a.size
    return not (n > 3 and any(n % p == 0 for p in range(2, math.isqrt(n) + 1)))


def multiply_linear(factors: Sequence[LinearDendron]) -> Fds:
    out = ONE
    for f in factors:
        out = product(out, f.to_fds())
    return out


# -- i-fixed states ---------------------------------------------------------


def _log(n: int, base: int) -> int | None:
    """``i`` with ``base**i == n``, else ``None``."""
    if n < 1:
        return None
    i = 0
    while n % base == 0 and n > 1:
        n //= base
        i += 1
    return i if n == 1 else None


@dataclass(frozen=True)
class FixedStateIndex:
    """Per-state fixedness (``None`` for leaves), depth and codepth."""

    K: int
    fixedness: tuple[int | None, ...]
    depth: tuple[int, ...]
    codepth: tuple[int, ...]

    def is_leaf(self, s: int) -> bool:
        return self.fixedness[s] is None

    def states(self, i: int, depth: int = 1, codepth: int | None = None) -> list[int]:
        """States that are ``i``-fixed at the given depth (and codepth)."""
        return [
            s for s, f in enumerate(self.fixedness)
            if f == i and self.depth[s] == depth and (codepth is None or self.codepth[s] == codepth)
        ]


def _pred_counts(p: Fds) -> list[int]:
    cnt = [0] * len(p)
    for t in p.succ:
        cnt[t] += 1
    return cnt


def fixed_index(p: Fds, K: int) -> FixedStateIndex:
    """Fixedness from predecessor counts ``(K + 1)**i`` (the fixpoint counts itself)."""
    if K < 1:
        raise ValueError("K must be positive")
    st = p.structure
    fx: list[int | None] = []
    for s, c in enumerate(_pred_counts(p)):
        if c == 0:
            fx.append(None)
            continue
        i = _log(c, K + 1)
        if i is None:
            raise LdkError(f"state {s} has {c} predecessors, not a power of {K + 1}")
        fx.append(i)
    return FixedStateIndex(K, tuple(fx), tuple(st.depth), tuple(st.height))


def _extract_tree(p: Fds, s: int) -> Tree:
    """Tree on ``s`` minus its most-fixed predecessor branch."""
    st = p.structure
    preds = st.tpreds[s]
    if not preds:
        return LEAF
    cnt = _pred_counts(p)
    drop = max(preds, key=lambda u: cnt[u])
    kids = list(st.trees[s].children)
    kids.remove(st.trees[drop])
    return Tree.of(kids)


def extract(p: Fds, s: int, K: int) -> Tree:
    """Extraction at a depth-1 non-leaf state: the anchored tree of a product of factors."""
    idx = fixed_index(p, K)
    if idx.depth[s] != 1 or idx.is_leaf(s):
        raise ValueError("extraction needs a depth-1 state with predecessors")
    return _extract_tree(p, s)


def discover_k(p: Fds) -> list[int]:
    """Every ``K`` for which all predecessor counts are powers of ``K + 1``."""
    if not p.is_dendron():
        return []
    cnt = [c for c in _pred_counts(p) if c]
    top = max(cnt)
    return [K for K in range(1, top) if all(_log(c, K + 1) is not None for c in cnt)]


# -- factorisation ----------------------------------------------------------


def _dendron(t: Tree) -> Fds:
    return anchor_trees(1, [t])


class _Products:
    """Cached anchored trees of dendron products."""

    def __init__(self):
        self._cache: dict[tuple[int, ...], Tree] = {}

    def tree(self, factors: Sequence[Tree]) -> Tree:
        key = tuple(sorted(t.uid for t in factors))
        hit = self._cache.get(key)
        if hit is None:
            acc = ONE
            for t in factors:
                acc = product_raw(acc, _dendron(t))
            hit = dendron_tree(acc)
            self._cache[key] = hit
        return hit


def _integer_roots(coeffs: list[int], n: int) -> list[int] | None:
    """Positive integer roots (with multiplicity) of a monic integer polynomial.

    ``coeffs`` lists coefficients from degree ``n`` down to 0.
    """
    poly = list(coeffs)
    roots: list[int] = []
    while len(poly) > 1:
        const = poly[-1]
        if const == 0:
            return None
        found = None
        for d in range(1, abs(const) + 1):
            if const % d:
                continue
            # Horner evaluation at d
            v = 0
            for c in poly:
                v = v * d + c
            if v == 0:
                found = d
                break
        if found is None:
            return None
        roots.append(found)
        quo = [poly[0]]
        for c in poly[1:-1]:
            quo.append(c + quo[-1] * found)
        poly = quo
    return sorted(roots) if len(roots) == n else None


def _equal_depth(r: Fds, K: int, prods: _Products) -> list[LinearDendron]:
    """Factors of a product whose factors all share the depth of ``r``."""
    if r == ONE:
        return []
    idx = fixed_index(r, K)
    st = r.structure
    fix = st.cycles[0][0]
    n_f = idx.fixedness[fix]
    depth = r.depth
    if n_f == 1:
        ld = recognize_linear(r)
        if ld.K != K:
            raise LdkError(f"factor has {ld.K} rhizomes, expected {K}")
        return [ld]
    if depth == 1:
        if len(r) != (K + 1) ** n_f:
            raise LdkError("depth-1 product is not a star of the right size")
        return [LinearDendron([1] * K) for _ in range(n_f)]
    k = depth - 1
    by_level: list[Counter] = [Counter() for _ in range(n_f + 1)]
    for s in range(len(r)):
        f = idx.fixedness[s]
        if f is not None and idx.depth[s] == 1 and idx.codepth[s] == k:
            by_level[f][_extract_tree(r, s)] += 1
    truncs = sorted(by_level[1], key=lambda t: t.levels)
    if not truncs:
        raise LdkError("no 1-fixed extraction points")
    mult: dict[Tree, int] = {}
    if len(truncs) == 1:
        # all factors share one truncation; the top level has no depth-1 witness
        mult[truncs[0]] = n_f
    else:
        for b in truncs:
            best = 0
            for i in range(1, n_f):
                if prods.tree([b] * i) in by_level[i]:
                    best = i
            mult[b] = best
    if sum(mult.values()) != n_f:
        raise LdkError("multiplicities of truncated factors do not add up")
    out: list[LinearDendron] = []
    for b in truncs:
        nb = mult[b]
        others = [t for t in truncs if t is not b for _ in range(mult[t])]
        p_counts = [1]
        for n in range(1, nb + 1):
            target = prods.tree(others + [b] * (nb - n))
            p_counts.append(by_level[n_f - n][target])
        coeffs = [(-1) ** m * p_counts[m] for m in range(nb + 1)]
        fs = _integer_roots(coeffs, nb)
        if fs is None:
            raise LdkError("path-count polynomial lacks a full set of positive integer roots")
        base = recognize_linear(_dendron(b))
        if base.K != K:
            raise LdkError(f"truncated factor has {base.K} rhizomes, expected {K}")
        full = sum(1 for x in base.rhizome_lengths if x == k)
        for f in fs:
            if f > full:
                raise LdkError("more extended rhizomes than available")
            ls = list(base.rhizome_lengths)
            for j in range(len(ls)):
                if f and ls[j] == k:
                    ls[j] = k + 1
                    f -= 1
            out.append(LinearDendron(ls))
    return out


def _factor(p: Fds, K: int, prods: _Products) -> list[LinearDendron]:
    if p == ONE:
        return []
    if not p.is_dendron():
        raise LdkError("not a dendron")
    idx = fixed_index(p, K)
    depth = p.depth
    if depth == 1:
        return _equal_depth(p, K, prods)
    k = depth - 1
    cands = [s for s in range(len(p)) if idx.depth[s] == 1 and idx.codepth[s] == k]
    if not cands:
        raise LdkError("no depth-1 state on a longest rhizome")
    s = min(cands, key=lambda x: idx.fixedness[x])
    q_tree = _extract_tree(p, s)
    q = _dendron(q_tree)
    if q == ONE:
        return _equal_depth(p, K, prods)
    out = divide_dendrons(p, q)
    if not out.ok:
        raise LdkError(f"splitting off shallower factors failed: {out.reason}")
    return _equal_depth(out.quotient, K, prods) + _factor(q.canonical(), K, prods)


def factor_ldk(p: Fds, K: int) -> list[LinearDendron]:
    """Unique factorisation of ``p`` into linear dendrons with ``K`` rhizomes each."""
    if K < 1:
        raise ValueError("K must be positive")
    factors = sorted(_factor(p, K, _Products()))
    if multiply_linear(factors) != p:
        raise LdkError("post-check failed: factors do not multiply back")
    return factors
