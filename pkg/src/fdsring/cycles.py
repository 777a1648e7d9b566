"""Permutations (cycle-only FDSs) as cycle-length multisets.

The product here is the direct product of cycle digraphs, so
``C_a * C_b = gcd(a, b) C_lcm(a, b)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping

from .fds import Fds, cycle, fds_sum, EMPTY, product_raw

__all__ = [
    "Permutation",
    "WitnessPair",
    "NoPermRootError",
    "cycle_product",
    "delta",
    "perm_product",
    "perm_power",
    "perm_kth_root",
    "is_cancellative",
    "chinese_witness",
    "noncancellative_witness",
    "format_permutation",
    "parse_permutation",
]


class NoPermRootError(ValueError):
    """No permutation has the requested power."""


class Permutation:
    """Multiset of cycle lengths: ``counts[i]`` copies of ``C_i``."""

    __slots__ = ("counts",)

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        c: dict[int, int] = {}
        for length, mult in items:
            if length < 1 or mult < 0:
                raise ValueError(f"bad cycle entry ({length}, {mult})")
            if mult:
                c[length] = c.get(length, 0) + mult
        self.counts = dict(sorted(c.items()))

    @classmethod
    def of_lengths(cls, lengths: Iterable[int]) -> "Permutation":
        return cls(Counter(lengths))

    @classmethod
    def from_fds(cls, a: Fds) -> "Permutation":
        """Cycle structure ``[a]_0`` of any FDS."""
        return cls.of_lengths(a.cycle_lengths)

    def to_fds(self) -> Fds:
        out = EMPTY
        for length, mult in self.counts.items():
            c = cycle(length)
            for _ in range(mult):
                out = fds_sum(out, c)
        return out.canonical()

    @property
    def size(self) -> int:
        return sum(i * m for i, m in self.counts.items())

    def __getitem__(self, length: int) -> int:
        return self.counts.get(length, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.counts == other.counts

    def __hash__(self) -> int:
        return hash(tuple(self.counts.items()))

    def __add__(self, other: "Permutation") -> "Permutation":
        return Permutation(list(self.counts.items()) + list(other.counts.items()))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return perm_product(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return perm_power(self, k)

    def __repr__(self) -> str:
        if not self.counts:
            return "0"
        return " + ".join(f"{m}C_{i}" if m > 1 else f"C_{i}" for i, m in self.counts.items())


def cycle_product(a: int, b: int) -> Permutation:
    return Permutation({math.lcm(a, b): math.gcd(a, b)})


def delta(j: Iterable[int]) -> int:
    """Scalar with ``prod C_j = delta(J) C_lcm(J)``."""
    d, l = 1, 1
    for a in j:
        d *= math.gcd(a, l)
        l = math.lcm(a, l)
    return d


def perm_product(p: Permutation, q: Permutation) -> Permutation:
    out: Counter = Counter()
    for i, m in p.counts.items():
        for j, n in q.counts.items():
            out[math.lcm(i, j)] += math.gcd(i, j) * m * n
    return Permutation(out)


def perm_power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        raise ValueError("negative power")
    out = Permutation({1: 1})
    for _ in range(k):
        out = perm_product(out, p)
    return out


def _multinomial(counts: Iterable[int]) -> int:
    total, out = 0, 1
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


def _level_count(i: int, k: int, known: Mapping[int, int], x: int) -> int:
    """Copies of ``C_i`` in ``B^k`` when ``B`` has ``known`` below ``i`` and ``x`` copies of ``C_i``."""
    support = [j for j in sorted(known) if i % j == 0 and known[j]] + [i]
    lam = dict(known)
    lam[i] = x
    total = 0
    for combo in itertools.combinations_with_replacement(support, k):
        if reduce(math.lcm, combo, 1) != i:
            continue
        mult = Counter(combo)
        weight = _multinomial(mult.values()) * delta(combo)
        for j, c in mult.items():
            weight *= lam[j] ** c
        total += weight
    return total


def perm_kth_root(p: Permutation, k: int) -> Permutation:
    """The unique permutation ``b`` with ``b**k == p``.

    Solves one monotone equation per cycle length, smallest first.
    Raises :class:`NoPermRootError` when some equation has no solution.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return p
    n = p.size
    r = round(n ** (1.0 / k)) if n else 0
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    if r ** k != n:
        raise NoPermRootError(f"size {n} is not a {k}-th power")
    known: dict[int, int] = {}
    for i in sorted(p.counts):
        target = p.counts[i]
        lo, hi = 0, target
        while lo < hi:
            mid = (lo + hi) // 2
            if _level_count(i, k, known, mid) < target:
                lo = mid + 1
            else:
                hi = mid
        if _level_count(i, k, known, lo) != target:
            raise NoPermRootError(f"no solution for cycle length {i}")
        if lo:
            known[i] = lo
    root = Permutation(known)
    if perm_power(root, k) != p:
        raise NoPermRootError("post-check failed")
    return root


def is_cancellative(a: Fds) -> bool:
    return a.has_fixpoint()


@dataclass(frozen=True)
class WitnessPair:
    """Two distinct permutations equalised by every ``C_a``, ``a`` in ``lengths``."""

    lengths: tuple[int, ...]
    x: Permutation
    x_prime: Permutation
    alpha: dict = field(compare=False)
    alpha_prime: dict = field(compare=False)


def chinese_witness(lengths: Iterable[int]) -> WitnessPair:
    gens = tuple(sorted(set(lengths)))
    if not gens or min(gens) < 2:
        raise ValueError("need a nonempty set of lengths, each at least 2")
    base = delta(gens) * math.prod(gens)
    alpha: dict[frozenset, int] = {}
    alpha_p: dict[frozenset, int] = {}
    x: Counter = Counter()
    xp: Counter = Counter()
    for r in range(len(gens) + 1):
        for sub in itertools.combinations(gens, r):
            key = frozenset(sub)
            rest = math.prod(a for a in gens if a not in key)
            alpha[key] = base
            alpha_p[key] = base + (-1) ** r * delta(sub) * rest
            top = reduce(math.lcm, sub, 1)
            x[top] += alpha[key]
            xp[top] += alpha_p[key]
    pair = WitnessPair(gens, Permutation(x), Permutation(xp), alpha, alpha_p)
    if pair.x == pair.x_prime:
        raise AssertionError("witness pair collapsed")
    for a in gens:
        c = Permutation({a: 1})
        if c * pair.x != c * pair.x_prime:
            raise AssertionError(f"witness fails for C_{a}")
    return pair


def noncancellative_witness(a: Fds) -> tuple[Fds, Fds]:
    """Distinct ``x``, ``x'`` with ``a * x == a * x'`` for ``a`` without fixpoint."""
    if a.has_fixpoint():
        raise ValueError("an FDS with a fixpoint is cancellative")
    if len(a) == 0:
        # every pair works for the zero FDS
        return EMPTY, cycle(1)
    pair = chinese_witness(a.cycle_lengths)
    x, xp = pair.x.to_fds(), pair.x_prime.to_fds()
    if product_raw(a, x) != product_raw(a, xp):
        raise AssertionError("witness pair does not lift")
    return x, xp


def format_permutation(p: Permutation) -> str:
    return "".join(f"{i} {m}\n" for i, m in p.counts.items())


def parse_permutation(text: str) -> Permutation:
    items = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        i, m = ln.split()
        items.append((int(i), int(m)))
    return Permutation(items)
