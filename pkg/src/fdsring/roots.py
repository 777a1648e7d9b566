"""Polynomials over FDSs, k-th roots and injectivity checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .cycles import NoPermRootError, Permutation, perm_kth_root
from .fds import EMPTY, ONE, Fds, canonical_code, fds_sum, power, product, supp_upto
from .oracle import connected, fds_classes

__all__ = [
    "NatPolynomial",
    "NoRootError",
    "InjectivityReport",
    "poly_eval",
    "kth_root",
    "integer_root",
    "check_poly_injectivity",
]


class NoRootError(ValueError):
    """No FDS has the requested power; ``reason`` says which gate failed."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class NatPolynomial:
    """``sum(coefficients[i] * X**i)`` with FDS coefficients."""

    coefficients: tuple[Fds, ...]

    def __init__(self, coefficients: Iterable[Fds]):
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if len(c)]
        return nz[-1] if nz else -1

    @classmethod
    def monomial(cls, k: int, coeff: Fds = ONE) -> "NatPolynomial":
        return cls([EMPTY] * k + [coeff])

    def __call__(self, a: Fds) -> Fds:
        return poly_eval(self, a)


def poly_eval(p: NatPolynomial, a: Fds) -> Fds:
    out = EMPTY
    pw = ONE
    for i, c in enumerate(p.coefficients):
        if i:
            pw = product(pw, a)
        if len(c):
            out = fds_sum(out, product(c, pw))
    return out.canonical()


def integer_root(n: int, k: int) -> int | None:
    """Exact integer ``k``-th root of ``n`` or ``None``."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k)))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r if r ** k == n else None


def _component_multisets(ell: int, count: int, size: int, max_depth: int) -> Iterator[tuple[Fds, ...]]:
    """Multisets of ``count`` connected FDSs on ``ell``-cycles with total ``size`` states."""
    pool = [c for m in range(ell, size + 1) for c in connected(m)
            if c.cycle_lengths == (ell,) and c.depth <= max_depth]

    def rec(left: int, slots: int, hi: int) -> Iterator[tuple[Fds, ...]]:
        if slots == 0:
            if left == 0:
                yield ()
            return
        for idx in range(hi, -1, -1):
            c = pool[idx]
            if len(c) + ell * (slots - 1) > left:
                continue
            for rest in rec(left - len(c), slots - 1, idx):
                yield (c,) + rest

    yield from rec(size, count, len(pool) - 1)


def _states_by_length(a: Fds) -> dict[int, int]:
    out: dict[int, int] = {}
    st = a.structure
    for s, c in enumerate(st.comp):
        ln = len(st.cycles[c])
        out[ln] = out.get(ln, 0) + 1
    return out


def _power_states(parts: dict[int, int], k: int) -> dict[int, int]:
    """States per cycle length of ``X**k`` from the states per cycle length of ``X``."""
    out = {1: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for l1, n1 in out.items():
            for l2, n2 in parts.items():
                key = math.lcm(l1, l2)
                nxt[key] = nxt.get(key, 0) + n1 * n2
        out = nxt
    return out


def kth_root(a: Fds, k: int, budget: int = 200_000) -> Fds:
    """The unique ``b`` with ``b**k == a``.

    Cycle lengths of ``b`` are processed in increasing order.  For each
    length the state count of the new components is pinned down by the
    state count of ``a`` on that length, then the components themselves are
    found by a bounded search checked against ``a`` on cycle lengths up to
    the current one.  Raises :class:`NoRootError`.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return a.canonical()
    n = integer_root(len(a), k)
    if n is None:
        raise NoRootError(f"size {len(a)} is not a perfect {k}-th power")
    try:
        base = perm_kth_root(Permutation.from_fds(a), k)
    except NoPermRootError as exc:
        raise NoRootError(f"periodic part has no root: {exc}") from exc
    have = _states_by_length(a)
    known = EMPTY
    sizes: dict[int, int] = {}
    tried = 0
    for ell, lam in base.counts.items():
        want = have.get(ell, 0)
        extra = None
        for s in range(lam * ell, n - len(known) + 1):
            got = _power_states({**sizes, ell: s}, k).get(ell, 0)
            if got >= want:
                extra = s if got == want else None
                break
        if extra is None:
            raise NoRootError(f"no state count fits cycle length {ell}")
        target = supp_upto(a, ell)
        hit = None
        for cand in _component_multisets(ell, lam, extra, a.depth):
            tried += 1
            if tried > budget:
                raise NoRootError("search budget exhausted")
            trial = known
            for c in cand:
                trial = fds_sum(trial, c)
            if supp_upto(power(trial, k), ell) == target:
                hit = trial
                break
        if hit is None:
            raise NoRootError(f"no components of cycle length {ell} fit")
        known = hit
        sizes[ell] = extra
    if power(known, k) != a:
        raise NoRootError("post-check failed")
    return known.canonical()


@dataclass
class InjectivityReport:
    bound: int
    checked: int = 0
    violations: list[tuple[Fds, Fds]] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return not self.violations


def check_poly_injectivity(p: NatPolynomial, size_bound: int, sizes: Sequence[int] | None = None) -> InjectivityReport:
    """Look for ``A != B`` with ``P(A) == P(B)`` among classes up to ``size_bound`` states."""
    report = InjectivityReport(size_bound)
    seen: dict = {}
    rng = range(size_bound + 1) if sizes is None else sizes
    for a in itertools.chain.from_iterable(fds_classes(n) for n in rng):
        report.checked += 1
        key = canonical_code(poly_eval(p, a))
        prev = seen.get(key)
        if prev is None:
            seen[key] = a
        else:
            report.violations.append((prev, a))
    return report
