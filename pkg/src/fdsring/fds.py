"""Finite dynamical systems and their semiring operations.

An :class:`Fds` is a successor table on ``range(n)``.  Equality, hashing and
every comparison go through the canonical structure (cycle length plus the
minimal rotation of the anchored trees of each component), never through a
graph-isomorphism search.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .forest import Tree, decode_cf, format_code, parse_code

__all__ = [
    "Fds",
    "FdsCode",
    "StateClassification",
    "EMPTY",
    "ONE",
    "cycle",
    "classify",
    "fds_sum",
    "product",
    "power",
    "product_raw",
    "truncate",
    "supp",
    "supp_upto",
    "canonical_code",
    "from_code",
    "components",
    "anchor_trees",
    "dendron_from_tree",
    "dendron_tree",
    "format_fds",
    "parse_fds",
    "read_fds",
    "write_fds",
    "to_dot",
    "format_fds_code",
    "parse_fds_code",
    "FdsFormatError",
]

# (cycle length, anchored tree codes in minimal rotation) per component
FdsCode = tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]


class FdsFormatError(ValueError):
    pass


@dataclass(frozen=True)
class StateClassification:
    depth: tuple[int, ...]
    on_cycle: tuple[bool, ...]
    cycle_lengths: tuple[int, ...]


def least_rotation(seq: Sequence) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(seq)
    if n <= 1:
        return 0
    s = list(seq) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


class _Structure:
    """Lazily computed shape of an FDS (depths, cycles, anchored trees)."""

    __slots__ = ("depth", "comp", "cycles", "trees", "tpreds", "height", "comps")

    def __init__(self, succ: Sequence[int]):
        depth, comp, cycles = kernels.classify(succ)
        height, tpreds = kernels.height_and_preds(succ, depth)
        n = len(succ)
        order = sorted(range(n), key=depth.__getitem__, reverse=True)
        kids: list[list[Tree]] = [[] for _ in range(n)]
        trees: list[Tree] = [None] * n  # type: ignore[list-item]
        for s in order:
            t = Tree.of(kids[s])
            trees[s] = t
            if depth[s] > 0:
                kids[succ[s]].append(t)
        self.depth = depth
        self.comp = comp
        self.cycles = cycles
        self.trees = trees
        self.tpreds = tpreds
        self.height = height
        # per component: (cycle length, rotation start, uid sequence)
        comps = []
        for cyc in cycles:
            uids = [trees[c].uid for c in cyc]
            r = least_rotation(uids)
            comps.append((len(cyc), r, tuple(uids[r:] + uids[:r])))
        self.comps = comps


class Fds:
    """A finite dynamical system given by its successor table."""

    __slots__ = ("succ", "_s", "_key")

    def __init__(self, succ: Iterable[int] = ()):
        succ = tuple(int(x) for x in succ)
        n = len(succ)
        for x in succ:
            if not 0 <= x < n:
                raise ValueError(f"successor {x} outside [0, {n})")
        self.succ = succ
        self._s: _Structure | None = None
        self._key = None

    @classmethod
    def _trusted(cls, succ: Sequence[int]) -> "Fds":
        obj = cls.__new__(cls)
        obj.succ = tuple(succ)
        obj._s = None
        obj._key = None
        return obj

    @property
    def structure(self) -> _Structure:
        if self._s is None:
            self._s = _Structure(self.succ)
        return self._s

    def key(self):
        """Process-local canonical key: equal iff isomorphic."""
        if self._key is None:
            self._key = tuple(sorted((ln, seq) for ln, _, seq in self.structure.comps))
        return self._key

    def __len__(self) -> int:
        return len(self.succ)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fds):
            return NotImplemented
        return len(self.succ) == len(other.succ) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other: "Fds") -> "Fds":
        return fds_sum(self, other)

    def __mul__(self, other: "Fds") -> "Fds":
        return product(self, other)

    def __pow__(self, k: int) -> "Fds":
        return power(self, k)

    def __repr__(self) -> str:
        if len(self.succ) <= 12:
            return f"Fds({list(self.succ)})"
        return f"Fds(<{len(self.succ)} states, cycles {self.cycle_lengths}>)"

    # -- derived data -------------------------------------------------------

    @property
    def depth(self) -> int:
        """Largest state depth; -1 for the empty FDS."""
        return max(self.structure.depth, default=-1)

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.structure.cycles))

    def has_fixpoint(self) -> bool:
        return any(self.succ[s] == s for s in range(len(self.succ)))

    def is_connected(self) -> bool:
        return len(self.structure.cycles) == 1

    def is_dendron(self) -> bool:
        return self.is_connected() and len(self.structure.cycles[0]) == 1

    def is_permutation(self) -> bool:
        return all(d == 0 for d in self.structure.depth)

    def predecessors(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in self.succ]
        for s, t in enumerate(self.succ):
            preds[t].append(s)
        return preds

    def canonical(self) -> "Fds":
        return self.canonical_with_map()[0]

    def canonical_with_map(self) -> tuple["Fds", list[int]]:
        """Canonically relabelled copy and the map old state -> new state."""
        st = self.structure
        ranked = _rank_components(st)
        n = len(self.succ)
        new_succ = [0] * n
        where = [0] * n
        nxt = 0
        for ci, r in ranked:
            cyc = st.cycles[ci]
            ln = len(cyc)
            rot = cyc[r:] + cyc[:r]
            base = nxt
            for i, c in enumerate(rot):
                where[c] = base + i
                new_succ[base + i] = base + (i + 1) % ln
            nxt += ln
            for c in rot:
                queue = [c]
                qi = 0
                while qi < len(queue):
                    v = queue[qi]
                    qi += 1
                    kids = sorted(st.tpreds[v], key=lambda u: st.trees[u].levels)
                    for u in kids:
                        where[u] = nxt
                        new_succ[nxt] = where[v]
                        nxt += 1
                        queue.append(u)
        out = Fds._trusted(new_succ)
        out._key = self._key
        return out, where


def _rank_components(st: _Structure) -> list[tuple[int, int]]:
    """Components in canonical order as (cycle index, rotation start).

    Rotations and ordering use the code order of trees, so the result is the
    same in every process.
    """
    distinct = {}
    for cyc in st.cycles:
        for c in cyc:
            t = st.trees[c]
            distinct[t.uid] = t
    order = sorted(distinct.values(), key=lambda t: t.levels)
    rank = {t.uid: i for i, t in enumerate(order)}
    items = []
    for ci, cyc in enumerate(st.cycles):
        seq = [rank[st.trees[c].uid] for c in cyc]
        r = least_rotation(seq)
        items.append(((len(cyc), tuple(seq[r:] + seq[:r])), ci, r))
    items.sort(key=lambda it: it[0])
    return [(ci, r) for _, ci, r in items]


EMPTY = Fds._trusted(())
ONE = Fds._trusted((0,))


def cycle(k: int) -> Fds:
    if k < 1:
        raise ValueError("cycle length must be positive")
    return Fds._trusted([(i + 1) % k for i in range(k)])


def classify(a: Fds) -> StateClassification:
    st = a.structure
    return StateClassification(
        depth=tuple(st.depth),
        on_cycle=tuple(d == 0 for d in st.depth),
        cycle_lengths=a.cycle_lengths,
    )


def fds_sum(a: Fds, b: Fds) -> Fds:
    m = len(a.succ)
    return Fds._trusted(a.succ + tuple(x + m for x in b.succ))


def product(a: Fds, b: Fds, with_labels: bool = False):
    """Direct product, canonically relabelled.

    With ``with_labels`` also return the product isomorphism as a list
    mapping each output state to its ``(state of a, state of b)`` pair.
    """
    raw = Fds._trusted(kernels.product_succ(a.succ, b.succ))
    out, where = raw.canonical_with_map()
    if not with_labels:
        return out
    m = len(b.succ)
    labels: list[tuple[int, int]] = [(0, 0)] * len(where)
    for old, new in enumerate(where):
        labels[new] = divmod(old, m)
    return out, labels


def product_raw(a: Fds, b: Fds) -> Fds:
    """Product without canonical relabelling; cheaper when only compared."""
    return Fds._trusted(kernels.product_succ(a.succ, b.succ))


def power(a: Fds, k: int) -> Fds:
    """``a`` to the ``k``-th power by repeated squaring (``a**0`` is ``C_1``)."""
    if k < 0:
        raise ValueError("negative power")
    result = ONE
    base = a
    while k:
        if k & 1:
            result = product(result, base)
        k >>= 1
        if k:
            base = product(base, base)
    return result


def _restrict(a: Fds, keep: Sequence[bool]) -> Fds:
    index = [-1] * len(a.succ)
    nxt = 0
    for s, flag in enumerate(keep):
        if flag:
            index[s] = nxt
            nxt += 1
    return Fds._trusted([index[a.succ[s]] for s, flag in enumerate(keep) if flag])


def truncate(a: Fds, k: int) -> Fds:
    """Sub-FDS of the states of depth at most ``k``."""
    if k < 0:
        raise ValueError("truncation depth must be nonnegative")
    return _restrict(a, [d <= k for d in a.structure.depth])


def supp(a: Fds, lengths: Iterable[int]) -> Fds:
    """Sum of the components whose cycle length lies in ``lengths``."""
    wanted = set(lengths)
    st = a.structure
    ok = [len(c) in wanted for c in st.cycles]
    return _restrict(a, [ok[c] for c in st.comp])


def supp_upto(a: Fds, ell: int) -> Fds:
    """Components with cycle length at most ``ell``."""
    st = a.structure
    ok = [len(c) <= ell for c in st.cycles]
    return _restrict(a, [ok[c] for c in st.comp])


def components(a: Fds) -> list[Fds]:
    """Connected components in canonical order."""
    st = a.structure
    out = []
    for ci, _ in _rank_components(st):
        out.append(_restrict(a, [c == ci for c in st.comp]))
    return out


def canonical_code(a: Fds) -> FdsCode:
    st = a.structure
    out = []
    for ci, r in _rank_components(st):
        cyc = st.cycles[ci]
        rot = cyc[r:] + cyc[:r]
        out.append((len(cyc), tuple(st.trees[c].code for c in rot)))
    return tuple(out)


def anchor_trees(cycle_len: int, trees: Sequence[Tree]) -> Fds:
    """Connected FDS on a ``cycle_len``-cycle with ``trees[i]`` on the i-th state.

    States are met in arrow order: state ``i`` maps to ``i + 1``.
    """
    if cycle_len < 1:
        raise ValueError("cycle length must be positive")
    if len(trees) != cycle_len:
        raise ValueError(f"need {cycle_len} trees, got {len(trees)}")
    succ = [(i + 1) % cycle_len for i in range(cycle_len)]
    for i, t in enumerate(trees):
        _emit(t, i, succ)
    return Fds._trusted(succ)


def _emit(t: Tree, root: int, succ: list[int]) -> None:
    stack = [(t, root)]
    while stack:
        node, idx = stack.pop()
        for c in node.children:
            succ.append(idx)
            stack.append((c, len(succ) - 1))


def from_code(code: FdsCode) -> Fds:
    succ: list[int] = []
    parts = []
    for ln, codes in code:
        if len(codes) != ln:
            raise FdsFormatError(f"component of cycle length {ln} lists {len(codes)} trees")
        parts.append(anchor_trees(ln, [decode_cf(c) for c in codes]))
    out = EMPTY
    for p in parts:
        out = fds_sum(out, p)
    return out.canonical()


def dendron_from_tree(t: Tree) -> Fds:
    """Dendron whose fixpoint carries ``t`` (the root becomes the fixpoint)."""
    return anchor_trees(1, [t])


def dendron_tree(a: Fds) -> Tree:
    """Tree anchored on the fixpoint of a dendron."""
    if not a.is_dendron():
        raise ValueError("not a dendron")
    return a.structure.trees[a.structure.cycles[0][0]]


# -- text formats -----------------------------------------------------------


def format_fds(a: Fds, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + ln for ln in comment.splitlines())
    lines.append(str(len(a.succ)))
    lines.append(" ".join(str(x) for x in a.succ))
    return "\n".join(lines) + "\n"


def parse_fds(text: str) -> Fds:
    if not text.endswith("\n"):
        raise FdsFormatError("missing trailing newline")
    rows = [ln for ln in text.split("\n")[:-1] if not ln.lstrip().startswith("#")]
    if not rows:
        raise FdsFormatError("no state count line")
    try:
        n = int(rows[0].strip())
    except ValueError as exc:
        raise FdsFormatError(f"bad state count {rows[0]!r}") from exc
    body = rows[1:]
    if len(body) > 1 and any(r.strip() for r in body[1:]):
        raise FdsFormatError("unexpected content after successor line")
    fields = body[0].split() if body else []
    if n > 0 and not body:
        raise FdsFormatError("missing successor line")
    try:
        succ = [int(x) for x in fields]
    except ValueError as exc:
        raise FdsFormatError("non-integer successor") from exc
    if len(succ) != n:
        raise FdsFormatError(f"expected {n} successors, got {len(succ)}")
    try:
        return Fds(succ)
    except ValueError as exc:
        raise FdsFormatError(str(exc)) from exc


def read_fds(path) -> Fds:
    with open(path) as fh:
        return parse_fds(fh.read())


def write_fds(path, a: Fds, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_fds(a, comment))


def to_dot(a: Fds, name: str = "fds") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {s} -> {t};" for s, t in enumerate(a.succ))
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_fds_code(code: FdsCode) -> str:
    """One component per line: ``length;code;code;...``."""
    return "".join(
        str(ln) + ";" + ";".join(format_code(c) for c in codes) + "\n" for ln, codes in code
    )


def parse_fds_code(text: str) -> FdsCode:
    out = []
    for ln in text.splitlines():
        if not ln.strip() or ln.lstrip().startswith("#"):
            continue
        head, *rest = ln.split(";")
        out.append((int(head), tuple(parse_code(r) for r in rest)))
    return tuple(out)


def size_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def lcm(*xs: int) -> int:
    return math.lcm(*xs) if xs else 1


def component_counts(a: Fds) -> Counter:
    return Counter(components(a))
