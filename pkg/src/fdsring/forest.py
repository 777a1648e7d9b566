"""Finite rooted in-trees, forests and the level-by-level product.

Trees are hash-consed: every isomorphism class has exactly one ``Tree``
object per process, so equality is identity and multiset bookkeeping can key
on ``Tree.uid``.  Children are kept sorted by the ``C_f`` code (the level
order child-count sequence of the sorted tree), which makes the code, the
total order and isomorphism tests cheap after construction.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import total_ordering
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Tree",
    "Forest",
    "CodeError",
    "LEAF",
    "leaf",
    "path_tree",
    "star_tree",
    "code_cf",
    "decode_cf",
    "child_debt",
    "cmp_trees",
    "tree_product",
    "tree_power",
    "truncate_tree",
    "depth_tree",
    "forest_sum",
    "forest_product",
    "root_join",
    "format_code",
    "parse_code",
]


class CodeError(ValueError):
    """Raised when an integer sequence is not a valid tree code."""


_TABLE: dict[tuple[int, ...], "Tree"] = {}
_UIDS = itertools.count()


@total_ordering
class Tree:
    """A finite rooted in-tree, interned by structure.

    Build trees with :meth:`Tree.of`; never call the constructor directly.
    ``levels[d]`` holds the child counts of the depth-``d`` vertices in
    sorted level order, so ``levels`` compares exactly like the flat code.
    """

    __slots__ = ("children", "levels", "uid", "size", "__weakref__")

    def __init__(self, children: tuple["Tree", ...], levels: tuple[tuple[int, ...], ...]):
        self.children = children
        self.levels = levels
        self.uid = next(_UIDS)
        self.size = 1 + sum(c.size for c in children)

    @staticmethod
    def of(children: Iterable["Tree"] = ()) -> "Tree":
        kids = sorted(children, key=_levels_key)
        key = tuple(c.uid for c in kids)
        hit = _TABLE.get(key)
        if hit is not None:
            return hit
        levels = _merge_levels(kids)
        return _TABLE.setdefault(key, Tree(tuple(kids), levels))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def code(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.levels))

    def is_leaf(self) -> bool:
        return not self.children

    def __lt__(self, other: "Tree") -> bool:
        return self.levels < other.levels

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return self.uid

    def __mul__(self, other: "Tree") -> "Tree":
        return tree_product(self, other)

    def __pow__(self, k: int) -> "Tree":
        return tree_power(self, k)

    def __repr__(self) -> str:
        return f"Tree({format_code(self.code)})"

    def __reduce__(self):
        return (decode_cf, (self.code,))


def _levels_key(t: Tree) -> tuple[tuple[int, ...], ...]:
    return t.levels


def _merge_levels(kids: Sequence[Tree]) -> tuple[tuple[int, ...], ...]:
    levels = [(len(kids),)]
    frontier = [k for k in kids]
    d = 0
    while frontier:
        row: list[int] = []
        nxt = []
        for k in frontier:
            row.extend(k.levels[d])
            if len(k.levels) > d + 1:
                nxt.append(k)
        levels.append(tuple(row))
        frontier = nxt
        d += 1
    return tuple(levels)


LEAF = Tree.of(())


def leaf() -> Tree:
    return LEAF


def path_tree(depth: int) -> Tree:
    """Single chain with ``depth`` edges."""
    t = LEAF
    for _ in range(depth):
        t = Tree.of((t,))
    return t


def star_tree(n: int) -> Tree:
    """Root with ``n`` leaf children."""
    return Tree.of([LEAF] * n)


# -- codes ------------------------------------------------------------------


def code_cf(t: Tree) -> tuple[int, ...]:
    return t.code


def child_debt(code: Sequence[int], i: int) -> int:
    """Vertices announced by the first ``i`` entries but not yet read.

    Counts the root as announced, so a complete code has debt 0 exactly at
    its end and nowhere before.
    """
    return 1 + sum(code[:i]) - i


def decode_cf(code: Sequence[int], strict: bool = True) -> Tree:
    """Rebuild a tree from its level-order child counts.

    With ``strict`` the input must be the canonical code of the result.
    """
    code = tuple(int(c) for c in code)
    if not code:
        raise CodeError("empty code")
    pending = 1
    for i, c in enumerate(code):
        if c < 0:
            raise CodeError(f"negative entry at position {i}")
        pending += c - 1
        if pending == 0 and i != len(code) - 1:
            raise CodeError(f"child debt reaches 0 early at position {i}")
    if pending != 0:
        raise CodeError(f"child debt never reaches 0 (left {pending})")

    # level-by-level split, then bottom-up rebuild
    levels: list[tuple[int, ...]] = []
    pos, width = 0, 1
    while pos < len(code):
        levels.append(code[pos:pos + width])
        width_next = sum(code[pos:pos + width])
        pos += width
        width = width_next
    below: list[Tree] = []
    for row in reversed(levels):
        built = []
        it = iter(below)
        for c in row:
            built.append(Tree.of([next(it) for _ in range(c)]))
        below = built
    (t,) = below
    if strict and t.code != code:
        raise CodeError(f"code is not canonical (canonical form {format_code(t.code)})")
    return t


def format_code(code: Sequence[int]) -> str:
    return ",".join(str(c) for c in code)


def parse_code(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.strip().split(",")]
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise CodeError(f"bad code text {text!r}") from exc


def cmp_trees(a: Tree, b: Tree) -> int:
    if a is b:
        return 0
    return -1 if a.levels < b.levels else 1


# -- operations -------------------------------------------------------------

_PRODUCTS: dict[tuple[int, int], Tree] = {}
_TRUNCS: dict[tuple[int, int], Tree] = {}


def depth_tree(t: Tree | None) -> int:
    """Depth of a tree; ``None`` stands for the empty forest (depth -1)."""
    return -1 if t is None else t.depth


def truncate_tree(t: Tree, k: int) -> Tree:
    """Keep the vertices at depth at most ``k``."""
    if k < 0:
        raise ValueError("truncation depth must be nonnegative")
    if k >= t.depth:
        return t
    if k == 0:
        return LEAF
    key = (t.uid, k)
    hit = _TRUNCS.get(key)
    if hit is None:
        hit = Tree.of(truncate_tree(c, k - 1) for c in t.children)
        _TRUNCS[key] = hit
    return hit


def tree_product(a: Tree, b: Tree) -> Tree:
    """Depth-matched product: children multiply pairwise."""
    if not a.children or not b.children:
        return LEAF
    if a is LEAF or b is LEAF:
        return LEAF
    key = (a.uid, b.uid) if a.uid <= b.uid else (b.uid, a.uid)
    hit = _PRODUCTS.get(key)
    if hit is not None:
        return hit
    ca = Counter(a.children)
    cb = Counter(b.children)
    kids: list[Tree] = []
    for x, m in ca.items():
        for y, n in cb.items():
            p = tree_product(x, y)
            kids.extend(itertools.repeat(p, m * n))
    hit = Tree.of(kids)
    _PRODUCTS[key] = hit
    return hit


def tree_power(t: Tree, k: int) -> Tree:
    if k < 1:
        raise ValueError("tree powers start at 1; the identity is the infinite path")
    result = t
    for _ in range(k - 1):
        result = tree_product(result, t)
    return result


# -- forests ----------------------------------------------------------------


class Forest:
    """Immutable multiset of trees, stored sorted by code."""

    __slots__ = ("trees",)

    def __init__(self, trees: Iterable[Tree] = ()):
        self.trees: tuple[Tree, ...] = tuple(sorted(trees, key=_levels_key))

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Forest):
            return NotImplemented
        return self.trees == other.trees

    def __hash__(self) -> int:
        return hash(tuple(t.uid for t in self.trees))

    def __add__(self, other: "Forest") -> "Forest":
        return forest_sum(self, other)

    def __mul__(self, other: "Forest") -> "Forest":
        return forest_product(self, other)

    def __repr__(self) -> str:
        return "Forest([" + "; ".join(format_code(t.code) for t in self.trees) + "])"

    @property
    def size(self) -> int:
        return sum(t.size for t in self.trees)

    def counts(self) -> Counter:
        return Counter(self.trees)

    def codes(self) -> list[tuple[int, ...]]:
        return [t.code for t in self.trees]


def forest_sum(a: Forest, b: Forest) -> Forest:
    return Forest(a.trees + b.trees)


def forest_product(a: Forest, b: Forest) -> Forest:
    return Forest(tree_product(x, y) for x in a.trees for y in b.trees)


def root_join(f: Forest | Iterable[Tree]) -> Tree:
    """Tree whose root children are exactly the trees of ``f``."""
    return Tree.of(f)


def clear_caches() -> None:
    """Drop memoised products and truncations (interned trees stay)."""
    _PRODUCTS.clear()
    _TRUNCS.clear()
