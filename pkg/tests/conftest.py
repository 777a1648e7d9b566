import random
import sys

import pytest
from hypothesis import settings, strategies as st

from fdsring.fds import Fds
from fdsring.forest import Tree

# timings vary with cache warmth and the selected kernel backend
settings.register_profile("fdsring", deadline=None)
settings.load_profile("fdsring")


@st.composite
def fds_maps(draw, max_size=8, min_size=0):
    n = draw(st.integers(min_size, max_size))
    return Fds(draw(st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n)) if n else [])


@st.composite
def random_trees(draw, max_nodes=8):
    """Random recursive tree: node i hangs under a uniformly drawn earlier node."""
    n = draw(st.integers(1, max_nodes))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return tree_from_parents(parents)


def tree_from_parents(parents):
    n = len(parents) + 1
    kids = [[] for _ in range(n)]
    for i, p in enumerate(parents, start=1):
        kids[p].append(i)
    built = [None] * n
    for v in range(n - 1, -1, -1):
        built[v] = Tree.of(built[c] for c in kids[v])
    return built[0]


def random_dendron(n, rng):
    """Random recursive dendron with ``n`` states."""
    succ = [0] + [rng.randrange(i) for i in range(1, n)]
    return Fds(succ)


def relabel(a, rng):
    perm = list(range(len(a)))
    rng.shuffle(perm)
    inv = [0] * len(perm)
    for old, new in enumerate(perm):
        inv[new] = old
    return Fds([perm[a.succ[inv[s]]] for s in range(len(a))])


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[i])
