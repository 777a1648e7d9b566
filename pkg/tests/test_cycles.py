import itertools
import math
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from fdsring.cycles import (
    NoPermRootError,
    Permutation,
    chinese_witness,
    cycle_product,
    delta,
    format_permutation,
    is_cancellative,
    noncancellative_witness,
    parse_permutation,
    perm_kth_root,
    perm_power,
    perm_product,
)
from fdsring.fds import EMPTY, ONE, Fds, anchor_trees, cycle, fds_sum, product
from fdsring.forest import LEAF, path_tree
from fdsring.oracle import dendrons, fds_classes, permutations

perms = st.dictionaries(st.integers(1, 6), st.integers(1, 3), max_size=3).map(Permutation)


def P(**kw):
    return Permutation({int(k[1:]): v for k, v in kw.items()})


def test_cycle_product_examples():
    assert cycle_product(2, 3) == P(c6=1)
    assert cycle_product(2, 2) == P(c2=2)
    for k in range(1, 7):
        assert cycle_product(1, k) == P(**{f"c{k}": 1})


def test_delta_examples():
    assert delta([]) == 1
    assert delta([2, 2]) == 2
    assert delta([2, 3]) == 1


def test_delta_against_products():
    for size in range(1, 5):
        for j in itertools.combinations_with_replacement(range(1, 7), size):
            acc = ONE
            for a in j:
                acc = product(acc, cycle(a))
            top = reduce(math.lcm, j, 1)
            assert Permutation.from_fds(acc) == Permutation({top: delta(j)})
            assert all(delta(o) == delta(j) for o in itertools.permutations(j))


@given(perms, perms)
def test_perm_product_matches_fds(p, q):
    assert perm_product(p, q).to_fds() == product(p.to_fds(), q.to_fds())
    assert p * q == q * p
    assert (p + q).size == p.size + q.size


def test_roots_examples():
    for k in (1, 2, 5):
        assert perm_kth_root(P(c1=1), k) == P(c1=1)
    assert perm_kth_root(P(c1=1, c2=4), 2) == P(c1=1, c2=1)
    with pytest.raises(NoPermRootError):
        perm_kth_root(P(c2=1), 2)
    with pytest.raises(NoPermRootError):
        # right size, wrong shape
        perm_kth_root(P(c1=2, c2=1), 2)


def test_roots_exhaustive():
    for n in range(1, 9):
        for a in permutations(n):
            p = Permutation.from_fds(a)
            for k in (2, 3):
                assert perm_kth_root(perm_power(p, k), k) == p


def test_is_cancellative():
    assert is_cancellative(ONE)
    assert not is_cancellative(cycle(2))
    assert all(is_cancellative(d) for n in range(1, 6) for d in dendrons(n))


def test_witness_examples():
    w = chinese_witness([2])
    assert w.x == P(c1=2, c2=2) and w.x_prime == P(c1=4, c2=1)
    assert P(c2=1) * w.x == P(c2=6)
    w = chinese_witness([3, 2])
    assert w.x == P(c1=6, c2=6, c3=6, c6=6)
    assert w.x_prime == P(c1=12, c2=3, c3=4, c6=7)
    assert P(c2=1) * w.x == P(c2=1) * w.x_prime == P(c2=18, c6=18)
    assert P(c3=1) * w.x == P(c3=24, c6=24)
    assert w.x_prime[1] - w.x[1] == 6
    with pytest.raises(ValueError):
        chinese_witness([1, 2])


def test_witness_all_subsets():
    graph_checked = 0
    for r in range(1, 6):
        for sub in itertools.combinations(range(2, 7), r):
            w = chinese_witness(sub)
            assert w.x != w.x_prime
            for a in sub:
                assert P(**{f"c{a}": 1}) * w.x == P(**{f"c{a}": 1}) * w.x_prime
            if w.x.size <= 5000:
                graph_checked += 1
                x, xp = w.x.to_fds(), w.x_prime.to_fds()
                for a in sub:
                    assert product(cycle(a), x) == product(cycle(a), xp)
    assert graph_checked >= 5


def test_noncancellative_witness():
    x, xp = noncancellative_witness(cycle(2))
    assert Permutation.from_fds(x) == chinese_witness([2]).x
    a = fds_sum(cycle(2), cycle(3))
    x, xp = noncancellative_witness(a)
    assert product(a, x) == product(a, xp) and x != xp
    dressed = anchor_trees(2, [path_tree(1), LEAF])
    x, xp = noncancellative_witness(dressed)
    assert product(dressed, x) == product(dressed, xp)
    with pytest.raises(ValueError):
        noncancellative_witness(ONE)


def test_dichotomy_exhaustive():
    pool = [b for n in range(0, 5) for b in fds_classes(n)]
    for n in range(1, 5):
        for a in fds_classes(n):
            images = {}
            clash = False
            for b in pool:
                prev = images.setdefault(product(a, b), b)
                clash |= prev != b
            assert clash == (not a.has_fixpoint())
            if not a.has_fixpoint():
                x, xp = noncancellative_witness(a)
                assert x != xp and product(a, x) == product(a, xp)


def test_text_format():
    p = P(c1=2, c6=3)
    assert format_permutation(p) == "1 2\n6 3\n"
    assert parse_permutation("# comment\n1 2\n6 3\n") == p
    assert repr(p) == "2C_1 + 3C_6"
    assert repr(Permutation()) == "0"
    with pytest.raises(ValueError):
        Permutation({0: 1})
