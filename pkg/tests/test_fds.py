import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from fdsring.fds import (
    EMPTY,
    ONE,
    Fds,
    FdsFormatError,
    anchor_trees,
    canonical_code,
    classify,
    components,
    cycle,
    fds_sum,
    format_fds,
    format_fds_code,
    from_code,
    least_rotation,
    parse_fds,
    parse_fds_code,
    power,
    product,
    read_fds,
    supp,
    supp_upto,
    to_dot,
    truncate,
    write_fds,
)
from fdsring.forest import LEAF, path_tree, star_tree
from fdsring.oracle import fds_classes, six_cycle_pair, trees

from conftest import fds_maps, relabel


def brute_product(a, b):
    # pair map on the Cartesian product, labelled by pairs
    pairs = list(itertools.product(range(len(a)), range(len(b))))
    idx = {p: i for i, p in enumerate(pairs)}
    return Fds([idx[(a.succ[x], b.succ[y])] for x, y in pairs])


def graph(a):
    g = nx.DiGraph()
    g.add_nodes_from(range(len(a)))
    g.add_edges_from((s, t) for s, t in enumerate(a.succ))
    return g


def iso(a, b):
    return len(a) == len(b) and nx.is_isomorphic(graph(a), graph(b))


def perm(*lengths):
    out = EMPTY
    for k in lengths:
        out = fds_sum(out, cycle(k))
    return out


def test_rejects_bad_successor():
    with pytest.raises(ValueError):
        Fds([0, 2])
    with pytest.raises(ValueError):
        Fds([-1])


def test_classify_examples():
    c = classify(ONE)
    assert c.depth == (0,) and c.on_cycle == (True,) and c.cycle_lengths == (1,)
    a, _ = six_cycle_pair()
    c = classify(a)
    assert sorted(c.cycle_lengths) == [2, 3]
    assert [s for s, d in enumerate(c.depth) if d == 1] == [3, 4, 5, 8]
    p3 = Fds([0, 0, 1, 2])
    assert classify(p3).depth == (0, 1, 2, 3)


@given(fds_maps(max_size=12))
def test_classify_invariants(a):
    c = classify(a)
    assert sum(c.cycle_lengths) == sum(c.on_cycle)
    for s, d in enumerate(c.depth):
        assert (d == 0) == c.on_cycle[s]
        if d:
            assert d == c.depth[a.succ[s]] + 1
    if len(a):
        assert c.cycle_lengths


def test_sum_examples():
    assert fds_sum(ONE, ONE) == Fds([0, 1])
    a, _ = six_cycle_pair()
    assert fds_sum(EMPTY, a) == a
    s = fds_sum(cycle(2), cycle(3))
    assert s.is_permutation() and s.cycle_lengths == (2, 3)


def test_product_examples():
    assert product(cycle(2), cycle(3)) == cycle(6)
    assert product(cycle(2), cycle(2)) == perm(2, 2)
    a, b = six_cycle_pair()
    ab = product(a, b)
    assert len(ab) == 63
    comps = components(ab)
    assert len(comps) == 5
    assert all(c.cycle_lengths == (6,) for c in comps)


@settings(max_examples=80)
@given(fds_maps(max_size=6), fds_maps(max_size=6))
def test_product_is_pair_map(a, b):
    p = product(a, b)
    assert p == brute_product(a, b)
    assert iso(p, brute_product(a, b))
    assert len(p) == len(a) * len(b)
    assert len(fds_sum(a, b)) == len(a) + len(b)


@given(fds_maps(max_size=5), fds_maps(max_size=5))
def test_product_labels(a, b):
    p, labels = product(a, b, with_labels=True)
    assert sorted(labels) == sorted(itertools.product(range(len(a)), range(len(b))))
    for s, (x, y) in enumerate(labels):
        assert labels[p.succ[s]] == (a.succ[x], b.succ[y])


def test_truncate_examples():
    p3 = Fds([0, 0, 1, 2])
    assert truncate(p3, 0) == ONE
    a, _ = six_cycle_pair()
    assert truncate(a, a.depth) == a
    with pytest.raises(ValueError):
        truncate(a, -1)


@given(fds_maps(max_size=6), fds_maps(max_size=6), st.integers(0, 4))
def test_truncate_product(a, b, k):
    assert truncate(product(a, b), k) == product(truncate(a, k), truncate(b, k))


def test_supp_examples():
    assert supp(perm(2, 3), {2}) == cycle(2)
    a, _ = six_cycle_pair()
    assert supp(a, set(a.cycle_lengths)) == a
    assert supp(a, {5}) == EMPTY


def test_supp_upto_polynomial_corrected():
    # the support up to l of P(A) depends only on the support up to l of A
    rng = random.Random(3)
    for _ in range(200):
        a = Fds([rng.randrange(n) for n in [rng.randint(1, 6)] for _ in range(n)])
        coeffs = [Fds([rng.randrange(m) for m in [rng.randint(1, 3)] for _ in range(m)]) for _ in range(3)]
        ell = rng.randint(1, 4)

        def p(x):
            out, pw = EMPTY, ONE
            for i, c in enumerate(coeffs):
                if i:
                    pw = product(pw, x)
                out = fds_sum(out, product(c, pw))
            return out

        assert supp_upto(p(a), ell) == supp_upto(p(supp_upto(a, ell)), ell)


def test_supp_of_polynomial_needs_outer_support():
    # C_2 * C_3 = C_6, so P(supp A) can hold cycles longer than the bound
    a = perm(2, 3)
    low = supp_upto(a, 3)
    assert low == a
    assert product(low, low) != supp_upto(product(a, a), 3)
    assert supp_upto(product(low, low), 3) == supp_upto(product(a, a), 3)


def test_canonical_code_examples():
    assert canonical_code(fds_sum(ONE, ONE)) == canonical_code(Fds([0, 1]))
    assert canonical_code(Fds([1, 1, 0])) == canonical_code(Fds([0, 0, 1]))
    assert canonical_code(cycle(3)) != canonical_code(perm(1, 1, 1))
    codes = [canonical_code(a) for a in fds_classes(4)]
    assert len(codes) == len(set(codes)) == 19


def test_code_is_isomorphism_invariant_exhaustive():
    pool = [a for n in range(5) for a in fds_classes(n)]
    for a, b in itertools.combinations(pool, 2):
        assert not iso(a, b)
    rng = random.Random(7)
    for a in pool:
        r = relabel(a, rng)
        assert iso(a, r)
        assert canonical_code(r) == canonical_code(a)
        assert r == a


@given(fds_maps(max_size=10), st.randoms(use_true_random=False))
def test_code_random_relabel(a, r):
    b = relabel(a, r)
    assert canonical_code(b) == canonical_code(a)
    assert a.canonical().succ == b.canonical().succ


@settings(max_examples=60)
@given(fds_maps(max_size=8), fds_maps(max_size=8))
def test_code_equality_matches_networkx(a, b):
    assert (a == b) == iso(a, b)


@given(fds_maps(max_size=10))
def test_from_code_round_trip(a):
    code = canonical_code(a)
    assert from_code(code) == a
    assert parse_fds_code(format_fds_code(code)) == code


def test_components():
    assert components(perm(2, 3)) == [cycle(2), cycle(3)]
    a, _ = six_cycle_pair()
    assert components(components(a)[0]) == [components(a)[0]]
    for a in fds_classes(5):
        acc = EMPTY
        for c in components(a):
            assert c.is_connected()
            acc = fds_sum(acc, c)
        assert acc == a


def test_anchor_trees():
    assert anchor_trees(1, [LEAF]) == ONE
    assert anchor_trees(4, [LEAF] * 4) == cycle(4)
    with pytest.raises(ValueError):
        anchor_trees(2, [LEAF])


def test_anchor_times_cycle():
    t1, t2 = path_tree(1), star_tree(2)
    lhs = product(anchor_trees(2, [t1, t2]), cycle(4))
    c4 = anchor_trees(4, [t1, t2, t1, t2])
    assert lhs == fds_sum(c4, c4)


def _decorate(p, labels, ts):
    # hang ts[i] on every cycle state of p labelled (i, *)
    succ = list(p.succ)
    stack = [(ts[labels[s][0]], s) for s in range(len(p))]
    while stack:
        node, idx = stack.pop()
        for c in node.children:
            succ.append(idx)
            stack.append((c, len(succ) - 1))
    return Fds(succ)


def test_anchored_trees_times_permutation():
    small = [t for n in range(1, 4) for t in trees(n)]
    perms = [p for n in range(1, 7) for p in fds_classes(n) if p.is_permutation()]
    rng = random.Random(11)
    for k in range(1, 5):
        for _ in range(15):
            ts = [rng.choice(small) for _ in range(k)]
            for p in perms:
                ck_p, labels = product(cycle(k), p, with_labels=True)
                assert product(anchor_trees(k, ts), p) == _decorate(ck_p, labels, ts)


def test_power():
    assert power(cycle(2), 0) == ONE
    assert power(cycle(2), 3) == perm(2, 2, 2, 2)
    a, _ = six_cycle_pair()
    assert power(a, 3) == product(product(a, a), a)


def test_least_rotation():
    assert least_rotation([3, 1, 2, 1, 2]) == 1
    for seq in itertools.product(range(3), repeat=5):
        r = least_rotation(seq)
        rots = [seq[i:] + seq[:i] for i in range(5)]
        assert seq[r:] + seq[:r] == min(rots)


def test_text_format(tmp_path):
    a, _ = six_cycle_pair()
    text = format_fds(a, "sample")
    assert text.startswith("# sample\n9\n")
    assert parse_fds(text) == a
    path = tmp_path / "a.fds"
    write_fds(path, a)
    assert read_fds(path).succ == a.succ
    assert parse_fds(format_fds(EMPTY)) == EMPTY


@pytest.mark.parametrize("text", ["2\n0 0", "2\n0\n", "x\n", "2\n0 5\n", "2\n0 a\n", "", "1\n0\n0\n"])
def test_text_format_errors(text):
    with pytest.raises(FdsFormatError):
        parse_fds(text)


def test_dot():
    out = to_dot(cycle(2))
    assert "0 -> 1;" in out and "1 -> 0;" in out


def test_operators():
    a, b = six_cycle_pair()
    assert a * b == product(a, b)
    assert a + b == fds_sum(a, b)
    assert a ** 2 == product(a, a)
    assert hash(a) == hash(relabel(a, random.Random(1)))
