import pytest

from fdsring.fds import ONE, EMPTY, Fds, canonical_code, cycle, fds_sum, product
from fdsring.oracle import (
    KINDS,
    all_maps_classes,
    brute_divisor_pairs,
    brute_tree_quotients,
    count,
    two_factorisations,
    enumerate_kind,
    fds_classes,
    fixtures,
    trees,
)
from fdsring.forest import star_tree


def test_counts():
    assert [count("fds", n) for n in range(8)] == [1, 1, 3, 7, 19, 47, 130, 343]
    assert [count("tree", n) for n in range(1, 10)] == [1, 1, 2, 4, 9, 20, 48, 115, 286]
    assert [count("dendron", n) for n in range(1, 6)] == [1, 1, 2, 4, 9]
    assert [count("permutation", n) for n in range(1, 10)] == [1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert [count("connected", n) for n in range(1, 7)] == [1, 2, 4, 9, 20, 51]
    assert list(enumerate_kind("fds", 1)) == [ONE]


def test_against_all_maps():
    for n in range(6):
        assert {canonical_code(a) for a in fds_classes(n)} == all_maps_classes(n)


def test_order_and_uniqueness():
    for n in range(6):
        codes = [canonical_code(a) for a in fds_classes(n)]
        assert codes == sorted(set(codes))


def test_bad_kind():
    with pytest.raises(ValueError):
        list(enumerate_kind("graph", 3))
    with pytest.raises(ValueError):
        list(enumerate_kind("fds", -1))
    assert "permutation" in KINDS


def test_divisor_pairs():
    c2 = cycle(2)
    pairs = brute_divisor_pairs(fds_sum(c2, c2))
    assert (c2, c2) in pairs
    assert (fds_sum(ONE, ONE), c2) in pairs
    assert brute_divisor_pairs(ONE) == {(ONE, ONE)}
    for a, b in pairs:
        assert product(a, b) == fds_sum(c2, c2)
    with pytest.raises(ValueError):
        brute_divisor_pairs(EMPTY)


def test_two_factorisation_pairs():
    cx = two_factorisations()
    pairs = brute_divisor_pairs(cx["product"])
    nontrivial = {p for p in pairs if len(p[0]) > 1}
    assert nontrivial == {(cx["P1"], cx["B6"]), (cx["S3"], cx["D4"])}


def test_tree_quotients():
    assert brute_tree_quotients(star_tree(6), star_tree(2)) == [star_tree(3)]
    assert brute_tree_quotients(star_tree(5), star_tree(2)) == []


def test_fixtures_hold():
    names = set()
    for fx in fixtures():
        assert fx.holds(), fx.name
        names.add(fx.name)
    assert "c2-squared" in names and "twelve-state-two-factorisations" in names
