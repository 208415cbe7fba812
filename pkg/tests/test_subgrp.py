import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, FINITE, random_element
from qpc import groups, oracle
from qpc.consistency import is_consistent
from qpc.covers import cover
from qpc.errors import NotAMember, UnsupportedInstance
from qpc.subgrp import (center, element_of, express, express_or_raise, induced_sequence,
                        normal_closure, subgroup_presentation, whole_group)


def closure_size(table, gens):
    """Size of the subgroup generated by ``gens`` (element indices), by flooding."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = table.table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FINITE), st.integers(0, 10 ** 6), st.integers(0, 3))
def test_induced_sequence_matches_closure(item, seed, k):
    _, G = item
    rng = random.Random(seed)
    gens = [random_element(G, rng) for _ in range(k)]
    seq = induced_sequence(G, gens)
    table = oracle.enumerate(G)
    members = closure_size(table, [table.index[g] for g in gens])
    assert seq.order() == len(members)
    for idx, x in enumerate(table.elements):
        assert seq.contains(x) == (idx in members)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(0, 10 ** 6))
def test_express_round_trip(item, seed):
    _, G = item
    rng = random.Random(seed)
    seq = induced_sequence(G, [random_element(G, rng) for _ in range(2)])
    x = G.mul(*[G.pow(m, rng.randint(-3, 3)) for m in seq.members], G.identity())
    assert element_of(seq, express(seq, x)) == x


def test_non_member():
    G = groups.s3()
    seq = induced_sequence(G, [G.gen(1)])
    assert seq.order() == 3
    assert express(seq, G.gen(0)) is None
    with pytest.raises(NotAMember):
        express_or_raise(seq, G.gen(0))


def test_infinite_subgroup():
    G = groups.dinf()
    seq = induced_sequence(G, [(1, 0), (0, 2)])
    assert seq.order() == 0
    assert seq.contains((1, 4)) and not seq.contains((0, 1))


@pytest.mark.parametrize("label,G", CORPUS)
def test_subgroup_presentations_are_consistent(label, G):
    rng = random.Random(7)
    for _ in range(5):
        seq = induced_sequence(G, [random_element(G, rng) for _ in range(2)])
        sub = subgroup_presentation(seq)
        assert is_consistent(sub.pres)
        assert seq.order() == (0 if not sub.pres.is_finite else _order(sub.pres.orders))
        for k in range(sub.pres.n):
            coords = tuple(int(i == k) for i in range(sub.pres.n))
            assert sub.from_parent(sub.to_parent(coords)) == coords


def _order(orders):
    total = 1
    for e in orders:
        total *= e
    return total


def test_normal_closure():
    G = groups.s3()
    assert normal_closure(G, [G.gen(1)]).order() == 3
    assert normal_closure(G, [G.gen(0)]).order() == 6
    D = groups.d8()
    assert normal_closure(D, [D.gen(0)]).order() == 4


def _center_elements(G, strategy=None):
    Z = center(G, strategy)
    return sorted(x for x in itertools.product(*[range(e) for e in G.orders]) if Z.contains(x))


def test_center_oracles_agree():
    for _, G in FINITE:
        assert sorted(oracle.brute_center(oracle.enumerate(G))) == oracle.center_by_generators(G)


@pytest.mark.parametrize("label,G", FINITE)
@pytest.mark.parametrize("q", [0, 2, 3])
def test_center_of_finite_covers(label, G, q):
    E = cover(G, q).E
    if not E.is_finite:
        return
    expected = oracle.center_by_generators(E)
    assert _center_elements(E, "finite") == expected
    assert _center_elements(E, "layered") == expected


def test_center_infinite():
    G = groups.dinf()
    assert center(G).is_trivial()
    Z = center(cover(G, 2).E)
    assert len(Z.members) == 2
    with pytest.raises(UnsupportedInstance):
        center(G, "finite")


def test_whole_group():
    G = groups.q8()
    assert whole_group(G).order() == 8
