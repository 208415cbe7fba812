import math

import pytest

from conftest import FINITE
from qpc import groups, oracle, structure
from qpc.errors import PreconditionError
from qpc.pc import PcPresentation
from qpc.qnu import build_nu


def test_describe_strings():
    assert structure.describe(groups.s3()).display == "order 6, ab = C2"
    assert structure.describe(groups.abelian(2, 2, 0)).display == "C2 x C2 x Z"
    assert structure.describe(groups.trivial()).display == "1"
    assert structure.describe(groups.dinf()).display == "infinite, hirsch 1, ab = C2 x C2"


def test_order_and_hirsch():
    assert structure.order(groups.q8()) == 8
    assert structure.order(groups.dinf()) == math.inf
    assert structure.hirsch_length(groups.dinf()) == 1


def test_abelianization_of_nonsplit_group():
    # C4 presented on two generators g1^2 = g2
    C4 = PcPresentation((2, 2), powers={0: ((1, 1),)})
    assert structure.abelianization(C4) == [4]


def test_isomorphic_abelian_needs_abelian_input():
    with pytest.raises(PreconditionError):
        structure.is_isomorphic_abelian(groups.s3(), groups.cyclic(6))


def test_matches_presentation():
    assert structure.matches_presentation(groups.d8(), groups.d8()) == "yes"
    assert structure.matches_presentation(groups.q8(), groups.d8()) == "no"
    assert structure.matches_presentation(groups.s3(), groups.cyclic(6)) == "no"
    # the same group under a different polycyclic series
    D8 = PcPresentation((2, 4), conjs={(1, 0): ((1, 3),)})
    assert structure.matches_presentation(D8, groups.d8()) == "yes"


@pytest.mark.parametrize("label,G", FINITE)
def test_abelianization_against_oracle(label, G):
    table = oracle.enumerate(G)
    derived = set()
    t = table.table
    inv = {a: next(b for b in range(len(t)) if t[a][b] == 0) for a in range(len(t))}
    for a in range(len(t)):
        for b in range(len(t)):
            derived.add(t[t[inv[a]][inv[b]]][t[a][b]])
    size = len(table) // _closure(table, derived)
    got = 1
    for d in structure.abelianization(G):
        got *= d
    assert got == size


def _closure(table, gens):
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
    return len(seen)


def test_oracle_basics():
    table = oracle.enumerate(groups.s3())
    assert len(table) == 6 and not table.is_abelian()
    assert oracle.brute_center(table) == [(0, 0)]
    assert sorted(oracle.element_order(table, a) for a in range(6)) == [1, 2, 2, 2, 3, 3]
    with pytest.raises(PreconditionError):
        oracle.enumerate(groups.dinf())


def test_invariant_factors():
    assert oracle.invariant_factors([2, 3]) == [6]
    assert oracle.invariant_factors([4, 6, 0]) == [2, 12, 0]
    assert oracle.invariant_factors([]) == []
    assert oracle.abelian_tensor([2], [2]) == [2]
    assert oracle.abelian_tensor([2, 2], [2, 2]) == [2, 2, 2, 2]
    assert oracle.abelian_tensor([0], [0]) == [0]


@pytest.mark.parametrize("orders", [(2,), (3,), (4,), (6,), (2, 2), (0,), (2, 0)])
def test_q_zero_tensor_of_abelian_groups(orders):
    G = groups.abelian(*orders)
    T = build_nu(G, 0).tensor_pres
    assert structure.abelianization(T) == oracle.abelian_tensor(list(orders), list(orders))
