import pytest

from conftest import CORPUS
from qpc import groups, structure
from qpc.consistency import consistency_report, is_consistent
from qpc.covers import attach_tails, central_quotient, cover, evaluate_in_cover
from qpc.subgrp import induced_sequence


def test_s3_cover():
    cov = cover(groups.s3(), 2)
    assert structure.order(cov.E) == 24
    assert cov.tail_orders == [2, 2]
    assert consistency_report(cov.E) == []


@pytest.mark.parametrize("q", [2, 3, 5])
def test_dinf_tails_already_consistent(q):
    tp = attach_tails(groups.dinf(), q)
    assert consistency_report(tp.pres) == []
    assert cover(groups.dinf(), q).tail_orders == [q, q]


@pytest.mark.parametrize("label,G", CORPUS)
@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_cover_shape(label, G, q):
    cov = cover(G, q)
    E = cov.E
    assert is_consistent(E)
    assert E.orders[:G.n] == G.orders
    assert list(cov.tail_indices) == list(range(G.n, E.n))
    for d in cov.tail_orders:
        assert d > 1 or d == 0
        if q:
            assert d and q % d == 0
    # tails are central
    for t in cov.tail_indices:
        for i in range(E.n):
            assert E.comm(E.gen(t), E.gen(i)) == E.identity()
    # projection is a homomorphism on generator products
    for i in range(E.n):
        for j in range(E.n):
            x = E.mul(E.gen(i), E.gen(j))
            assert cov.pi(x) == G.mul(cov.pi(E.gen(i)), cov.pi(E.gen(j)))


@pytest.mark.parametrize("label,G", CORPUS)
def test_q_one_adds_nothing(label, G):
    assert cover(G, 1).E.n == G.n


def test_cover_order_identity():
    # |E_q(G)| = |G| * |T_q| with T_q the product of the tail orders
    for label, G in CORPUS:
        if not G.is_finite:
            continue
        for q in (2, 3, 4):
            cov = cover(G, q)
            tails = 1
            for d in cov.tail_orders:
                tails *= d
            assert structure.order(cov.E) == structure.order(G) * tails


def test_c2_relator_value():
    cov = cover(groups.cyclic(2), 2)
    assert evaluate_in_cover(cov, "g1^2") == (1,)


def test_central_quotient_kills_tails():
    cov = cover(groups.s3(), 2)
    E = cov.E
    L = induced_sequence(E, [E.gen(i) for i in range(E.n)])
    pres, project = central_quotient(cov, [E.gen(cov.tail_indices[0])], L)
    assert structure.order(pres) == 12
    assert project(E.gen(cov.tail_indices[0])) == pres.identity()
