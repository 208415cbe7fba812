"""Acceptance criteria 1-11, one test each.

Each test prints a PASS/FAIL line and must finish within five seconds.
Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

import functools
import itertools
import random
import sys
import time

from conftest import ACCEPTANCE, CORPUS, FINITE, biderivation_failures, random_triples
from qpc import groups, oracle, structure
from qpc.consistency import consistency_report, is_consistent
from qpc.covers import attach_tails, cover
from qpc.expr import evaluate
from qpc.qnu import build_nu, build_nu_qperfect, build_tau, diagonal
from qpc.qwedge import build_wedge, exterior_center, h2, h2_sequence, is_q_capable, lambda_eval, wedge_action
from qpc.subgrp import center, induced_sequence

TIME_LIMIT = 5.0
G1, G2, ONE = (1, 0), (0, 1), (0, 0)


def criterion(number):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            ok = False
            try:
                fn()
                elapsed = time.perf_counter() - start
                assert elapsed < TIME_LIMIT, f"took {elapsed:.2f}s"
                ok = True
            finally:
                elapsed = time.perf_counter() - start
                ACCEPTANCE[number] = (ok, elapsed)
                print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)")
        return run
    return wrap


def _order(seq_or_pres):
    return structure.order(seq_or_pres)


@criterion(1)
def test_criterion_01_s3_cover():
    cov = cover(groups.s3(), 2)
    assert _order(cov.E) == 24
    assert cov.tail_orders == [2, 2]
    assert consistency_report(cov.E) == []


@criterion(2)
def test_criterion_02_dinf_covers():
    for q in (2, 3, 5):
        assert consistency_report(attach_tails(groups.dinf(), q).pres) == []
        assert cover(groups.dinf(), q).tail_orders == [q, q]


@criterion(3)
def test_criterion_03_s3_wedge():
    ctx = build_wedge(groups.s3(), 2)
    assert structure.describe(ctx.wedge_pres).display == "C6"
    assert structure.describe(h2(ctx)).display == "C2"
    assert lambda_eval(ctx, G1, G2, G1) == (1,)
    # the action of g1 on g1 ^ g2 lands on an element of order 3 and is an involution
    w = lambda_eval(ctx, G1, G2, ONE)
    image = wedge_action(ctx, w, G1)
    assert ctx.wedge_pres.order_of(image) == 3
    assert wedge_action(ctx, image, G1) == w


@criterion(4)
def test_criterion_04_dinf_wedge():
    ctx = build_wedge(groups.dinf(), 2)
    W = ctx.wedge_pres
    assert W.is_abelian and structure.abelianization(W) == [2, 2, 0]
    assert W.format_element(wedge_action(ctx, ctx.coords(ctx.beta(G1, G2)), G1)) == "w1^-1*w3"
    assert W.format_element(lambda_eval(ctx, G1, G2, G1)) == "w1*w2*w3"


@criterion(5)
def test_criterion_05_exterior_centers():
    assert exterior_center(groups.s3(), 2).is_trivial() and is_q_capable(groups.s3(), 2)
    for q in (0, 2, 3):
        assert exterior_center(groups.dinf(), q).is_trivial()
    Z = exterior_center(groups.cyclic(2), 2)
    assert Z.order() == 2 and not is_q_capable(groups.cyclic(2), 2)


@criterion(6)
def test_criterion_06_tau_relations():
    T = build_tau(groups.s3(), 2).pres
    assert is_consistent(T)
    assert evaluate(T, "g1^-1*g2_phi*g1") == evaluate(T, "g2_phi*w^2")
    T = build_tau(groups.dinf(), 2).pres
    assert is_consistent(T)
    assert evaluate(T, "g2^-1*g1_phi*g2") == evaluate(T, "g1_phi*w1*w3")


@criterion(7)
def test_criterion_07_nu_s3():
    nu = build_nu(groups.s3(), 2)
    assert _order(nu.pres) == 432
    assert structure.describe(nu.tensor_pres).display == "C12"
    assert structure.describe(diagonal(nu)).display == "C2"


@criterion(8)
def test_criterion_08_nu_cube_dinf():
    nu = build_nu(groups.dinf(), 3)
    assert structure.matches_presentation(nu.tensor_pres, groups.dinf()) == "yes"


def _derived_times_powers(G, q):
    n = G.n
    gens = [G.comm(G.gen(i), G.gen(j)) for i in range(n) for j in range(i + 1, n)]
    gens += [G.pow(G.gen(i), q) for i in range(n)]
    return induced_sequence(G, gens)


@criterion(9)
def test_criterion_09_property_suite():
    for (label, G), q in itertools.product(CORPUS, range(4)):
        ctx = build_wedge(G, q)
        nu = build_nu(G, q, build_tau(G, q, ctx))
        if G.is_finite:
            assert ctx.W.order() == h2_sequence(ctx).order() * _derived_times_powers(G, q).order(), (label, q)
            assert _order(nu.pres) == _order(G) ** 2 * _order(nu.tensor_pres), (label, q)
        if q == 1:
            W = ctx.wedge_pres
            assert _order(W) == _order(G), label
            assert structure.abelianization(W) == structure.abelianization(G), label
            if G.is_abelian:
                assert structure.is_isomorphic_abelian(W, G), label
        for P in (ctx.cover.E, ctx.wedge_pres, h2(ctx), nu.tau.pres, nu.pres, nu.tensor_pres, diagonal(nu)):
            assert is_consistent(P), (label, q)
        assert biderivation_failures(ctx, random_triples(G, random.Random(q))) == [], (label, q)


@criterion(10)
def test_criterion_10_oracles():
    for label, G in CORPUS:
        if G.is_abelian:
            inv = structure.abelianization(G)
            assert structure.abelianization(build_nu(G, 0).tensor_pres) == oracle.abelian_tensor(inv, inv), label
    for n, q in itertools.product(range(1, 13), range(1, 7)):
        W = build_wedge(groups.cyclic(n), q).wedge_pres
        assert structure.abelianization(W) == ([n] if n > 1 else []), (n, q)
    for (label, G), q in itertools.product(FINITE, range(4)):
        E = cover(G, q).E
        if not E.is_finite:
            continue
        Z = center(E)
        expected = oracle.center_by_generators(E)
        got = [x for x in itertools.product(*[range(e) for e in E.orders]) if Z.contains(x)]
        assert got == expected, (label, q)


@criterion(11)
def test_criterion_11_q_perfect_shortcut():
    for n, q in ((3, 2), (5, 2), (5, 3)):
        G = groups.cyclic(n)
        a = build_nu(G, q).tensor_pres
        b = build_nu_qperfect(G, q).tensor_pres
        assert _order(a) == _order(b)
        assert structure.is_isomorphic_abelian(a, b)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
