import random

import pytest

from qpc import groups

CORPUS = groups.corpus()
FINITE = [(label, G) for label, G in CORPUS if G.is_finite]

ACCEPTANCE = {}


def random_element(G, rng, box=3):
    """A random normal form; infinite coordinates are drawn from [-box, box]."""
    return tuple(rng.randrange(e) if e else rng.randint(-box, box) for e in G.orders)


def random_word(G, rng, length=6, box=3):
    return [(rng.randrange(G.n), rng.randint(-box, box)) for _ in range(length)]


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, elapsed = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s)")


def biderivation_failures(ctx, triples):
    """Names of the biderivation laws violated on the given element tuples.

    Each tuple holds six elements (g, g1, h, h1, k, k1) of the base group.
    """
    G, E, q = ctx.G, ctx.E, ctx.q
    from qpc.qwedge import lambda_element as lam
    one = G.identity()
    failed = set()
    for g, g1, h, h1, k, k1 in triples:
        if lam(ctx, G.mul(g, g1), h, k) != E.mul(lam(ctx, G.conj(g, g1), G.conj(h, g1), one),
                                                 lam(ctx, g1, h, k)):
            failed.add("left product")
        if lam(ctx, g, G.mul(h, h1), k) != E.mul(lam(ctx, g, h1, one),
                                                 lam(ctx, G.conj(g, h1), G.conj(h, h1), k)):
            failed.add("right product")
        kq = G.pow(k, q)
        if E.conj(lam(ctx, g, h, one), lam(ctx, one, one, k)) != \
                lam(ctx, G.conj(g, kq), G.conj(h, kq), one):
            failed.add("hat action")
        expected = lam(ctx, one, one, k)
        for i in range(1, q):
            expected = E.mul(expected, lam(ctx, k, G.conj(G.pow(k1, -i), G.pow(k, q - 1 - i)), one))
        expected = E.mul(expected, lam(ctx, one, one, k1))
        if lam(ctx, one, one, G.mul(k, k1)) != expected:
            failed.add("hat of product")
        if E.comm(lam(ctx, one, one, k), lam(ctx, one, one, k1)) != \
                lam(ctx, G.pow(k, q), G.pow(k1, q), one):
            failed.add("hat commutator")
        if lam(ctx, one, one, G.comm(g, h)) != E.pow(lam(ctx, g, h, one), q):
            failed.add("hat of commutator")
    return sorted(failed)


def random_triples(G, rng, count=100):
    return [tuple(random_element(G, rng) for _ in range(6)) for _ in range(count)]
