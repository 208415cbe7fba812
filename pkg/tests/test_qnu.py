import itertools
import random

import pytest

from conftest import CORPUS, FINITE, random_element
from qpc import groups, structure
from qpc.consistency import is_consistent
from qpc.errors import PreconditionError
from qpc.expr import evaluate
from qpc.qnu import (build_nu, build_nu_qperfect, build_tau, diagonal, is_q_perfect,
                     nu_relator_instances, rho, rho_image)


def all_instances(G, q):
    """Every relator instance over all group elements, for finite G."""
    els = [tuple(v) for v in itertools.product(*[range(e) for e in G.orders])]
    out = []
    for g, h in itertools.product(els, repeat=2):
        for k in els:
            out += [("nu1", (g, h, k)), ("nu2", (g, h, k))]
            if q:
                out.append(("RR3", (g, h, k)))
        if q:
            out += [(fam, (g, h)) for fam in ("RR1", "RR2", "RR4", "RR5", "RR6")]
    return out


def test_tau_s3():
    tau = build_tau(groups.s3(), 2)
    T = tau.pres
    assert is_consistent(T)
    assert evaluate(T, "g2_phi^g1") == evaluate(T, "g2_phi*w^2")


def test_tau_dinf():
    tau = build_tau(groups.dinf(), 2)
    T = tau.pres
    assert is_consistent(T)
    assert evaluate(T, "g1_phi^g2") == evaluate(T, "g1_phi*w1*w3")


@pytest.mark.parametrize("label,G", CORPUS)
@pytest.mark.parametrize("q", [0, 2, 3])
def test_tau_is_consistent(label, G, q):
    assert is_consistent(build_tau(G, q).pres)


def test_nu_s3():
    nu = build_nu(groups.s3(), 2)
    assert structure.order(nu.pres) == 432
    assert structure.describe(nu.tensor_pres).display == "C12"
    assert structure.describe(diagonal(nu)).display == "C2"


def test_nu_dinf_cube():
    nu = build_nu(groups.dinf(), 3)
    assert structure.matches_presentation(nu.tensor_pres, groups.dinf()) == "yes"


def test_nu_zero_of_c2():
    nu = build_nu(groups.cyclic(2), 0)
    assert structure.order(nu.pres) == 8
    assert structure.describe(diagonal(nu)).display == "C2"


@pytest.mark.parametrize("label,G", FINITE)
@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_nu_order_decomposition(label, G, q):
    nu = build_nu(G, q)
    assert is_consistent(nu.pres)
    assert is_consistent(nu.tensor_pres)
    assert structure.order(nu.pres) == structure.order(G) ** 2 * structure.order(nu.tensor_pres)
    D = diagonal(nu)
    assert structure.order(nu.tensor_pres) == structure.order(D) * nu.tau.ctx.W.order()


@pytest.mark.parametrize("label", ["C2", "C4", "C2xC2", "S3", "D8", "Q8"])
@pytest.mark.parametrize("q", [0, 2, 3])
def test_instance_list_is_complete(label, q):
    G = groups.by_name(label)
    assert structure.order(build_nu(G, q).pres) == \
        structure.order(build_nu(G, q, instances=all_instances(G, q)).pres)


@pytest.mark.parametrize("q", [0, 2, 3])
def test_random_dinf_instances_add_nothing(q):
    G = groups.dinf()
    rng = random.Random(q)
    extra = []
    for _ in range(40):
        g, h, k = (random_element(G, rng) for _ in range(3))
        extra += [("nu1", (g, h, k)), ("nu2", (g, h, k))]
        if q:
            extra += [("RR3", (g, h, k))] + [(f, (g, h)) for f in ("RR1", "RR2", "RR4", "RR5", "RR6")]
    base = build_nu(G, q)
    more = build_nu(G, q, instances=nu_relator_instances(G, q) + extra)
    assert base.pres.orders == more.pres.orders
    assert structure.abelianization(base.tensor_pres) == structure.abelianization(more.tensor_pres)


@pytest.mark.parametrize("n,q", [(3, 2), (5, 2), (5, 3)])
def test_q_perfect_shortcut(n, q):
    G = groups.cyclic(n)
    assert is_q_perfect(G, q)
    a = build_nu(G, q).tensor_pres
    b = build_nu_qperfect(G, q).tensor_pres
    assert structure.is_isomorphic_abelian(a, b)


def test_shortcut_refuses_non_perfect():
    with pytest.raises(PreconditionError):
        build_nu_qperfect(groups.s3(), 2)


def test_rho():
    G = groups.s3()
    nu = build_nu(G, 2)
    P = nu.pres
    g1, g2phi = nu.images_g[0], nu.images_phi[1]
    assert rho(nu, P.comm(g1, g2phi)) == (0, 2)
    assert rho(nu, nu.images_hat[1]) == (0, 2)
    image = rho_image(nu)
    assert image.order() == 3 and image.contains((0, 1))
