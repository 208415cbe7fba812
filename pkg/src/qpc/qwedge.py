"""The q-exterior square through the cover E_q(G).

Inside E = E_q(G) the subgroup W generated by the commutators of lifted
generators and their q-th powers is the q-exterior square; its intersection
with the tail subgroup is H_2(G, Z_q). The q-biderivation is evaluated
directly in E as ``(g, h, k) -> [g~, h~] (k~)^q``.
"""

from dataclasses import dataclass

from .covers import ConsistentCover, cover
from .expr import evaluate
from .pc import PcPresentation
from .subgrp import (InducedSequence, SubgroupPresentation, center, induced_sequence,
                     subgroup_presentation, tail_intersection)


@dataclass
class WedgeContext:
    G: PcPresentation
    q: int
    cover: ConsistentCover
    W: InducedSequence
    sub: SubgroupPresentation

    @property
    def E(self):
        return self.cover.E

    @property
    def wedge_pres(self):
        return self.sub.pres

    def embed(self, coords):
        """Wedge coordinates to an element of the cover."""
        return self.sub.to_parent(coords)

    def coords(self, x):
        """Cover element of W to wedge coordinates."""
        c = self.sub.from_parent(x)
        if c is None:
            raise ValueError("element of the cover is not in the wedge subgroup")
        return c

    def lift(self, x):
        """Canonical lift of a G element (normal form, word or expression)."""
        return self.cover.lift_element(as_element(self.G, x))

    def beta(self, g, h):
        """The cover element [g~, h~] representing g ^ h."""
        E = self.E
        return E.comm(self.lift(g), self.lift(h))

    def hat(self, k):
        """The cover element (k~)^q representing the hat of k."""
        return self.E.pow(self.lift(k), self.q)


def as_element(pres, x):
    if x is None:
        return pres.identity()
    if isinstance(x, str):
        return evaluate(pres, x)
    x = tuple(x)
    if x and isinstance(x[0], tuple):
        return pres.collect(x)
    if x and isinstance(x[0], str):
        return evaluate(pres, x)
    if len(x) != pres.n:
        raise ValueError("element has the wrong length")
    return x


def build_wedge(G, q, cov=None):
    cov = cov or cover(G, q)
    E = cov.E
    n = G.n
    lifts = [E.gen(i) for i in range(n)]
    comms = [E.comm(lifts[i], lifts[j]) for i in range(n) for j in range(i + 1, n)]
    powers = [E.pow(x, q) for x in lifts]
    W = induced_sequence(E, comms + powers)
    # prefer a single lambda value as generator when W is cyclic
    prefer = [E.mul(c, p) for c in comms for p in powers] + comms + powers
    prefer = [x for x in prefer if any(x)]
    sub = subgroup_presentation(W, prefer=prefer, group=f"{G.group or 'G'}^{q}")
    return WedgeContext(G, q, cov, W, sub)


def h2(ctx):
    """Presentation of W intersected with the tail subgroup."""
    T = tail_intersection(ctx.W, ctx.cover.first_tail)
    return subgroup_presentation(T, names="u", group=f"H2({ctx.G.group or 'G'},Z{ctx.q})").pres


def h2_sequence(ctx):
    return tail_intersection(ctx.W, ctx.cover.first_tail)


def lambda_element(ctx, g, h, k):
    E = ctx.E
    return E.mul(ctx.beta(g, h), ctx.hat(k))


def lambda_eval(ctx, g, h, k):
    """Wedge coordinates of [g~, h~] (k~)^q."""
    return ctx.coords(lambda_element(ctx, g, h, k))


def wedge_action(ctx, w, x):
    """Coordinates of the wedge element ``w`` conjugated by the lift of x."""
    E = ctx.E
    y = E.conj(ctx.embed(w), ctx.lift(x))
    return ctx.coords(y)


def exterior_center_from_cover(cov):
    Z = center(cov.E)
    G = cov.base
    return induced_sequence(G, [cov.pi(z) for z in Z.members])


def exterior_center(G, q):
    """Image in G of the center of E_q(G)."""
    return exterior_center_from_cover(cover(G, q))


def is_q_capable(G, q):
    return exterior_center(G, q).is_trivial()
