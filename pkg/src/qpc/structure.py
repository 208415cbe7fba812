"""Isomorphism invariants of polycyclically presented groups."""

import itertools
import math
from dataclasses import dataclass

from . import zlinalg
from .errors import PreconditionError
from .subgrp import induced_sequence

INFINITE = math.inf


def order(pres):
    """Group order, or ``math.inf``."""
    total = 1
    for e in pres.orders:
        if e == 0:
            return INFINITE
        total *= e
    return total


def hirsch_length(pres):
    return sum(1 for e in pres.orders if e == 0)


def relation_matrix(pres):
    """Exponent-sum matrix of all relations, one row per relation."""
    n = pres.n
    rows = []
    for key in pres.relators():
        kind, i, _ = key
        row = [0] * n
        if kind == "pow":
            row[i] += pres.orders[i]
        else:
            row[i] += 1
        for g, a in pres.relation_rhs(key):
            row[g] -= a
        if any(row):
            rows.append(row)
    return rows


def abelianization(pres):
    """Invariant factors of G/G' (0 for a free factor)."""
    return zlinalg.abelian_invariants(relation_matrix(pres), pres.n)


def is_abelian(pres):
    return pres.is_abelian


def is_isomorphic_abelian(p1, p2):
    for p in (p1, p2):
        if not p.is_abelian:
            raise PreconditionError("is_isomorphic_abelian needs abelian presentations")
    return abelianization(p1) == abelianization(p2)


def format_invariants(inv):
    if not inv:
        return "1"
    return " x ".join(f"C{d}" if d else "Z" for d in inv)


@dataclass(frozen=True)
class StructureDescription:
    order: object
    hirsch: int
    abelianization: tuple
    abelian: bool
    invariants_if_abelian: tuple

    @property
    def display(self):
        if self.abelian:
            return format_invariants(self.invariants_if_abelian)
        ab = format_invariants(self.abelianization)
        if self.order == INFINITE:
            return f"infinite, hirsch {self.hirsch}, ab = {ab}"
        return f"order {self.order}, ab = {ab}"

    def as_dict(self):
        return {
            "order": "infinite" if self.order == INFINITE else self.order,
            "hirsch": self.hirsch,
            "abelianization": list(self.abelianization),
            "abelian": self.abelian,
            "invariants": list(self.invariants_if_abelian) if self.abelian else None,
            "display": self.display,
        }


def describe(pres):
    ab = tuple(abelianization(pres))
    abelian = pres.is_abelian
    return StructureDescription(order(pres), hirsch_length(pres), ab, abelian,
                                ab if abelian else ())


# ------------------------------------------------------ isomorphism search

def _index(pres, big, small):
    """[big : small] for induced sequences with small <= big; 0 if infinite."""
    bd = dict(zip(big.depths, big.leads()))
    sd = dict(zip(small.depths, small.leads()))
    total = 1
    for d, a in bd.items():
        e = pres.orders[d]
        if d in sd:
            total *= sd[d] // a
        elif e:
            total *= e // a
        else:
            return 0
    return total


def _candidates(pres, box):
    ranges = [range(e) if e else range(-box, box + 1) for e in pres.orders]
    cands = [tuple(v) for v in itertools.product(*ranges)]
    cands.sort(key=lambda v: (sum(abs(a) for a in v), [abs(a) for a in v], v))
    return cands


def matches_presentation(p1, p2, bound=200_000, box=2):
    """Decide whether p1 is isomorphic to the group presented by p2.

    Searches images of p2's generators in p1 that satisfy p2's relations and
    generate p1; injectivity is certified layer by layer. Returns "yes",
    "no" or "unknown" (budget exhausted or bounded search of an infinite
    group).
    """
    if order(p1) != order(p2) or hirsch_length(p1) != hirsch_length(p2):
        return "no"
    if abelianization(p1) != abelianization(p2):
        return "no"
    if p1.is_abelian != p2.is_abelian:
        return "no"
    if p1.is_abelian:
        return "yes"
    n = p2.n
    cands = _candidates(p1, box)
    exhaustive = p1.is_finite
    budget = [bound]
    imgs = [None] * n

    def word_image(word):
        return p1.mul(p1.identity(), *[p1.pow(imgs[g], a) for g, a in word])

    def ok(j):
        x = imgs[j]
        if p2.orders[j] and p1.pow(x, p2.orders[j]) != word_image(p2.power_rhs(j)):
            return False
        for i in range(j + 1, n):
            if p1.conj(imgs[i], x) != word_image(p2.conj_rhs(i, j)):
                return False
            if not p2.orders[j]:
                if p1.conj(imgs[i], p1.inv(x)) != word_image(p2.cinv_rhs(i, j)):
                    return False
        return True

    def certified():
        seqs = [induced_sequence(p1, imgs[k:]) for k in range(n + 1)]
        if _index(p1, induced_sequence(p1, [p1.gen(i) for i in range(p1.n)]), seqs[0]) != 1:
            return False
        for k in range(n):
            idx = _index(p1, seqs[k], seqs[k + 1])
            if idx != p2.orders[k]:
                return False
        return True

    def search(j):
        if j < 0:
            return certified()
        for x in cands:
            budget[0] -= 1
            if budget[0] < 0:
                raise _Budget()
            if not any(x):
                continue
            imgs[j] = x
            if ok(j) and search(j - 1):
                return True
        imgs[j] = None
        return False

    try:
        found = search(n - 1)
    except _Budget:
        return "unknown"
    if found:
        return "yes"
    return "no" if exhaustive else "unknown"


class _Budget(Exception):
    pass
