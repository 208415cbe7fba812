"""Overlap tests deciding whether a presentation is consistent."""

from dataclasses import dataclass

from .errors import CollectionBudgetExceeded, InconsistentPresentation
from .pc import vector_to_word


@dataclass(frozen=True)
class ConsistencyEntry:
    kind: str
    indices: tuple
    left: tuple
    right: tuple
    discrepancy: tuple   # normal form of left * right^-1, as a word


def overlap_pairs(pres, active=None):
    """Yield (kind, indices, left, right) for every overlap test.

    ``active`` restricts the tests to a subset of generator indices (the
    other generators are assumed central and already consistent).
    """
    gens = sorted(active) if active is not None else list(range(pres.n))
    g = {i: pres.gen(i) for i in gens}
    mul = pres.mul
    orders = pres.orders
    for a, i in enumerate(gens):
        for b in range(a + 1, len(gens)):
            j = gens[b]
            for c in range(b + 1, len(gens)):
                k = gens[c]
                yield "associative", (k, j, i), mul(mul(g[k], g[j]), g[i]), mul(g[k], mul(g[j], g[i]))
    for a, i in enumerate(gens):
        for j in gens[a + 1:]:
            if orders[j]:
                yield ("power-left", (j, i), mul(pres._power_vec(j), g[i]),
                       mul(pres.gen(j, orders[j] - 1), mul(g[j], g[i])))
            if orders[i]:
                yield ("power-right", (j, i), mul(mul(g[j], pres.gen(i, orders[i] - 1)), g[i]),
                       mul(g[j], pres._power_vec(i)))
            else:
                gi_inv = pres.gen(i, -1)
                yield "inverse", (j, i), g[j], mul(mul(g[j], gi_inv), g[i])
                yield "inverse", (j, i), g[j], mul(mul(g[j], g[i]), gi_inv)
                if not orders[j]:
                    gj_inv = pres.gen(j, -1)
                    yield "inverse", (j, i), gj_inv, mul(mul(gj_inv, gi_inv), g[i])
    for i in gens:
        if orders[i]:
            p = pres._power_vec(i)
            yield "power-self", (i,), mul(p, g[i]), mul(g[i], p)


def consistency_report(pres, active=None):
    """List of failing overlap tests; empty iff the presentation is consistent."""
    out = []
    try:
        for kind, idx, left, right in overlap_pairs(pres, active):
            if left != right:
                d = pres.mul(left, pres.inv(right))
                out.append(ConsistencyEntry(kind, idx, left, right, vector_to_word(d)))
    except CollectionBudgetExceeded:
        out.append(ConsistencyEntry("nonterminating", (), (), (), ()))
    return out


def is_consistent(pres):
    return not consistency_report(pres)


def require_consistent(pres, what="presentation"):
    report = consistency_report(pres)
    if report:
        raise InconsistentPresentation(f"{what} is inconsistent ({len(report)} failing overlaps)", report)
    return pres


def format_report(pres, report):
    lines = []
    for e in report:
        idx = ",".join(pres.names[i] for i in e.indices)
        lines.append(f"{e.kind} ({idx}): {pres.format_element(e.left)} != "
                     f"{pres.format_element(e.right)}; discrepancy "
                     + (pres.format_element(_vec(pres, e.discrepancy)) if e.discrepancy else "?"))
    return "\n".join(lines) + ("\n" if lines else "")


def _vec(pres, word):
    v = [0] * pres.n
    for g, a in word:
        v[g] = a
    return tuple(v)
