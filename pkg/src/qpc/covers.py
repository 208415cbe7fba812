"""Central tail extensions and the consistent cover E_q(G).

``attach_tails`` appends one central generator per relation, ``r = t``,
with ``t^q = 1`` (``q = 0`` leaves it free). ``enforce_consistency`` then
forces the relations among tails implied by the overlap tests, changes the
tail basis through a Smith normal form and drops tails of order one.
"""

from dataclasses import dataclass, field

from . import zlinalg
from .consistency import consistency_report
from .errors import PreconditionError, VerificationError
from .expr import evaluate
from .pc import PcPresentation, from_vectors


@dataclass
class TailedPresentation:
    base: PcPresentation
    q: int
    pres: PcPresentation          # base generators followed by the tails
    tails: list                   # tail generator indices in ``pres``
    tail_of_relator: dict         # relation key -> tail index
    relators: list                # relation keys of the base, canonical order

    @property
    def first_tail(self):
        return self.base.n


@dataclass
class ConsistentCover:
    base: PcPresentation
    q: int
    E: PcPresentation
    tail_indices: list            # indices of surviving tails in E
    tail_orders: list             # their orders (0 = infinite)
    transform: list               # old tail coordinates x map to x @ transform
    tailed: TailedPresentation = field(repr=False, default=None)

    @property
    def n(self):
        return self.base.n

    @property
    def first_tail(self):
        return self.base.n

    def pi(self, x):
        """Projection onto the base group."""
        return tuple(x[: self.base.n])

    def lift(self, i):
        return self.E.gen(i)

    def lift_element(self, x):
        """The canonical preimage of a base normal form (tails zero)."""
        return tuple(x) + (0,) * (self.E.n - self.base.n)

    def tail_part(self, x):
        return tuple(x[self.base.n:])


def _fresh_prefix(names, prefix):
    taken = set(names)
    while any(f"{prefix}{k}" in taken for k in range(1, len(names) + 40)):
        prefix += "_"
    return prefix


def attach_tails(pres, q, skip=(), prefix="t"):
    if q < 0:
        raise PreconditionError("q must be nonnegative")
    skip = set(skip)
    n = pres.n
    relators = pres.relators()
    prefix = _fresh_prefix(pres.names, prefix)
    tail_of = {}
    for key in relators:
        if key not in skip:
            tail_of[key] = n + len(tail_of)
    m = len(tail_of)
    orders = list(pres.orders) + [q] * m
    names = list(pres.names) + [f"{prefix}{k + 1}" for k in range(m)]
    powers, conjs, cinvs = {}, {}, {}
    for key in relators:
        kind, i, j = key
        w = tuple(pres.relation_rhs(key))
        if key in tail_of:
            w = w + ((tail_of[key], 1),)
        if kind == "pow":
            powers[i] = w
        elif kind == "conj":
            conjs[(i, j)] = w
        else:
            cinvs[(i, j)] = w
    big = PcPresentation(orders, powers, conjs, cinvs, names=names, group=pres.group,
                         step_budget=pres.step_budget)
    return TailedPresentation(pres, q, big, list(range(n, n + m)), tail_of, relators)


def _rebase_central(pres, start, extra_rows, names=None):
    """Quotient of ``pres`` by extra relations among a central abelian bottom block.

    Generators ``start..n-1`` must be central and generate an abelian
    subgroup. ``extra_rows`` are integer vectors over that block which
    become trivial. Returns ``(new_pres, project, orders, Q)``; ``project``
    maps an old normal form to the new one.
    """
    n = pres.n
    m = n - start
    rows = [list(r) for r in extra_rows]
    for s in range(start, n):
        e = pres.orders[s]
        if e:
            rhs = pres._power_vec(s)
            if any(rhs[:start]):
                raise PreconditionError("bottom block is not closed under powers")
            row = [-x for x in rhs[start:]]
            row[s - start] += e
            rows.append(row)
    orders, Q = zlinalg.quotient_structure(rows, m)
    keep = [k for k, d in enumerate(orders) if d != 1]

    def project_tail(x):
        y = [0] * m
        for a, xa in enumerate(x):
            if xa:
                qa = Q[a]
                for k in range(m):
                    if qa[k]:
                        y[k] += xa * qa[k]
        return [y[k] % orders[k] if orders[k] else y[k] for k in keep]

    def project(v):
        return tuple(v[:start]) + tuple(project_tail(v[start:]))

    if names is None:
        names = _tail_names(pres, start, Q, keep)
    new_orders = list(pres.orders[:start]) + [orders[k] for k in keep]
    powers, conjs, cinvs = {}, {}, {}
    for i in range(start):
        if pres.orders[i]:
            powers[i] = project(pres._power_vec(i))
        for j in range(i):
            conjs[(i, j)] = project(pres._conj_table(i, j, 1))
            if pres.orders[j] == 0:
                cinvs[(i, j)] = project(pres._conj_table(i, j, -1))
    new = from_vectors(new_orders, list(pres.names[:start]) + names, powers, conjs, cinvs,
                       group=pres.group)
    new.step_budget = pres.step_budget
    return new, project, [orders[k] for k in keep], Q


def _tail_names(pres, start, Q, keep):
    """Keep an old name when a new basis element is an old generator."""
    m = pres.n - start
    inv = _unimodular_inverse(Q) if m else []
    prefix = _fresh_prefix(pres.names[:start], "t")
    used = set()
    out = []
    for k in keep:
        row = inv[k]
        nz = [a for a in range(m) if row[a]]
        if len(nz) == 1 and row[nz[0]] == 1 and pres.names[start + nz[0]] not in used:
            name = pres.names[start + nz[0]]
        else:
            c = 1
            while f"{prefix}{c}" in used or f"{prefix}{c}" in pres.names:
                c += 1
            name = f"{prefix}{c}"
        used.add(name)
        out.append(name)
    return out


def _unimodular_inverse(Q):
    m = len(Q)
    aug = [list(Q[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    h, _ = zlinalg.hermite_normal_form(aug)
    if any(h[i][i] != 1 for i in range(m)):
        raise VerificationError("transform is not unimodular")
    return [row[m:] for row in h]


def enforce_consistency(tp):
    """Turn a tailed presentation into the consistent cover."""
    pres = tp.pres
    start = tp.first_tail
    m = len(tp.tails)
    rows = []
    for entry in consistency_report(pres, active=range(start)):
        if entry.kind == "nonterminating":
            raise VerificationError("collection did not terminate in the tailed presentation")
        # both sides are normal forms u*t^a and u*t^b with central tails,
        # so the relation is t^(a-b) = 1 (the collector is not yet reliable)
        if entry.left[:start] != entry.right[:start]:
            raise PreconditionError(
                f"overlap {entry.kind} {entry.indices} differs outside the tails; base is inconsistent")
        rows.append([a - b for a, b in zip(entry.left[start:], entry.right[start:])])
    # tails are central, so the tail order q is the only other relation
    new, _, orders, Q = _rebase_central(pres, start, rows)
    for d in orders:
        if tp.q and d and tp.q % d:
            raise VerificationError(f"tail order {d} does not divide q={tp.q}")
        if tp.q and not d:
            raise VerificationError("infinite tail with q > 0")
    report = consistency_report(new, active=range(start))
    if report:
        raise VerificationError("enforced cover failed its consistency check")
    return ConsistentCover(tp.base, tp.q, new, list(range(start, new.n)), orders,
                           Q if m else [], tp)


def cover(pres, q, skip=()):
    return enforce_consistency(attach_tails(pres, q, skip))


def evaluate_in_cover(cov, relator, env=None):
    """Tail coordinates of a relator's value in the cover."""
    if isinstance(relator, str) or (relator and isinstance(relator[0], str)):
        v = evaluate(cov.E, relator, env)
    else:
        v = tuple(relator)
    if any(v[: cov.first_tail]):
        raise PreconditionError("relator value is not central: it has a nontrivial base part")
    return tuple(v[cov.first_tail:])


def quotient_by_central(pres, start, elements):
    """``pres`` modulo central elements lying in the bottom block from ``start``."""
    rows = []
    for x in elements:
        if any(x[:start]):
            raise PreconditionError("element is outside the central bottom block")
        rows.append(list(x[start:]))
    return _rebase_central(pres, start, rows)


def central_quotient(cov, subgrp_gens, ambient=None):
    """Presentation of ``ambient`` (default: all of E) modulo central tail elements.

    Returns ``(presentation, project)`` where ``project`` maps an element of
    the ambient subgroup, given as a normal form of E, to the quotient.
    """
    if ambient is None:
        new, proj, _, _ = quotient_by_central(cov.E, cov.first_tail, subgrp_gens)
        return new, proj
    from .subgrp import express, subgroup_presentation
    sub, _ = subgroup_presentation(ambient)
    start = next((k for k, x in enumerate(ambient.members) if ambient.depths[k] >= cov.first_tail),
                 len(ambient.members))
    coords = []
    for x in subgrp_gens:
        c = express(ambient, x)
        if c is None:
            raise PreconditionError("quotient generator is outside the ambient subgroup")
        coords.append(c)
    new, proj, _, _ = quotient_by_central(sub, start, coords)

    def project(x):
        c = express(ambient, x)
        if c is None:
            raise PreconditionError("element is outside the ambient subgroup")
        return proj(c)

    return new, project
