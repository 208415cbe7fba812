"""The groups tau^q(G) and nu^q(G) and the q-tensor square.

tau^q(G) is presented on g_1..g_n, copies g_1^phi..g_n^phi and the wedge
generators w_1..w_r. nu^q(G) is obtained from the cover of tau^q(G) (tails
only on the relations that involve both copies or the wedge) as the
subgroup L generated by g_i, g_i^phi and the hats, modulo the values of the
defining relators of nu^q(G), which are central tail elements there.
"""

from dataclasses import dataclass, field

from .consistency import consistency_report
from .covers import ConsistentCover, attach_tails, central_quotient, enforce_consistency
from .errors import InconsistentPresentation, PreconditionError, VerificationError
from .pc import PcPresentation, vector_to_word
from .qwedge import WedgeContext, build_wedge
from .subgrp import (InducedSequence, induced_sequence, subgroup_presentation)

FAMILY_G, FAMILY_PHI, FAMILY_WEDGE, FAMILY_CROSS, FAMILY_ACTION = 1, 2, 3, 4, 5


@dataclass
class TauPresentation:
    pres: PcPresentation
    ctx: WedgeContext
    relator_families: dict        # relation key of pres -> family number 1..5

    @property
    def n(self):
        return self.ctx.G.n

    @property
    def r(self):
        return self.ctx.wedge_pres.n

    def g(self, i, e=1):
        return self.pres.gen(i, e)

    def phi(self, i, e=1):
        return self.pres.gen(self.n + i, e)

    def from_g(self, x):
        """Element of G (normal form) into the G copy."""
        return self.pres.collect(vector_to_word(x))

    def from_phi(self, x):
        return self.pres.collect([(self.n + i, a) for i, a in vector_to_word(x)])

    def from_wedge(self, c):
        base = 2 * self.n
        return self.pres.collect([(base + i, a) for i, a in enumerate(c) if a])

    def wedge_part(self, x):
        return tuple(x[2 * self.n:])

    def to_G(self, x):
        """The map g -> g, g^phi -> g, w -> its commutator image in G."""
        G = self.ctx.G
        n = self.n
        a = tuple(x[:n])
        b = tuple(x[n:2 * n])
        c = ctx_pi(self.ctx, self.wedge_part(x))
        return G.mul(a, b, c)


def ctx_pi(ctx, coords):
    return ctx.cover.pi(ctx.embed(coords))


def _family(n, key):
    kind, i, j = key
    if i < n and (kind == "pow" or j < n):
        return FAMILY_G
    if i < 2 * n:
        if kind == "pow" or j >= n:
            return FAMILY_PHI
        return FAMILY_CROSS
    if kind == "pow" or j >= 2 * n:
        return FAMILY_WEDGE
    return FAMILY_ACTION


def build_tau(G, q, ctx=None):
    ctx = ctx or build_wedge(G, q)
    n = G.n
    Wp = ctx.wedge_pres
    r = Wp.n
    base = 2 * n
    orders = list(G.orders) * 2 + list(Wp.orders)
    names = ([f"{nm}" for nm in G.names] + [f"{nm}_phi" for nm in G.names]
             + [_wedge_name(Wp, k) for k in range(r)])
    powers, conjs, cinvs = {}, {}, {}

    def shift(word, off):
        return tuple((g + off, a) for g, a in word)

    def wword(coords):
        return tuple((base + k, a) for k, a in enumerate(coords) if a)

    for i in range(n):
        if G.orders[i]:
            w = vector_to_word(G._power_vec(i))
            powers[i] = w
            powers[n + i] = shift(w, n)
        for j in range(i):
            conjs[(i, j)] = vector_to_word(G._conj_table(i, j, 1))
            conjs[(n + i, n + j)] = shift(conjs[(i, j)], n)
            if not G.orders[j]:
                cinvs[(i, j)] = vector_to_word(G._conj_table(i, j, -1))
                cinvs[(n + i, n + j)] = shift(cinvs[(i, j)], n)
    for k in range(r):
        if Wp.orders[k]:
            powers[base + k] = shift(vector_to_word(Wp._power_vec(k)), base)
        for m in range(k):
            conjs[(base + k, base + m)] = shift(vector_to_word(Wp._conj_table(k, m, 1)), base)
            if not Wp.orders[m]:
                cinvs[(base + k, base + m)] = shift(vector_to_word(Wp._conj_table(k, m, -1)), base)
    E = ctx.E
    for i in range(n):
        gi = G.gen(i)
        for j in range(n):
            gj = G.gen(j)
            lam = ctx.coords(E.inv(E.comm(ctx.lift(gi), ctx.lift(gj))))
            conjs[(n + j, i)] = ((n + j, 1),) + wword(lam)
            if not G.orders[i]:
                gi_inv = G.gen(i, -1)
                lam = ctx.coords(E.inv(E.comm(ctx.lift(gi_inv), ctx.lift(gj))))
                cinvs[(n + j, i)] = ((n + j, 1),) + wword(lam)
        for k in range(r):
            unit = tuple(int(a == k) for a in range(r))
            act = wword(_act(ctx, unit, gi))
            conjs[(base + k, i)] = act
            conjs[(base + k, n + i)] = act
            if not G.orders[i]:
                act = wword(_act(ctx, unit, G.gen(i, -1)))
                cinvs[(base + k, i)] = act
                cinvs[(base + k, n + i)] = act
    pres = PcPresentation(orders, powers, conjs, cinvs, names=names,
                          group=f"tau^{q}({G.group or 'G'})")
    report = consistency_report(pres)
    if report:
        raise InconsistentPresentation("tau presentation failed its consistency check", report)
    families = {key: _family(n, key) for key in pres.relators()}
    return TauPresentation(pres, ctx, families)


def _wedge_name(Wp, k):
    return Wp.names[k]


def _act(ctx, coords, x):
    E = ctx.E
    return ctx.coords(E.conj(ctx.embed(coords), ctx.lift(x)))


# --------------------------------------------------------------------- nu

class _Symbols:
    """Evaluation of nu^q(G) symbols inside a group containing tau's copies.

    ``pres`` is either tau or its cover; in the cover the canonical lift of a
    tau normal form is used for the hat generators.
    """

    def __init__(self, tau, pres, q):
        self.tau = tau
        self.P = pres
        self.q = q
        self.G = tau.ctx.G
        self.n = tau.n
        ctx = tau.ctx
        pad = (0,) * (pres.n - tau.pres.n)
        self._hat_gen = []
        for i in range(self.n):
            lam = ctx.coords(ctx.hat(self.G.gen(i)))
            self._hat_gen.append(tuple(tau.from_wedge(lam)) + pad)
        self._pad = pad
        self._hat_cache = {}

    def g(self, x):
        return self.P.collect(vector_to_word(x))

    def phi(self, x):
        return self.P.collect([(self.n + i, a) for i, a in vector_to_word(x)])

    def comm_gphi(self, g, h):
        """[g, h^phi]"""
        return self.P.comm(self.g(g), self.phi(h))

    def hat_gen(self, i):
        return self._hat_gen[i]

    def peel(self, k, k1):
        """prod_{i=1}^{q-1} [k, (k1^-i)^phi]^(k^(q-1-i))"""
        G, P = self.G, self.P
        out = P.identity()
        for i in range(1, self.q):
            c = P.comm(self.g(k), self.phi(G.pow(k1, -i)))
            out = P.mul(out, P.conj(c, self.g(G.pow(k, self.q - 1 - i))))
        return out

    def hat(self, k):
        """Canonical hat of a G element by left-peeling its normal form."""
        k = tuple(k)
        hit = self._hat_cache.get(k)
        if hit is not None:
            return hit
        G, P = self.G, self.P
        if not any(k):
            val = P.identity()
        else:
            i = G.depth(k)
            if k[i] > 0:
                first = G.gen(i)
                rest = G.mul(G.gen(i, -1), k)
                val = P.mul(self.hat_gen(i), self.peel(first, rest), self.hat(rest))
            else:
                first = G.gen(i, -1)
                rest = G.mul(G.gen(i), k)
                gi = G.gen(i)
                inv_hat = P.inv(P.mul(self.hat_gen(i), self.peel(gi, first)))
                val = P.mul(inv_hat, self.peel(first, rest), self.hat(rest))
        self._hat_cache[k] = val
        return val


def _instance_elements(G):
    """Generators plus inverses of the generators of infinite order."""
    out = [G.gen(i) for i in range(G.n)]
    out += [G.gen(i, -1) for i in range(G.n) if not G.orders[i]]
    return out


def nu_relator_instances(G, q):
    """The finite list of relator instances as (family, (args...)) tuples.

    Arguments are normal forms of G. The families are ``nu1``/``nu2`` (the
    defining relations of nu(G) with conjugator k and k^phi) and ``RR1`` to
    ``RR6``.
    """
    gens = [G.gen(i) for i in range(G.n)]
    signed = _instance_elements(G)
    out = []
    for g in gens:
        for h in gens:
            for k in signed:
                out.append(("nu1", (g, h, k)))
                out.append(("nu2", (g, h, k)))
    if q == 0:
        return out
    for g in signed:
        for k in gens:
            out.append(("RR1", (g, k)))
            out.append(("RR2", (g, k)))
    for g in gens:
        for h in gens:
            for k in signed:
                out.append(("RR3", (g, h, k)))
    # second arguments include every power below the relative order, so that
    # products wrapping through a power relation are covered
    powers = list(signed)
    for j in range(G.n):
        powers += [G.gen(j, a) for a in range(2, G.orders[j])]
    for k in signed:
        for k1 in powers:
            out.append(("RR4", (k, k1)))
    for a in range(G.n):
        for b in range(a + 1, G.n):
            out.append(("RR5", (gens[a], gens[b])))
    for g in gens:
        for h in gens:
            out.append(("RR6", (g, h)))
    return out


def evaluate_relator(sym, family, args):
    G, P, q = sym.G, sym.P, sym.q
    if family in ("nu1", "nu2"):
        g, h, k = args
        kk = sym.g(k) if family == "nu1" else sym.phi(k)
        left = P.conj(sym.comm_gphi(g, h), kk)
        right = sym.comm_gphi(G.conj(g, k), G.conj(h, k))
        return P.mul(left, P.inv(right))
    if family in ("RR1", "RR2"):
        g, k = args
        gg = sym.g(g) if family == "RR1" else sym.phi(g)
        return P.mul(P.conj(sym.hat(k), gg), P.inv(sym.hat(G.conj(k, g))))
    if family == "RR3":
        g, h, k = args
        kq = G.pow(k, q)
        left = P.conj(sym.comm_gphi(g, h), sym.hat(k))
        return P.mul(left, P.inv(sym.comm_gphi(G.conj(g, kq), G.conj(h, kq))))
    if family == "RR4":
        k, k1 = args
        return P.mul(P.inv(sym.hat(k)), sym.hat(G.mul(k, k1)), P.inv(sym.hat(k1)),
                     P.inv(sym.peel(k, k1)))
    if family == "RR5":
        k, k1 = args
        return P.mul(P.comm(sym.hat(k), sym.hat(k1)),
                     P.inv(sym.comm_gphi(G.pow(k, q), G.pow(k1, q))))
    if family == "RR6":
        g, h = args
        return P.mul(sym.hat(G.comm(g, h)), P.pow(sym.comm_gphi(g, h), -q))
    raise ValueError(family)


@dataclass
class NuContext:
    G: PcPresentation
    q: int
    tau: TauPresentation
    pres: PcPresentation                  # nu^q(G)
    images_g: list
    images_phi: list
    images_hat: list
    upsilon: InducedSequence
    tensor_sub: object = None
    delta: InducedSequence = None
    psi: object = None                    # nu normal form -> tau normal form
    shortcut: bool = False
    cover: ConsistentCover = field(default=None, repr=False)
    instance_values: list = field(default=None, repr=False)

    @property
    def tensor_pres(self):
        return self.tensor_sub.pres


def _finish(G, q, tau, nu_pres, img_g, img_phi, img_hat, psi, shortcut, cov=None, values=None):
    P = nu_pres
    n = G.n
    tgens = [P.comm(img_g[i], img_phi[j]) for i in range(n) for j in range(n)]
    tgens += img_hat if q else []
    ups = induced_sequence(P, tgens)
    dgens = [P.comm(img_g[i], img_phi[i]) for i in range(n)]
    dgens += [P.mul(P.comm(img_g[i], img_phi[j]), P.comm(img_g[j], img_phi[i]))
              for i in range(n) for j in range(i + 1, n)]
    delta = induced_sequence(P, dgens)
    sub = subgroup_presentation(ups, names="x", group=f"{G.group or 'G'} (x)^{q} {G.group or 'G'}")
    return NuContext(G, q, tau, P, img_g, img_phi, img_hat, ups, sub, delta, psi, shortcut, cov, values)


def build_nu(G, q, tau=None, instances=None):
    tau = tau or build_tau(G, q)
    T = tau.pres
    n = G.n
    skip = [key for key, fam in tau.relator_families.items() if fam in (FAMILY_G, FAMILY_PHI)]
    cov = enforce_consistency(attach_tails(T, q, skip))
    E = cov.E
    sym = _Symbols(tau, E, q)
    L_gens = [E.gen(i) for i in range(2 * n)]
    if q:
        L_gens += [sym.hat_gen(i) for i in range(n)]
    L = induced_sequence(E, L_gens)
    if instances is None:
        instances = nu_relator_instances(G, q)
    values = []
    for fam, args in instances:
        v = evaluate_relator(sym, fam, args)
        if any(v[:T.n]):
            raise VerificationError(f"relator {fam} does not evaluate into the tail subgroup")
        if any(v):
            values.append(v)
    nu, project = central_quotient(cov, values, L)
    nu.group = f"nu^{q}({G.group or 'G'})"
    img_g = [project(E.gen(i)) for i in range(n)]
    img_phi = [project(E.gen(n + i)) for i in range(n)]
    img_hat = [project(sym.hat_gen(i)) for i in range(n)] if q else []
    L_upper = [m for m in L.members if E.depth(m) < T.n]

    def psi(x):
        out = T.identity()
        for m, c in zip(L_upper, x):
            if c:
                out = T.mul(out, T.pow(tuple(m[:T.n]), c))
        return out

    return _finish(G, q, tau, nu, img_g, img_phi, img_hat, psi, False, cov, values)


def is_q_perfect(G, q):
    n = G.n
    gens = [G.comm(G.gen(i), G.gen(j)) for i in range(n) for j in range(i + 1, n)]
    gens += [G.pow(G.gen(i), q) for i in range(n)]
    seq = induced_sequence(G, gens)
    return len(seq.members) == n and all(G.depth(m) == i and m[i] == 1 for i, m in enumerate(seq.members))


def build_nu_qperfect(G, q, tau=None):
    if not is_q_perfect(G, q):
        raise PreconditionError(f"{G.group or 'G'} is not {q}-perfect")
    tau = tau or build_tau(G, q)
    T = tau.pres
    sym = _Symbols(tau, T, q)
    n = G.n
    img_g = [T.gen(i) for i in range(n)]
    img_phi = [T.gen(n + i) for i in range(n)]
    img_hat = [sym.hat_gen(i) for i in range(n)] if q else []
    return _finish(G, q, tau, T, img_g, img_phi, img_hat, lambda x: tuple(x), True)


def tensor_square(nu):
    return nu.tensor_sub.pres


def diagonal(nu):
    """Presentation of the diagonal, after checking it against psi and the wedge."""
    P = nu.pres
    for m in nu.delta.members:
        if any(nu.psi(m)):
            raise VerificationError("diagonal element outside the kernel of psi")
        for i in range(P.n):
            if P.comm(m, P.gen(i)) != P.identity():
                raise VerificationError("diagonal element is not central")
    wedge_order = nu.tau.ctx.W.order()
    ups, dl = nu.upsilon.order(), nu.delta.order()
    if ups and dl and wedge_order and ups != dl * wedge_order:
        raise VerificationError(f"|tensor| = {ups} but |diagonal| * |wedge| = {dl * wedge_order}")
    return subgroup_presentation(nu.delta, names="d", group="diagonal").pres


def rho(nu, x):
    """Image in G of an element of nu^q(G) under g -> g, h^phi -> h, k-hat -> k^q."""
    return nu.tau.to_G(nu.psi(tuple(x)))


def rho_image(nu):
    G = nu.G
    return induced_sequence(G, [rho(nu, m) for m in nu.upsilon.members])
