"""Subgroups of polycyclic groups given by induced sequences.

An induced sequence is a list of elements with strictly increasing depth
whose leading exponents are positive and minimal; every subgroup element is
then a unique product ``m_1^c_1 ... m_r^c_r`` found by sifting.
"""

from dataclasses import dataclass, field

from . import zlinalg
from .errors import NotAMember, UnsupportedInstance
from .pc import PcPresentation, from_vectors

FINITE_CENTER_LIMIT = 10 ** 6


@dataclass
class InducedSequence:
    parent: PcPresentation
    members: list = field(default_factory=list)

    @property
    def depths(self):
        return [self.parent.depth(m) for m in self.members]

    def leads(self):
        return [m[d] for m, d in zip(self.members, self.depths)]

    def relative_orders(self):
        out = []
        for m, d in zip(self.members, self.depths):
            e = self.parent.orders[d]
            out.append(e // m[d] if e else 0)
        return out

    def order(self):
        """Subgroup order, 0 when infinite."""
        total = 1
        for r in self.relative_orders():
            if r == 0:
                return 0
            total *= r
        return total

    def is_trivial(self):
        return not self.members

    def __len__(self):
        return len(self.members)

    def contains(self, x):
        return express(self, x) is not None


def _normalize_leader(pres, x):
    """Make the leading exponent positive (and a divisor of e at finite depth)."""
    d = pres.depth(x)
    e = pres.orders[d]
    a = x[d]
    if e == 0:
        return pres.inv(x) if a < 0 else x
    g, s, _ = zlinalg.xgcd(a, e)
    if g == a:
        return x
    return pres.pow(x, s % e)


class _Builder:
    def __init__(self, pres):
        self.pres = pres
        self.table = {}
        self.queue = []

    def sift(self, x):
        pres = self.pres
        while True:
            d = pres.depth(x)
            if d == pres.n:
                return
            m = self.table.get(d)
            if m is None:
                y = _normalize_leader(pres, x)
                self.table[d] = y
                if y != x:
                    self.queue.append(x)
                self._push_power(y)
                return
            a, b = x[d], m[d]
            e = pres.orders[d]
            if e:
                a %= e
            if a % b == 0:
                x = pres.mul(pres.pow(m, -(a // b)), x)
                continue
            g, s, t = zlinalg.xgcd(a, b)
            new = pres.mul(pres.pow(x, s), pres.pow(m, t))
            new = _normalize_leader(pres, new)
            self.table[d] = new
            self.queue.append(m)
            self._push_power(new)

    def _push_power(self, y):
        d = self.pres.depth(y)
        e = self.pres.orders[d]
        if e:
            self.queue.append(self.pres.pow(y, e // y[d]))

    def drain(self):
        while self.queue:
            self.sift(self.queue.pop())

    def closure_elements(self):
        pres = self.pres
        ms = [self.table[d] for d in sorted(self.table)]
        out = []
        for i, mi in enumerate(ms):
            di = pres.depth(mi)
            if pres.orders[di]:
                out.append(pres.pow(mi, pres.orders[di] // mi[di]))
            for mj in ms[i + 1:]:
                out.append(pres.comm(mj, mi))
                if not pres.orders[di]:
                    out.append(pres.comm(mj, pres.inv(mi)))
        return out


def induced_sequence(parent, gens):
    b = _Builder(parent)
    b.queue = [tuple(g) for g in reversed(list(gens))]
    while True:
        b.drain()
        before = dict(b.table)
        for x in b.closure_elements():
            b.sift(x)
            b.drain()
        if b.table == before:
            break
    members = [b.table[d] for d in sorted(b.table)]
    return InducedSequence(parent, _reduce(parent, members))


def _reduce(pres, members):
    """Reduce entries at deeper leading positions into [0, lead)."""
    depths = [pres.depth(m) for m in members]
    out = list(members)
    for k in range(len(out) - 2, -1, -1):
        x = out[k]
        for j in range(k + 1, len(out)):
            dj = depths[j]
            f = x[dj] // out[j][dj]
            if f:
                x = pres.mul(x, pres.pow(out[j], -f))
        out[k] = x
    return out


def express(seq, x):
    """Coordinates of ``x`` over the members, or None if it is not a member."""
    pres = seq.parent
    coords = []
    for m in seq.members:
        d = pres.depth(m)
        dx = pres.depth(x)
        if dx < d:
            return None
        if dx > d:
            coords.append(0)
            continue
        a = x[d]
        if a % m[d]:
            return None
        c = a // m[d]
        coords.append(c)
        x = pres.mul(pres.pow(m, -c), x)
    if any(x):
        return None
    return coords


def express_or_raise(seq, x):
    c = express(seq, x)
    if c is None:
        raise NotAMember("element is not in the subgroup")
    return c


def element_of(seq, coords):
    pres = seq.parent
    return pres.mul(pres.identity(), *[pres.pow(m, c) for m, c in zip(seq.members, coords)])


@dataclass
class SubgroupPresentation:
    """A presentation of a subgroup together with maps to and from the parent."""
    pres: PcPresentation
    seq: InducedSequence
    generators: list              # parent elements for the presentation's generators
    cyclic_log: tuple = None      # (canonical log map, modulus, inverse of the chosen generator's log)

    def to_parent(self, coords):
        p = self.seq.parent
        return p.mul(p.identity(), *[p.pow(g, c) for g, c in zip(self.generators, coords)])

    def from_parent(self, x):
        c = express(self.seq, x)
        if c is None:
            return None
        if self.cyclic_log is None:
            return tuple(c)
        log, mod, unit = self.cyclic_log
        k = log(c) * unit
        return (k % mod if mod else k,)

    def __iter__(self):
        return iter((self.pres, self.to_parent))


def subgroup_presentation(seq, names=None, prefer=None, group=None):
    """Presentation on one generator per member.

    ``names`` is a list of generator names or a prefix (default ``w``).

    When ``prefer`` is given and the subgroup is cyclic, the result instead
    has a single generator: the first element of ``prefer`` generating it.
    """
    pres = seq.parent
    r = len(seq.members)
    if prefer:
        cyc = _cyclic_generator(seq, prefer, names, group)
        if cyc is not None:
            return cyc
    rel = seq.relative_orders()
    powers, conjs, cinvs = {}, {}, {}
    ms = seq.members
    for k in range(r):
        if rel[k]:
            powers[k] = _express_checked(seq, pres.pow(ms[k], rel[k]))
        for j in range(k):
            conjs[(k, j)] = _express_checked(seq, pres.conj(ms[k], ms[j]))
            if not rel[j]:
                conjs_inv = pres.conj(ms[k], pres.inv(ms[j]))
                cinvs[(k, j)] = _express_checked(seq, conjs_inv)
    if names is None or isinstance(names, str):
        names = [f"{names or 'w'}{k + 1}" for k in range(r)]
    sub = from_vectors(rel, names, powers, conjs, cinvs, group=group)
    return SubgroupPresentation(sub, seq, list(ms))


def _express_checked(seq, x):
    c = express(seq, x)
    if c is None:
        raise NotAMember("subgroup sequence is not closed")
    return tuple(c)


def _cyclic_generator(seq, prefer, names, group):
    """Single-generator presentation when the subgroup is cyclic."""
    canon = subgroup_presentation(seq)
    sub = canon.pres
    if not sub.is_abelian:
        return None
    rows = []
    for k, e in enumerate(sub.orders):
        if e:
            row = [-x for x in sub._power_vec(k)]
            row[k] += e
            rows.append(row)
    orders, Q = zlinalg.quotient_structure(rows, sub.n)
    nontrivial = [k for k, d in enumerate(orders) if d != 1]
    if len(nontrivial) != 1:
        return None
    col = nontrivial[0]
    mod = orders[col]

    def log(c):
        return sum(ci * Q[i][col] for i, ci in enumerate(c))

    for cand in prefer:
        c = express(seq, cand)
        if c is None:
            continue
        lc = log(c)
        if mod:
            if zlinalg.xgcd(lc, mod)[0] != 1:
                continue
            unit = pow(lc, -1, mod)
        else:
            if lc not in (1, -1):
                continue
            unit = lc
        name = names if isinstance(names, str) else "w"
        p = PcPresentation((mod,) if mod != 1 else (), names=[name] if mod != 1 else [], group=group)
        return SubgroupPresentation(p, seq, [tuple(cand)], (log, mod, unit))
    return None


def tail_intersection(seq, first_tail_depth):
    """Members lying in the tail block (depth >= first_tail_depth)."""
    if first_tail_depth > seq.parent.n:
        raise ValueError("first tail depth beyond the parent's generators")
    return InducedSequence(seq.parent, [m for m, d in zip(seq.members, seq.depths)
                                        if d >= first_tail_depth])


def whole_group(pres):
    return InducedSequence(pres, [pres.gen(i) for i in range(pres.n)])


def normal_closure(pres, gens):
    """Smallest normal subgroup containing gens."""
    seq = induced_sequence(pres, gens)
    while True:
        extra = []
        for m in seq.members:
            for i in range(pres.n):
                c = pres.conj(m, pres.gen(i))
                if express(seq, c) is None:
                    extra.append(c)
                if not pres.orders[i]:
                    c = pres.conj(m, pres.gen(i, -1))
                    if express(seq, c) is None:
                        extra.append(c)
        if not extra:
            return seq
        seq = induced_sequence(pres, list(seq.members) + extra)


def image_sequence(pres, seq, hom):
    """Induced sequence of the image of a subgroup under ``hom``."""
    return induced_sequence(pres, [hom(m) for m in seq.members])


# ------------------------------------------------------------------ centers

def _stabilizer(pres, seq, point, act):
    """Stabilizer of ``point`` in the subgroup ``seq`` under a right action.

    Block algorithm over the induced sequence: members are processed from
    the deepest up, keeping the orbit of the current normal segment with a
    transversal. ``act(point, element)`` must be a right action with finite
    orbits.
    """
    orbit = {point: pres.identity()}
    stab = []
    for m in reversed(seq.members):
        img = act(point, m)
        power = m
        i = 1
        while img not in orbit:
            img = act(img, m)
            power = pres.mul(power, m)
            i += 1
        stab.append(pres.mul(power, pres.inv(orbit[img])))
        if i > 1:
            block = list(orbit.items())
            for _ in range(1, i):
                block = [(act(pt, m), pres.mul(t, m)) for pt, t in block]
                orbit.update(block)
    return [s for s in stab if any(s)]


def centralizer_finite(pres, seq, g):
    def act(x, c):
        return pres.conj(x, c)
    return induced_sequence(pres, _stabilizer(pres, seq, tuple(g), act))


def _has_normal_series(pres):
    for i in range(pres.n):
        for j in range(i):
            if pres.depth(pres._conj_table(i, j, 1)) < i:
                return False
            if not pres.orders[j] and pres.depth(pres._conj_table(i, j, -1)) < i:
                return False
    return True


def _layer_data(pres, g, k):
    """Return functions (eps, ell) for the affine action on layer k."""
    g_inv = pres.inv(g)
    gk = pres.gen(k)

    def ell(c):
        return pres.mul(g_inv, pres.conj(g, c))[k]

    def eps(c):
        v = pres.conj(gk, c)
        if pres.depth(v) != k:
            raise UnsupportedInstance("layer is not normalized by the group")
        return v[k]

    return eps, ell


def _layer_stabilizer_finite(pres, seq, e, eps, ell):
    def act(x, c):
        return (eps(c) * x + ell(c)) % e
    return _stabilizer(pres, seq, 0, act)


def _layer_stabilizer_infinite(pres, seq, eps, ell):
    """Stabilizer of 0 under x -> s*x + t with s = +-1 on the integers."""
    d, wd = 0, pres.identity()          # translations dZ, witness for +d
    refl = None                          # (b, witness) for x -> -x + b
    kernel = []
    for m in reversed(seq.members):
        s, t = eps(m), ell(m)
        if s not in (1, -1):
            raise UnsupportedInstance("conjugation acts on an infinite layer by a non-unit")
        if s == 1:
            if t == 0:
                kernel.append(m)
                continue
            if d and t % d == 0:
                k0 = 1
            elif d:
                k0 = d // zlinalg.xgcd(d, t)[0]
            else:
                k0 = None
            if k0 is not None:
                s0 = pres.pow(wd, k0 * t // d)
                kernel.append(pres.mul(pres.pow(m, k0), pres.inv(s0)))
            g, x, y = zlinalg.xgcd(d, t)
            wd = pres.mul(pres.pow(wd, x), pres.pow(m, y)) if d else (m if t > 0 else pres.inv(m))
            d = g
        else:
            if refl is None:
                kernel.append(pres.pow(m, 2))
                refl = (t, m)
                continue
            b, wr = refl
            diff = t - b
            if (d and diff % d == 0) or (not d and diff == 0):
                s0 = pres.mul(wr, pres.pow(wd, diff // d) if d else pres.identity())
                kernel.append(pres.mul(m, pres.inv(s0)))
                continue
            kernel.append(pres.pow(m, 2))
            tw = pres.mul(wr, m)          # translation by t - b
            g, x, y = zlinalg.xgcd(d, diff)
            wd = pres.mul(pres.pow(wd, x), pres.pow(tw, y)) if d else (tw if diff > 0 else pres.inv(tw))
            d = g
    out = list(kernel)
    if refl is not None:
        b, wr = refl
        if (d and b % d == 0) or (not d and b == 0):
            out.append(pres.mul(wr, pres.pow(wd, -(b // d)) if d else pres.identity()))
    return [x for x in out if any(x)]


def centralizer_layered(pres, seq, g):
    """Centralizer of ``g`` in ``seq`` along the series of generator tails."""
    g = tuple(g)
    cur = seq
    for k in range(pres.n):
        eps, ell = _layer_data(pres, g, k)
        if all(ell(m) == 0 for m in cur.members):
            continue
        e = pres.orders[k]
        if e:
            gens = _layer_stabilizer_finite(pres, cur, e, eps, ell)
        else:
            gens = _layer_stabilizer_infinite(pres, cur, eps, ell)
        cur = induced_sequence(pres, gens)
    return cur


def center(pres, strategy=None):
    """Induced sequence of the center."""
    if strategy is None:
        if pres.is_finite and _order(pres) <= FINITE_CENTER_LIMIT:
            strategy = "finite"
        elif _has_normal_series(pres):
            strategy = "layered"
        else:
            raise UnsupportedInstance("center: the group is infinite and its generator "
                                      "series is not normal")
    if strategy == "finite" and not pres.is_finite:
        raise UnsupportedInstance("center: finite strategy on an infinite group")
    if strategy == "layered" and not _has_normal_series(pres):
        raise UnsupportedInstance("center: generator series is not normal")
    cur = induced_sequence(pres, whole_group(pres).members)
    for i in range(pres.n):
        g = pres.gen(i)
        if strategy == "finite":
            cur = centralizer_finite(pres, cur, g)
        else:
            cur = centralizer_layered(pres, cur, g)
    return cur


def _order(pres):
    total = 1
    for e in pres.orders:
        total *= e
    return total
