"""Brute-force reference computations for small finite groups.

Nothing here touches covers, induced sequences or normal forms beyond plain
collection, so results can be compared against the main pipeline.
"""

import builtins
import itertools
from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError

ENUMERATION_LIMIT = 10 ** 5


@dataclass
class MulTable:
    elements: list
    index: dict
    table: list           # table[a][b] = index of elements[a] * elements[b]

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self):
        return 0

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(len(t)) for b in range(a))


def enumerate(pres):
    """All normal forms of a finite presentation with a multiplication table."""
    if not pres.is_finite:
        raise PreconditionError("cannot enumerate an infinite group")
    size = 1
    for e in pres.orders:
        size *= e
    if size > ENUMERATION_LIMIT:
        raise PreconditionError(f"group of order {size} is too large to enumerate")
    elements = [tuple(v) for v in itertools.product(*[range(e) for e in pres.orders])]
    index = {x: k for k, x in builtins.enumerate(elements)}
    table = [[index[pres.collect(_word(x) + _word(y))] for y in elements] for x in elements]
    return MulTable(elements, index, table)


def _word(x):
    return [(i, a) for i, a in builtins.enumerate(x) if a]


def brute_center(table):
    t = table.table
    r = range(len(t))
    return [table.elements[a] for a in r if all(t[a][b] == t[b][a] for b in r)]


def center_by_generators(pres):
    """Center of a finite presentation: elements commuting with every generator.

    Cheaper than ``brute_center`` since no multiplication table is built.
    """
    if not pres.is_finite:
        raise PreconditionError("cannot enumerate an infinite group")
    gens = [pres.gen(i) for i in range(pres.n)]
    out = []
    for x in itertools.product(*[range(e) for e in pres.orders]):
        if all(pres.mul(x, g) == pres.mul(g, x) for g in gens):
            out.append(tuple(x))
    return out


def element_order(table, a):
    k, x = 1, a
    while x != 0:
        x = table.table[x][a]
        k += 1
    return k


def abelian_tensor(inv_a, inv_b):
    """Invariant factors of A (x)_Z B for abelian A, B (0 marks Z)."""
    parts = [gcd(a, b) for a in inv_a for b in inv_b]
    return invariant_factors([p for p in parts if p != 1])


def _prime_powers(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def invariant_factors(cyclic_orders):
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups."""
    free = sum(1 for c in cyclic_orders if c == 0)
    by_prime = {}
    for c in cyclic_orders:
        if c > 1:
            for p, q in _prime_powers(c):
                by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for qs in by_prime.values():
        qs.sort(reverse=True)
        for k, q in builtins.enumerate(qs):
            factors[length - 1 - k] *= q
    return factors + [0] * free


def cyclic_wedge(n, q):
    """C_n wedge^q C_n is cyclic of order n."""
    if n < 1 or q < 1:
        raise PreconditionError("cyclic_wedge needs n >= 1 and q >= 1")
    return [n] if n > 1 else []
