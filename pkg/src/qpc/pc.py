"""Polycyclic presentations and collection to normal form.

Generators are indexed from 0. A presentation stores

* ``orders[i]``: relative order ``e_i`` (0 means infinite, i.e. ``i`` not in I);
* ``powers[i]``: the word ``g_i^{e_i}`` equals (only gens > i);
* ``conjs[(i, j)]``: the word ``g_i^{g_j}`` equals, for ``j < i`` (gens > j);
* ``cinvs[(i, j)]``: the word ``g_i^{g_j^-1}`` equals, for ``j < i`` with ``g_j``
  of infinite order.

Missing entries mean the trivial relation (``g_i^{e_i} = 1``, ``g_i^{g_j} = g_i``).
Elements are exponent vectors (tuples of ints). Conjugation is ``x^y = y^-1 x y``
and commutators are ``[x, y] = x^-1 y^-1 x y``.
"""

from functools import cached_property

from .errors import CollectionBudgetExceeded, PresentationSyntaxError, UnsupportedInstance

DEFAULT_STEP_BUDGET = 50_000_000
SUFFIX_CACHE_LIMIT = 200_000
PRODUCT_CACHE_LIMIT = 200_000


def reduce_word(word):
    """Free reduction of a sequence of (generator, exponent) pairs."""
    out = []
    for g, e in word:
        if not e:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            out.pop()
            if s:
                out.append((g, s))
        else:
            out.append((g, e))
    return tuple(out)


def word_inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def vector_to_word(vec):
    return tuple((i, a) for i, a in enumerate(vec) if a)


def default_names(n, prefix="g"):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


class PcPresentation:
    """A polycyclic presentation together with its collector.

    Instances are treated as immutable; the collector caches derived
    conjugation data lazily.
    """

    def __init__(self, orders, powers=None, conjs=None, cinvs=None, names=None,
                 group=None, step_budget=DEFAULT_STEP_BUDGET):
        self.orders = tuple(int(e) for e in orders)
        n = self.n = len(self.orders)
        self.names = tuple(names) if names is not None else default_names(n)
        self.group = group
        self.step_budget = step_budget
        if len(self.names) != n:
            raise ValueError("names and orders differ in length")
        self.powers = {}
        self.conjs = {}
        self.cinvs = {}
        for i, w in (powers or {}).items():
            if not 0 <= i < n or self.orders[i] == 0:
                raise PresentationSyntaxError(f"power relation for generator {i + 1} without relative order")
            w = reduce_word(w)
            _check_word(w, i + 1, n, f"power of {self.names[i]}")
            if w:
                self.powers[i] = w
        for (i, j), w in (conjs or {}).items():
            if not 0 <= j < i < n:
                raise PresentationSyntaxError(
                    f"conjugate g{i + 1}^g{j + 1}: conjugator index must be below the target")
            w = reduce_word(w)
            _check_word(w, j + 1, n, f"conjugate {self.names[i]}^{self.names[j]}")
            if w != ((i, 1),):
                self.conjs[(i, j)] = w
        for (i, j), w in (cinvs or {}).items():
            if not 0 <= j < i < n:
                raise PresentationSyntaxError(
                    f"inverse conjugate g{i + 1}^g{j + 1}: conjugator index must be below the target")
            if self.orders[j] != 0:
                raise PresentationSyntaxError(
                    f"inverse conjugate by {self.names[j]}, which has finite relative order")
            w = reduce_word(w)
            _check_word(w, j + 1, n, f"inverse conjugate {self.names[i]}^{self.names[j]}")
            if w != ((i, 1),):
                self.cinvs[(i, j)] = w
        for i, e in enumerate(self.orders):
            if e < 0:
                raise PresentationSyntaxError(f"negative relative order for {self.names[i]}")
        self._conj_cache = {}
        self._suffix_cache = {}
        self._product_cache = {}
        self._inverse_cache = {}
        self._steps = 0
        self._depth = 0

    # ------------------------------------------------------------------ basics

    def __repr__(self):
        return f"PcPresentation(n={self.n}, orders={self.orders})"

    @property
    def finite_indices(self):
        return tuple(i for i, e in enumerate(self.orders) if e)

    @property
    def is_finite(self):
        return all(self.orders)

    def identity(self):
        return (0,) * self.n

    def gen(self, i, e=1):
        v = [0] * self.n
        self._mul_gen(v, i, e)
        return tuple(v)

    def is_identity(self, v):
        return not any(v)

    def power_rhs(self, i):
        return self.powers.get(i, ())

    def conj_rhs(self, i, j):
        return self.conjs.get((i, j), ((i, 1),))

    def cinv_rhs(self, i, j):
        """Word for ``g_i^{g_j^-1}``; derived when not stored."""
        if (i, j) in self.cinvs:
            return self.cinvs[(i, j)]
        return vector_to_word(self._conj_table(i, j, -1))

    def relators(self):
        """Relation keys in canonical order: per generator, conjugates then power."""
        out = []
        for i in range(self.n):
            for j in range(i):
                out.append(("conj", i, j))
                if self.orders[j] == 0:
                    out.append(("cinv", i, j))
            if self.orders[i]:
                out.append(("pow", i, None))
        return out

    def relation_rhs(self, key):
        kind, i, j = key
        if kind == "pow":
            return self.power_rhs(i)
        if kind == "conj":
            return self.conj_rhs(i, j)
        return self.cinv_rhs(i, j)

    def relation_lhs(self, key):
        """Word for the left-hand side of a relation."""
        kind, i, j = key
        if kind == "pow":
            return ((i, self.orders[i]),)
        if kind == "conj":
            return ((j, -1), (i, 1), (j, 1))
        return ((j, 1), (i, 1), (j, -1))

    @cached_property
    def _commutes(self):
        """_commutes[k] = set of m > k whose conjugate by g_k is trivial."""
        out = []
        for k in range(self.n):
            s = set()
            for m in range(k + 1, self.n):
                if (m, k) not in self.conjs and (m, k) not in self.cinvs:
                    s.add(m)
            out.append(s)
        return out

    @cached_property
    def is_abelian(self):
        return all(len(self._commutes[k]) == self.n - k - 1 for k in range(self.n))

    # --------------------------------------------------------------- collector

    def _tick(self):
        self._steps += 1
        if self._steps > self.step_budget:
            self._steps = 0
            raise CollectionBudgetExceeded(
                f"collection exceeded the step budget of {self.step_budget}")

    def _enter(self):
        if self._depth == 0:
            self._steps = 0
        self._depth += 1

    def _leave(self):
        self._depth -= 1

    def _mul_gen(self, v, k, a):
        """In place: v <- v * g_k^a (v a normal-form list)."""
        if not a:
            return
        self._tick()
        n = self.n
        suffix = [(m, v[m]) for m in range(k + 1, n) if v[m]]
        e = self.orders[k]
        if not suffix:
            self._add_power(v, k, a)
            return
        comm = self._commutes[k]
        if all(m in comm for m, _ in suffix):
            new = v[k] + a
            if e == 0 or 0 <= new < e:
                v[k] = new
                return
            for m, _ in suffix:
                v[m] = 0
            self._add_power(v, k, a)
            for m, b in suffix:
                self._mul_gen(v, m, b)
            return
        for m, _ in suffix:
            v[m] = 0
        self._add_power(v, k, a)
        conj = self._conj_suffix(suffix, k, a)
        for m, b in enumerate(conj):
            if b:
                self._mul_gen(v, m, b)

    def _add_power(self, v, k, a):
        """v <- v * g_k^a when v has no entries beyond k."""
        e = self.orders[k]
        new = v[k] + a
        if e == 0:
            v[k] = new
            return
        m, r = divmod(new, e)
        v[k] = r
        if m:
            rhs = self._power_vec(k)
            if any(rhs):
                p = self.pow(rhs, m)
                for i, b in enumerate(p):
                    if b:
                        self._mul_gen(v, i, b)

    def _power_vec(self, k):
        key = ("pow", k)
        if key not in self._conj_cache:
            self._conj_cache[key] = self.collect(self.power_rhs(k))
        return self._conj_cache[key]

    def _conj_suffix(self, suffix, k, a):
        """Normal form of (prod g_m^b over suffix)^(g_k^a), memoized."""
        key = (tuple(suffix), k, a)
        hit = self._suffix_cache.get(key)
        if hit is None:
            hit = tuple(self._conj_suffix_uncached(suffix, k, a))
            if len(self._suffix_cache) < SUFFIX_CACHE_LIMIT:
                self._suffix_cache[key] = hit
        return hit

    def _conj_suffix_uncached(self, suffix, k, a):
        sign = 1 if a > 0 else -1
        cur = suffix
        vec = None
        for _ in range(abs(a)):
            acc = [0] * self.n
            for m, b in cur:
                c = self._conj_table(m, k, sign)
                self._mul_vec(acc, self.pow(c, b))
            vec = acc
            cur = [(m, b) for m, b in enumerate(acc) if b]
        return vec

    def _conj_table(self, m, k, sign):
        """Normal form of g_m^(g_k^sign) for m > k."""
        key = (m, k, sign)
        hit = self._conj_cache.get(key)
        if hit is not None:
            return hit
        if m in self._commutes[k]:
            val = self.gen(m)
        elif sign == 1:
            val = self.collect(self.conj_rhs(m, k))
        elif (m, k) in self.cinvs:
            val = self.collect(self.cinvs[(m, k)])
        elif self.orders[k]:
            # g_k^-1 = g_k^(e-1) * rhs^-1, so x^(g_k^-1) = rhs * x^(g_k^(e-1)) * rhs^-1
            x = self._conj_suffix([(m, 1)], k, self.orders[k] - 1) if self.orders[k] > 1 else self.gen(m)
            r = self._power_vec(k)
            val = self.mul(self.mul(r, x), self.inv(r))
        else:
            val = self._solve_conj_preimage(k, self.gen(m))
        self._conj_cache[key] = val
        return val

    def _solve_conj_preimage(self, k, target):
        """Find y with y^(g_k) == target, layer by layer."""
        y = [0] * self.n
        rem = target
        while any(rem):
            lvl = next(i for i, a in enumerate(rem) if a)
            img = self._conj_table(lvl, k, 1)
            lead = next((i for i, a in enumerate(img) if a), None)
            if lead != lvl:
                raise UnsupportedInstance(
                    f"cannot derive {self.names[lvl]}^({self.names[k]}^-1); supply a cinv relation")
            u, a = img[lvl], rem[lvl]
            e = self.orders[lvl]
            if e == 0:
                if u not in (1, -1):
                    raise UnsupportedInstance(
                        f"conjugation by {self.names[k]} does not act by +-1 on {self.names[lvl]}")
                b = a * u
            else:
                try:
                    b = a * pow(u, -1, e) % e
                except ValueError:
                    raise UnsupportedInstance(
                        f"conjugation by {self.names[k]} is not invertible on {self.names[lvl]}") from None
            self._mul_gen(y, lvl, b)
            rem = self.mul(self.inv(self.pow(img, b)), rem)
        return tuple(y)

    def _mul_vec(self, v, u):
        for i, b in enumerate(u):
            if b:
                self._mul_gen(v, i, b)

    # -------------------------------------------------------------- public ops

    def collect(self, word):
        self._enter()
        try:
            return self._collect(word)
        finally:
            self._leave()

    def _collect(self, word):
        """Normal form of a word given as (generator, exponent) pairs."""
        v = [0] * self.n
        for g, e in word:
            if not 0 <= g < self.n:
                raise IndexError(f"generator index {g} out of range")
            self._mul_gen(v, g, e)
        return tuple(v)

    def mul(self, *elements):
        self._enter()
        try:
            return self._mul(*elements)
        finally:
            self._leave()

    def _mul(self, *elements):
        if not elements:
            return (0,) * self.n
        v = tuple(elements[0])
        for u in elements[1:]:
            v = self._mul2(v, tuple(u))
        return v

    def _mul2(self, x, y):
        key = (x, y)
        hit = self._product_cache.get(key)
        if hit is None:
            v = list(x)
            self._mul_vec(v, y)
            hit = tuple(v)
            if len(self._product_cache) < PRODUCT_CACHE_LIMIT:
                self._product_cache[key] = hit
        return hit

    def inv(self, x):
        self._enter()
        try:
            return self._inv(x)
        finally:
            self._leave()

    def _inv(self, x):
        x = tuple(x)
        hit = self._inverse_cache.get(x)
        if hit is None:
            hit = self._inv_uncached(x)
            if len(self._inverse_cache) < PRODUCT_CACHE_LIMIT:
                self._inverse_cache[x] = hit
        return hit

    def _inv_uncached(self, x):
        v = [0] * self.n
        for m in range(self.n - 1, -1, -1):
            if x[m]:
                self._mul_gen(v, m, -x[m])
        return tuple(v)

    def pow(self, x, k):
        self._enter()
        try:
            return self._pow(x, k)
        finally:
            self._leave()

    def _pow(self, x, k):
        if k == 0 or not any(x):
            return (0,) * self.n
        if k < 0:
            x, k = self.inv(x), -k
        if k == 1:
            return tuple(x)
        nz = [i for i, a in enumerate(x) if a]
        if len(nz) == 1:
            v = [0] * self.n
            self._mul_gen(v, nz[0], x[nz[0]] * k)
            return tuple(v)
        result = None
        base = tuple(x)
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def conj(self, x, y):
        """x^y = y^-1 x y"""
        return self.mul(self.inv(y), x, y)

    def comm(self, x, *ys):
        """Left-normed commutator [x, y1, y2, ...]."""
        for y in ys:
            x = self.mul(self.inv(x), self.inv(y), x, y)
        return x

    def order_of(self, x):
        """Order of an element (0 when infinite)."""
        if not any(x):
            return 1
        lead = next(i for i, a in enumerate(x) if a)
        e = self.orders[lead]
        if e == 0:
            return 0
        k = e // _gcd(e, x[lead])
        return k * self.order_of(self.pow(x, k))

    def depth(self, x):
        return next((i for i, a in enumerate(x) if a), self.n)

    def word_of(self, x):
        return vector_to_word(x)

    def format_element(self, x):
        parts = []
        for i, a in enumerate(x):
            if a == 1:
                parts.append(self.names[i])
            elif a:
                parts.append(f"{self.names[i]}^{a}")
        return "*".join(parts) if parts else "id"

    def index_of(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _check_word(w, lowest, n, what):
    for g, _ in w:
        if not lowest <= g < n:
            raise PresentationSyntaxError(
                f"{what}: right-hand side uses generator {g + 1} outside the allowed range")


def from_vectors(orders, names, power_vecs, conj_vecs, cinv_vecs=None, group=None):
    """Build a presentation from normal-form vectors instead of words."""
    return PcPresentation(
        orders,
        powers={i: vector_to_word(v) for i, v in power_vecs.items()},
        conjs={k: vector_to_word(v) for k, v in conj_vecs.items()},
        cinvs={k: vector_to_word(v) for k, v in (cinv_vecs or {}).items()},
        names=names,
        group=group,
    )


def eliminate_trivial(pres):
    """Remove generators of relative order 1.

    Returns ``(new_pres, keep)`` where ``keep`` lists the surviving old
    indices; an old normal form maps to the new one by selecting ``keep``.
    """
    keep = [i for i, e in enumerate(pres.orders) if e != 1]
    if len(keep) == pres.n:
        return pres, keep
    pos = {old: new for new, old in enumerate(keep)}

    def project(v):
        return tuple(v[i] for i in keep)

    powers, conjs, cinvs = {}, {}, {}
    for i in keep:
        if pres.orders[i]:
            powers[pos[i]] = project(pres._power_vec(i))
        for j in keep:
            if j >= i:
                break
            c = pres._conj_table(i, j, 1)
            conjs[(pos[i], pos[j])] = project(c)
            if pres.orders[j] == 0:
                cinvs[(pos[i], pos[j])] = project(pres._conj_table(i, j, -1))
    new = from_vectors([pres.orders[i] for i in keep], [pres.names[i] for i in keep],
                       powers, conjs, cinvs, group=pres.group)
    return new, keep


def rename(pres, names, group=None):
    return PcPresentation(pres.orders, pres.powers, pres.conjs, pres.cinvs, names=names,
                          group=group if group is not None else pres.group)
