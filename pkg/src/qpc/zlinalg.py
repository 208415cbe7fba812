"""Exact integer matrix normal forms.

Matrices are plain lists of row lists of Python ints. Row vectors act on the
left, so a relation matrix has one relation per row.
"""


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        assert len(row) == inner
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    acc[j] += x * bk[j]
        out.append(acc)
    return out


def transpose(m, cols=None):
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def det(m):
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(m):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots of
    ``H`` are positive and entries above each pivot lie in ``[0, pivot)``.
    Zero rows are moved to the bottom.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(r) for r in m]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if h[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][c]), i))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, rows):
                if h[i][c]:
                    f = h[i][c] // h[r][c]
                    _row_sub(h, i, r, f)
                    _row_sub(u, i, r, f)
                    if h[i][c]:
                        done = False
            if done:
                break
        if r < rows and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            p = h[r][c]
            for i in range(r):
                f = h[i][c] // p
                if f:
                    _row_sub(h, i, r, f)
                    _row_sub(u, i, r, f)
            r += 1
    return h, u


def _row_sub(m, i, k, f):
    """row_i -= f * row_k"""
    ri, rk = m[i], m[k]
    for j in range(len(ri)):
        if rk[j]:
            ri[j] -= f * rk[j]


def _col_sub(m, j, k, f):
    """col_j -= f * col_k"""
    for row in m:
        if row[k]:
            row[j] -= f * row[k]


def _swap_cols(m, a, b):
    for row in m:
        row[a], row[b] = row[b], row[a]


def smith_normal_form(m, cols=None):
    """Smith normal form ``(D, P, Q)`` with ``P @ M @ Q == D``.

    ``P`` and ``Q`` are unimodular, ``D`` is diagonal with nonnegative entries
    ``d_1 | d_2 | ...`` (zeros last). A matrix that is already in this shape
    comes back with identity transforms.
    """
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    p = identity(rows)
    q = identity(cols)
    t = 0
    while t < min(rows, cols):
        nz = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            p[t], p[pi] = p[pi], p[t]
        if pj != t:
            _swap_cols(d, t, pj)
            _swap_cols(q, t, pj)
        while True:
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    f = d[i][t] // d[t][t]
                    _row_sub(d, i, t, f)
                    _row_sub(p, i, t, f)
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    f = d[t][j] // d[t][t]
                    _col_sub(d, j, t, f)
                    _col_sub(q, j, t, f)
                    if d[t][j]:
                        clean = False
            if not clean:
                # a smaller remainder appeared in row/column t; move it to the pivot
                cand = [(abs(d[i][t]), i, t) for i in range(t, rows) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t, cols) if d[t][j]]
                _, pi, pj = min(cand)
                if pi != t:
                    d[t], d[pi] = d[pi], d[t]
                    p[t], p[pi] = p[pi], p[t]
                if pj != t:
                    _swap_cols(d, t, pj)
                    _swap_cols(q, t, pj)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            i = bad[0]
            for j in range(cols):
                d[t][j] += d[i][j]
            for j in range(rows):
                p[t][j] += p[i][j]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
        t += 1
    return d, p, q


def diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def quotient_structure(rel, rank):
    """Describe ``Z^rank / rowspace(rel)``.

    Returns ``(orders, Q)``: ``orders[i]`` is the order of the i-th new basis
    element (0 for infinite) and an old coordinate row vector ``x`` has new
    coordinates ``x @ Q`` (reduce entry i modulo orders[i] when nonzero).
    """
    if rank == 0:
        return [], []
    rel = [list(r) for r in rel if any(r)]
    if not rel:
        return [0] * rank, identity(rank)
    d, _, q = smith_normal_form(rel, rank)
    diag = diagonal(d)
    orders = [diag[i] if i < len(diag) else 0 for i in range(rank)]
    return orders, q


def abelian_invariants(rel, ambient_rank):
    """Invariant factors of ``Z^rank / rowspace(rel)``; 0 marks a free factor."""
    orders, _ = quotient_structure(rel, ambient_rank)
    return [d for d in orders if d != 1]


def solve_kernel(images, moduli):
    """Integer row vectors ``c`` with ``c @ images ≡ 0`` coordinatewise.

    ``images`` has one row per unknown; column ``j`` is read modulo
    ``moduli[j]`` (0 means exact). Returns a basis of the solution lattice in
    Hermite form.
    """
    m = len(images)
    cols = len(moduli)
    if m == 0:
        return []
    aug = [list(images[i]) + [int(i == k) for k in range(m)] for i in range(m)]
    for j, mod in enumerate(moduli):
        if mod:
            aug.append([mod * int(k == j) for k in range(cols)] + [0] * m)
    h, _ = hermite_normal_form(aug)
    out = []
    for row in h:
        if not any(row[:cols]) and any(row[cols:]):
            out.append(row[cols:])
    return out
