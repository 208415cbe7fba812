"""Word expressions: products, integer powers, conjugates and commutators.

Grammar::

    expr   := term ('*' term)*
    term   := atom ('^' (INT | atom))*
    atom   := NAME | 'id' | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'

``u^v`` is ``v^-1 u v`` and ``[u, v, w]`` is the left-normed commutator
``[[u, v], w]`` with ``[u, v] = u^-1 v^-1 u v``. Expressions parse to small
tuple trees so that callers can also build them programmatically.
"""

import re

from .errors import PresentationSyntaxError

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([+-]?\d+)|(.))")

IDENTITY = ("id",)


def gen(name):
    return ("gen", name)


def mul(*parts):
    parts = [p for p in parts if p != IDENTITY]
    if not parts:
        return IDENTITY
    if len(parts) == 1:
        return parts[0]
    return ("mul",) + tuple(parts)


def power(x, k):
    if k == 1:
        return x
    if k == 0 or x == IDENTITY:
        return IDENTITY
    return ("pow", x, k)


def inverse(x):
    return power(x, -1)


def conj(x, y):
    return ("conj", x, y)


def comm(*xs):
    return ("comm",) + tuple(xs)


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        name, num, sym = m.groups()
        col = m.start(m.lastindex) + 1
        if name is not None:
            out.append(("name", name, col))
        elif num is not None:
            out.append(("int", int(num), col))
        elif sym.strip():
            out.append(("sym", sym, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise PresentationSyntaxError(f"expected {want!r}", 1, tok[2])
        self.i += 1
        return tok

    def expr(self):
        parts = [self.term()]
        while self.peek()[:2] == ("sym", "*"):
            self.take()
            parts.append(self.term())
        return mul(*parts)

    def term(self):
        x = self.atom()
        while self.peek()[:2] == ("sym", "^"):
            self.take()
            tok = self.peek()
            if tok[0] == "int":
                self.take()
                x = power(x, tok[1])
            else:
                x = conj(x, self.atom())
        return x

    def atom(self):
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            return IDENTITY if tok[1] == "id" else gen(tok[1])
        if tok[0] == "int" and tok[1] == 1:
            self.take()
            return IDENTITY
        if tok[:2] == ("sym", "("):
            self.take()
            x = self.expr()
            self.take("sym", ")")
            return x
        if tok[:2] == ("sym", "["):
            self.take()
            xs = [self.expr()]
            while self.peek()[:2] == ("sym", ","):
                self.take()
                xs.append(self.expr())
            self.take("sym", "]")
            if len(xs) < 2:
                raise PresentationSyntaxError("commutator needs at least two entries", 1, tok[2])
            return comm(*xs)
        raise PresentationSyntaxError(f"unexpected token {tok[1]!r}", 1, tok[2])


def parse_expression(text):
    p = _Parser(text)
    x = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise PresentationSyntaxError(f"unexpected token {tok[1]!r}", 1, tok[2])
    return x


def evaluate(pres, expr, env=None):
    """Normal form of an expression in ``pres``.

    Names resolve through ``env`` (name -> normal form) first, then the
    presentation's generator names.
    """
    if isinstance(expr, str):
        expr = parse_expression(expr)
    env = env or {}
    cache = {}

    def ev(x):
        kind = x[0]
        if kind == "id":
            return pres.identity()
        if kind == "gen":
            name = x[1]
            if name in env:
                return tuple(env[name])
            if name not in cache:
                try:
                    cache[name] = pres.gen(pres.index_of(name))
                except KeyError:
                    raise PresentationSyntaxError(f"unknown generator {name!r}") from None
            return cache[name]
        if kind == "mul":
            return pres.mul(*[ev(y) for y in x[1:]])
        if kind == "pow":
            return pres.pow(ev(x[1]), x[2])
        if kind == "conj":
            return pres.conj(ev(x[1]), ev(x[2]))
        if kind == "comm":
            return pres.comm(*[ev(y) for y in x[1:]])
        raise ValueError(f"bad expression node {kind!r}")

    return ev(expr)


def format_expression(x):
    kind = x[0]
    if kind == "id":
        return "id"
    if kind == "gen":
        return x[1]
    if kind == "mul":
        return "*".join(_wrap(y, ("mul",)) for y in x[1:])
    if kind == "pow":
        return f"{_wrap(x[1], ('mul', 'pow', 'conj'))}^{x[2]}"
    if kind == "conj":
        return f"{_wrap(x[1], ('mul', 'pow', 'conj'))}^{_wrap(x[2], ('mul', 'pow', 'conj'))}"
    if kind == "comm":
        return "[" + ",".join(format_expression(y) for y in x[1:]) + "]"
    raise ValueError(f"bad expression node {kind!r}")


def _wrap(x, kinds):
    s = format_expression(x)
    return f"({s})" if x[0] in kinds else s
