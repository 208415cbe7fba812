"""Reading and writing presentation files (text and JSON).

Text format, one declaration per line, ``#`` starts a comment::

    group S3
    gens g1 g2
    pow g1^2 := id
    pow g2^3 := id
    conj g2^g1 := g2^2
    end

A generator without a ``pow`` line has infinite relative order. ``cinv a^b``
gives ``a^(b^-1)`` for an infinite generator ``b``. Covers add a line
``tails t1:2 t3:2`` naming the central tail generators and their orders.

JSON mirrors the same fields with 1-based generator indices and words as
arrays of ``[index, exponent]`` pairs.
"""

import json
import re

from .errors import PresentationSyntaxError
from .pc import PcPresentation, vector_to_word

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_REL_RE = re.compile(rf"^\s*({_IDENT})\s*\^\s*(\S+?)\s*:=\s*(.*?)\s*$")
_ATOM_RE = re.compile(rf"^({_IDENT})(?:\s*\^\s*([+-]?\d+))?$")


class ParsedFile:
    """A presentation plus optional tail metadata."""

    def __init__(self, pres, tails=None):
        self.pres = pres
        self.tails = tails or []


def parse_word(text, index, line=None, column=None):
    text = text.strip()
    if text in ("id", "1", ""):
        if text == "":
            raise PresentationSyntaxError("empty word", line, column)
        return ()
    word = []
    for part in text.split("*"):
        m = _ATOM_RE.match(part.strip())
        if not m:
            raise PresentationSyntaxError(f"bad word atom {part.strip()!r}", line, column)
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise PresentationSyntaxError(f"unknown generator {name!r}", line, column)
        e = int(exp) if exp is not None else 1
        if e == 0:
            raise PresentationSyntaxError("zero exponent in word", line, column)
        word.append((index[name], e))
    return tuple(word)


def parse_presentation(text):
    """Parse the text format (or JSON, detected by a leading brace)."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text).pres


def parse_text(text):
    group = None
    names = None
    pows, conjs, cinvs = {}, {}, {}
    orders = {}
    tails = []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ended:
            raise PresentationSyntaxError("content after 'end'", lineno, 1)
        col = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        rest_col = line.find(rest) + 1 if rest else col
        if keyword == "group":
            group = rest or None
        elif keyword == "gens":
            if names is not None:
                raise PresentationSyntaxError("duplicate gens line", lineno, col)
            names = rest.split()
            for k, nm in enumerate(names):
                if not re.fullmatch(_IDENT, nm) or nm == "id":
                    raise PresentationSyntaxError(f"bad generator name {nm!r}", lineno, rest_col)
            if len(set(names)) != len(names):
                raise PresentationSyntaxError("duplicate generator name", lineno, rest_col)
        elif keyword in ("pow", "conj", "cinv"):
            if names is None:
                raise PresentationSyntaxError("relation before gens line", lineno, col)
            index = {nm: k for k, nm in enumerate(names)}
            m = _REL_RE.match(rest)
            if not m:
                raise PresentationSyntaxError(f"malformed {keyword} declaration", lineno, rest_col)
            target, arg, rhs = m.groups()
            if target not in index:
                raise PresentationSyntaxError(f"unknown generator {target!r}", lineno, rest_col)
            i = index[target]
            word_col = line.find(":=") + 3
            word = parse_word(rhs, index, lineno, word_col)
            if keyword == "pow":
                try:
                    e = int(arg)
                except ValueError:
                    raise PresentationSyntaxError(f"bad exponent {arg!r}", lineno, rest_col) from None
                if e < 1:
                    raise PresentationSyntaxError("relative order must be at least 1", lineno, rest_col)
                if i in orders:
                    raise PresentationSyntaxError(f"duplicate pow relation for {target}", lineno, col)
                orders[i] = e
                pows[i] = word
            else:
                if arg not in index:
                    raise PresentationSyntaxError(f"unknown generator {arg!r}", lineno, rest_col)
                j = index[arg]
                if j >= i:
                    raise PresentationSyntaxError(
                        f"{keyword} {target}^{arg}: conjugator must precede the conjugated generator",
                        lineno, rest_col)
                table = conjs if keyword == "conj" else cinvs
                if (i, j) in table:
                    raise PresentationSyntaxError(f"duplicate {keyword} relation {target}^{arg}", lineno, col)
                table[(i, j)] = word
        elif keyword == "tails":
            for item in rest.split():
                nm, _, order = item.partition(":")
                try:
                    tails.append((nm, int(order or 0)))
                except ValueError:
                    raise PresentationSyntaxError(f"bad tail entry {item!r}", lineno, rest_col) from None
        elif keyword == "end":
            ended = True
        else:
            raise PresentationSyntaxError(f"unknown declaration {keyword!r}", lineno, col)
    if names is None:
        names = []
    pres = PcPresentation([orders.get(i, 0) for i in range(len(names))], pows, conjs, cinvs,
                          names=names, group=group)
    return ParsedFile(pres, tails)


def format_word(pres, word):
    if not word:
        return "id"
    return "*".join(pres.names[g] if e == 1 else f"{pres.names[g]}^{e}" for g, e in word)


def _relation_words(pres):
    """Collected right-hand sides of all stored or derived nontrivial relations."""
    pows = []
    for i, e in enumerate(pres.orders):
        if e:
            pows.append((i, e, vector_to_word(pres._power_vec(i))))
    conjs, cinvs = [], []
    for i in range(pres.n):
        for j in range(i):
            c = vector_to_word(pres._conj_table(i, j, 1))
            if c != ((i, 1),):
                conjs.append((i, j, c))
            if pres.orders[j] == 0:
                c = vector_to_word(pres._conj_table(i, j, -1))
                if c != ((i, 1),):
                    cinvs.append((i, j, c))
    return pows, conjs, cinvs


def format_presentation(pres, tails=None, name=None):
    """Deterministic text rendering with collected right-hand sides."""
    lines = [f"group {name or pres.group or 'G'}", "gens " + " ".join(pres.names)]
    pows, conjs, cinvs = _relation_words(pres)
    nm = pres.names
    for i, e, w in pows:
        lines.append(f"pow {nm[i]}^{e} := {format_word(pres, w)}")
    for i, j, w in conjs:
        lines.append(f"conj {nm[i]}^{nm[j]} := {format_word(pres, w)}")
    for i, j, w in cinvs:
        lines.append(f"cinv {nm[i]}^{nm[j]} := {format_word(pres, w)}")
    if tails:
        lines.append("tails " + " ".join(f"{t}:{o}" for t, o in tails))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _json_word(word):
    return [[g + 1, e] for g, e in word]


def presentation_to_dict(pres, tails=None, name=None):
    pows, conjs, cinvs = _relation_words(pres)
    out = {
        "group": name or pres.group or "G",
        "gens": list(pres.names),
        "pows": [[i + 1, e, _json_word(w)] for i, e, w in pows],
        "conjs": [[i + 1, j + 1, _json_word(w)] for i, j, w in conjs],
        "cinvs": [[i + 1, j + 1, _json_word(w)] for i, j, w in cinvs],
    }
    if tails:
        out["tails"] = [[t, o] for t, o in tails]
    return out


def presentation_from_dict(data):
    try:
        names = list(data.get("gens", []))
        n = len(names)

        def word(w):
            return tuple((int(g) - 1, int(e)) for g, e in w)

        orders = [0] * n
        pows = {}
        for i, e, w in data.get("pows", []):
            orders[int(i) - 1] = int(e)
            pows[int(i) - 1] = word(w)
        conjs = {(int(i) - 1, int(j) - 1): word(w) for i, j, w in data.get("conjs", [])}
        cinvs = {(int(i) - 1, int(j) - 1): word(w) for i, j, w in data.get("cinvs", [])}
    except (TypeError, ValueError, AttributeError) as exc:
        raise PresentationSyntaxError(f"malformed JSON presentation: {exc}") from None
    return PcPresentation(orders, pows, conjs, cinvs, names=names, group=data.get("group"))


def parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return presentation_from_dict(data)
