"""Small example groups used by tests, the CLI and the README."""

from .pc import PcPresentation


def trivial():
    return PcPresentation((), group="1")


def cyclic(n):
    """C_n; n = 0 gives the infinite cyclic group."""
    if n == 1:
        return trivial()
    return PcPresentation((n,), group=f"C{n}" if n else "Z")


def abelian(*orders):
    orders = [e for e in orders if e != 1]
    return PcPresentation(orders, group=" x ".join(f"C{e}" if e else "Z" for e in orders) or "1")


def klein():
    return PcPresentation((2, 2), group="C2xC2")


def s3():
    return PcPresentation((2, 3), conjs={(1, 0): ((1, 2),)}, group="S3")


def d8():
    """Dihedral group of order 8: g1 a reflection, g2 a rotation, g3 = g2^2."""
    return PcPresentation((2, 2, 2), powers={1: ((2, 1),)},
                          conjs={(1, 0): ((1, 1), (2, 1))}, group="D8")


def q8():
    return PcPresentation((2, 2, 2), powers={0: ((2, 1),), 1: ((2, 1),)},
                          conjs={(1, 0): ((1, 1), (2, 1))}, group="Q8")


def dinf():
    return PcPresentation((2, 0), conjs={(1, 0): ((1, -1),)}, group="Dinf")


def corpus():
    """The standard test corpus as (label, presentation) pairs."""
    return [
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C6", cyclic(6)),
        ("C2xC2", klein()),
        ("S3", s3()),
        ("D8", d8()),
        ("Q8", q8()),
        ("Dinf", dinf()),
    ]


BY_NAME = {
    "trivial": trivial, "S3": s3, "D8": d8, "D4": d8, "Q8": q8, "Dinf": dinf,
    "C2xC2": klein,
}


def by_name(name):
    if name in BY_NAME:
        return BY_NAME[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise KeyError(name)
