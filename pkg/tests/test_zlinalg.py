from hypothesis import given, settings
from hypothesis import strategies as st

from qpc import zlinalg

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def test_xgcd():
    g, x, y = zlinalg.xgcd(12, 18)
    assert g == 6 and 12 * x + 18 * y == 6


def test_det():
    assert zlinalg.det([[2, 1], [7, 4]]) == 1
    assert zlinalg.det([[1, 2], [2, 4]]) == 0


def test_known_smith_form():
    d, _, _ = zlinalg.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert zlinalg.diagonal(d) == [2, 6, 12]


def test_abelian_invariants():
    # Z/4 + Z/6 = Z/2 + Z/12, plus one free factor
    assert zlinalg.abelian_invariants([[4, 0, 0], [0, 6, 0]], 3) == [2, 12, 0]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_properties(m):
    d, p, q = zlinalg.smith_normal_form(m)
    assert zlinalg.matmul(zlinalg.matmul(p, m), q) == d
    assert abs(zlinalg.det(p)) == 1 and abs(zlinalg.det(q)) == 1
    diag = zlinalg.diagonal(d)
    for i, row in enumerate(d):
        for j, v in enumerate(row):
            assert i == j or v == 0
    assert all(v >= 0 for v in diag)
    nonzero = [v for v in diag if v]
    assert diag[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hermite_form_properties(m):
    h, u = zlinalg.hermite_normal_form(m)
    assert zlinalg.matmul(u, m) == h
    assert abs(zlinalg.det(u)) == 1
    last = -1
    for row in h:
        if not any(row):
            last = len(row)
            continue
        pivot = next(j for j, v in enumerate(row) if v)
        assert pivot > last and row[pivot] > 0
        last = pivot
