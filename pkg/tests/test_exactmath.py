from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiqp.exactmath import IntMatrix, RatPolynomial, interpolate_polynomial, smith_elementary_divisors

from _oracle import lagrange, minor_divisors


@pytest.mark.parametrize("rows, expected", [
    ([[2, 0], [0, 2]], (2, 2)),
    ([[1, 1], [1, -1]], (1, 2)),
    ([[1, 0]], (1,)),
])
def test_elementary_divisor_examples(rows, expected):
    assert smith_elementary_divisors(IntMatrix.from_rows(rows)) == expected


def test_zero_matrix_has_no_divisors():
    assert smith_elementary_divisors(IntMatrix.from_rows([[0, 0], [0, 0]])) == ()


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_divisors_match_minor_gcds(rows):
    d = smith_elementary_divisors(IntMatrix.from_rows(rows))
    assert d == minor_divisors(rows)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(v > 0 for v in d)


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3))
def test_divisors_invariant_under_row_operations(rows, a, b, k):
    n = len(rows)
    a, b = a % n, b % n
    moved = [list(r) for r in rows]
    if a != b:
        moved[a] = [x + k * y for x, y in zip(moved[a], moved[b])]
        moved[a], moved[b] = moved[b], moved[a]
    assert smith_elementary_divisors(IntMatrix.from_rows(moved)) == smith_elementary_divisors(IntMatrix.from_rows(rows))


def test_columns_and_rows_agree():
    m = IntMatrix.from_columns([(1, 2), (3, 4), (5, 6)])
    assert m.to_rows() == [[1, 3, 5], [2, 4, 6]]


@pytest.mark.parametrize("points, expected", [
    ([(1, 1), (2, 4), (3, 9)], [0, 0, 1]),
    ([(5, 3), (7, 5), (9, 7)], [-2, 1]),
    ([(3, 0), (5, 4), (7, 16), (9, 36)], [9, -6, 1]),
])
def test_interpolation_examples(points, expected):
    p = interpolate_polynomial(points)
    assert p.coeffs == tuple(Fraction(c) for c in expected)
    assert all(p(x) == y for x, y in points)


def test_duplicate_abscissa_rejected():
    with pytest.raises(ValueError):
        interpolate_polynomial([(1, 1), (1, 2)])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.integers(-10, 10))
def test_interpolation_round_trip(coeffs, start):
    p = RatPolynomial(tuple(Fraction(c) for c in coeffs))
    xs = range(start, start + len(coeffs))
    fitted = interpolate_polynomial([(x, p(x)) for x in xs])
    assert fitted == p
    assert all(fitted(x) == lagrange([(x0, p(x0)) for x0 in xs], x) for x in range(-5, 5))


def test_polynomial_arithmetic_and_printing():
    t = RatPolynomial((Fraction(-4), Fraction(1)))
    sq = t * t
    assert sq.coeffs == (16, -8, 1) and sq.degree == 2 and sq.leading == 1
    assert (sq - sq).is_zero
    assert RatPolynomial.from_pairs(sq.to_pairs()) == sq
    assert str(sq) == "q^2 - 8*q + 16"
