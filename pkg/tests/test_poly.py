from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hookpoly.poly import WPolynomial, format_fraction, parse_fraction

coeffs = st.lists(st.integers(-10**30, 10**30), max_size=8)


def test_basics():
    p = WPolynomial([-1, 0, 1, 0, 0])
    assert p.coeffs == (-1, 0, 1)
    assert p.degree == 2
    assert p.terms() == {0: -1, 2: 1}
    assert p.lead == 1
    assert WPolynomial().degree is None
    assert WPolynomial([0, 0]).is_zero()
    assert WPolynomial.from_terms({3: 2, 1: 0}).coeffs == (0, 0, 0, 2)
    assert WPolynomial.monomial(5, 2) == WPolynomial([0, 0, 5])
    assert WPolynomial([0, 0, 3, 4]).valuation() == 2
    assert WPolynomial([0, 0, 3, 4]).shift_down(2) == WPolynomial([3, 4])
    with pytest.raises(ValueError):
        WPolynomial([1, 1]).shift_down(1)


@given(coeffs, coeffs, st.integers(-5, 5))
def test_ring_laws(a, b, x):
    p, q = WPolynomial(a), WPolynomial(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert p + q == q + p


def test_fraction_parsing():
    assert parse_fraction("7114/21") == Fraction(7114, 21)
    assert parse_fraction("−3") == -3
    for bad in ("0.5", "1e3", "2.0/3"):
        with pytest.raises(ValueError):
            parse_fraction(bad)
    assert format_fraction(Fraction(6, 3)) == "2"
    assert format_fraction(Fraction(-1, 3)) == "-1/3"
