from fractions import Fraction as F

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from hookpoly.numerics import PrecComplex
from hookpoly.partitions import brute_force_Pt, brute_force_Qn, partition_numbers, superdistinct_partitions
from hookpoly.poly import WPolynomial
from hookpoly.series import (GridError, QSeries, RationalPair, TruncationError, colored_partition_counts,
                             default_degree_cap, evaluate_wpoly, expand_Ht, expand_pab, expand_Qn, expand_tcore,
                             pab_polynomial, series_mul_factor)


def test_mul_factor_geometric():
    s = series_mul_factor(QSeries.one(3), -1, 1, 0, -1)
    assert s.scalar_list() == [1, 1, 1, 1]
    s = series_mul_factor(QSeries.one(2), -1, 1, 1, -1)
    assert s.coefficient_list() == [WPolynomial([1]), WPolynomial([0, 1]), WPolynomial([0, 0, 1])]
    s = QSeries.one(3)
    for k in (1, 2, 3):
        s = series_mul_factor(s, -1, k, 0, -1)
    assert s.scalar_list() == [1, 1, 2, 3]


def test_mul_factor_inverse_pair():
    s = QSeries.one(10)
    s = series_mul_factor(s, 1, 2, 3, 1)
    s = series_mul_factor(s, 1, 2, 3, -1)
    assert s.coefficient_list() == QSeries.one(10).coefficient_list()


def test_grid_errors():
    s = QSeries.one(5, 3)
    with pytest.raises(GridError):
        series_mul_factor(s, -1, F(1, 2), 0, -1)
    with pytest.raises(GridError):
        s.coeff(F(1, 2))
    with pytest.raises(TruncationError):
        s.coeff(6)
    with pytest.raises(GridError):
        QSeries.one(10**7)
    assert s.coeff(F(2, 3)) == WPolynomial()


def test_expand_Ht_examples():
    assert expand_Ht(2, 2) == [WPolynomial([1]), WPolynomial([1]), WPolynomial([0, 2])]
    assert expand_Ht(7, 5)[5] == WPolynomial([7])


def test_hook_one_is_degenerate():
    p = partition_numbers(50)
    assert expand_Ht(1, 50) == [WPolynomial.monomial(p[n], n) for n in range(51)]


@pytest.mark.parametrize("t", range(1, 9))
def test_Ht_matches_enumeration(t):
    E = expand_Ht(t, 22)
    assert E == [brute_force_Pt(t, n) for n in range(23)]


def test_Qn_matches_enumeration():
    Q = expand_Qn(20)
    assert Q == [brute_force_Qn(n) for n in range(21)]
    assert Q[5] == WPolynomial([0, 1, 2, 2, 1, 1])
    assert Q[0] == WPolynomial([1])
    p = partition_numbers(20)
    assert [q(1) for q in Q] == p


@pytest.mark.parametrize("t", range(1, 11))
def test_specializations(t):
    E = expand_Ht(t, 150)
    c = expand_tcore(t, 150)
    p = partition_numbers(150)
    for n, P in enumerate(E):
        assert P(1) == p[n]
        assert P(0) == c[n]
        if n >= t:
            assert P.degree == n // t


def test_tcore_gaps():
    c2 = expand_tcore(2, 100)
    tri = {k * (k + 1) // 2 for k in range(20)}
    assert all((c2[n] != 0) == (n in tri) for n in range(101))
    assert expand_tcore(7, 30)[0] == 1
    assert expand_tcore(7, 30)[30] == expand_Ht(7, 30)[30](0)


def test_colored_counts():
    # prod (1-u^n)^(-2): 1, 2, 5, 10, 20, 36
    assert colored_partition_counts(2, 5) == [1, 2, 5, 10, 20, 36]


def test_pab_small():
    assert pab_polynomial(RationalPair(1, 0), 4) == WPolynomial([0, 1, 1])
    assert pab_polynomial(RationalPair(1, 1), 4) == WPolynomial([0, 1])
    assert pab_polynomial(RationalPair(1, 0), 1000).degree == 31


def test_pab_7114_21():
    p = pab_polynomial(RationalPair(F(1, 3), F(2, 7)), F(7114, 21))
    assert p == WPolynomial.from_terms({26: 281936495, 19: 567030825181, 5: 4450838})
    s = expand_pab(RationalPair(F(1, 3), F(2, 7)), F(7114, 21))
    assert s.delta == 21
    assert s.coeff(F(7114, 21)) == p


def test_pab_off_grid():
    with pytest.raises(GridError):
        pab_polynomial(RationalPair(F(1, 3), 0), F(1, 2))
    with pytest.raises(ValueError):
        RationalPair(0, 1)
    with pytest.raises(ValueError):
        RationalPair(1, -2)


@pytest.mark.parametrize("b", [0, 1])
def test_superdistinct_coefficients(b):
    for n in range(0, 31):
        counts = {}
        for parts in superdistinct_partitions(n, 1 + b):
            counts[len(parts)] = counts.get(len(parts), 0) + 1
        assert pab_polynomial(RationalPair(1, b), n) == WPolynomial.from_terms(counts)


@given(st.fractions(F(1, 5), 3, max_denominator=6), st.fractions(-1, 2, max_denominator=6))
def test_series_and_single_coefficient_agree(a, b):
    if a + b < 0:
        return
    ab = RationalPair(a, b)
    nmax = F(30)
    s = expand_pab(ab, nmax)
    for e in range(0, int(nmax * ab.delta) + 1, 7):
        n = F(e, ab.delta)
        assert s.coeff(n) == pab_polynomial(ab, n)


def test_integer_grid_consistency():
    s = expand_pab(RationalPair(1, 0), 40)
    assert s.delta == 1
    assert [s.coeff(n) for n in range(41)] == [pab_polynomial(RationalPair(1, 0), n) for n in range(41)]
    assert default_degree_cap(RationalPair(1, 0), 1000) == 32


def test_evaluate_wpoly_examples():
    assert evaluate_wpoly(WPolynomial([-1, 0, 1]), 1).value == 0
    assert evaluate_wpoly(expand_Qn(5)[5], 1).value == 7
    P = expand_Ht(7, 425)[425]
    assert evaluate_wpoly(P, 0).value == expand_tcore(7, 425)[425]


@given(st.lists(st.integers(-10**40, 10**40), min_size=1, max_size=30),
       st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False))
def test_evaluate_wpoly_bound(cs, w):
    p = WPolynomial(cs)
    v = evaluate_wpoly(p, w, prec=64)
    with mp.workprec(400):
        ref = mp.polyval([mp.mpf(c) for c in reversed(cs)], mp.mpc(w))
        assert abs(v.value - ref) <= v.err + mp.mpf(10) ** -300


def test_evaluate_wpoly_input_error():
    p = WPolynomial([1, 1, 1])
    v = evaluate_wpoly(p, PrecComplex(mp.mpf(2), 64, mp.mpf("1e-10")))
    assert v.err >= 5e-10
