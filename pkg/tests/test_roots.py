from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from hookpoly.numerics import ThetaSpec, theta_lattice
from hookpoly.poly import WPolynomial
from hookpoly.roots import (cauchy_bound, find_roots, reconstruction_check, theta_zeros, vieta_check)
from hookpoly.series import RationalPair, expand_Ht, pab_polynomial


def from_roots(rs, lead=1):
    p = WPolynomial([lead])
    for r in rs:
        p = p * WPolynomial([-r, 1])
    return p


def test_cauchy_bound_examples():
    assert cauchy_bound(WPolynomial([-1, 0, 1])) == 2
    assert cauchy_bound(WPolynomial([8, 0, 2])) == 5
    with pytest.raises(ValueError):
        cauchy_bound(WPolynomial([3]))


def test_simple_quadratic():
    rs = find_roots(WPolynomial([-1, 0, 1]))
    got = sorted(float(r.value.real) for r in rs.roots)
    assert got == pytest.approx([-1, 1], abs=1e-30)
    assert rs.zero_multiplicity == 0


def test_zero_roots_split_off():
    p = WPolynomial([0, 0, 0, -2, 0, 1])  # w^3 (w^2 - 2)
    rs = find_roots(p)
    assert rs.zero_multiplicity == 3
    assert len(rs) == 2
    for r in rs.roots:
        assert abs(abs(r.value) - mp.sqrt(2)) < 1e-30


def test_constant_rejected():
    with pytest.raises(ValueError):
        find_roots(WPolynomial([5]))


@given(st.lists(st.integers(-30, 30).filter(bool), min_size=1, max_size=8, unique=True), st.integers(1, 5))
def test_recovers_integer_roots(rs, lead):
    p = from_roots(rs, lead)
    got = find_roots(p)
    assert len(got) == len(rs)
    for r in rs:
        assert min(abs(z.value - r) for z in got.roots) < 1e-25


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=20).filter(lambda c: c[-1] != 0 and any(c[:-1])))
def test_every_root_inside_cauchy_bound(c):
    p = WPolynomial(c)
    B = cauchy_bound(p)
    for r in find_roots(p).roots:
        assert abs(r.value) < mp.mpf(B.numerator) / B.denominator


def test_errors_enclose_roots():
    # (w - 1/3)(w + 2/7) scaled to integers: 21 w^2 - w - 2
    rs = find_roots(WPolynomial([-2, -1, 21]))
    want = [mp.mpf(-2) / 7, mp.mpf(1) / 3]
    for r, w in zip(rs.roots, want):
        assert abs(r.value - w) <= r.err


def test_hook_polynomial_checks():
    p = expand_Ht(7, 60)[60]
    rs = find_roots(p)
    assert vieta_check(p, rs) < 1e-25
    pts = [mp.mpc(2, 1), mp.mpf(-3), mp.mpc(0.5, -0.25)]
    assert reconstruction_check(p, rs, pts) < 1e-25
    # real coefficients: the root multiset is closed under conjugation
    zs = rs.complex_roots()
    for z in zs:
        assert min(abs(z.conjugate() - y) for y in zs) < 1e-20


def test_deterministic():
    p = expand_Ht(5, 40)[40]
    a, b = find_roots(p), find_roots(p)
    assert [r.value for r in a.roots] == [r.value for r in b.roots]


def test_sparse_family_polynomial():
    ab = RationalPair(Fraction(1, 3), Fraction(2, 7))
    p = pab_polynomial(ab, Fraction(7114, 21))
    rs = find_roots(p)
    assert rs.zero_multiplicity == 5
    assert len(rs) == 21
    with mp.workprec(rs.prec):
        prod = mp.fprod(abs(r.value) for r in rs.roots)
        assert abs(prod - mp.mpf(4450838) / 281936495) < 1e-30
    assert vieta_check(p, rs) < 1e-25


# -- zeros of theta in a disc

def test_theta_zero_counts_stable():
    s = ThetaSpec(7, 5)
    a = theta_zeros(s, 0.5)
    b = theta_zeros(s, 0.5, samples=64)
    assert a.count == b.count == len(a.zeros)
    for x, y in zip(a.zeros, b.zeros):
        assert abs(x.value - y.value) < 1e-20


def test_theta_zeros_are_zeros_of_another_form():
    s = ThetaSpec(7, 5)
    rep = theta_zeros(s, 0.5)
    assert rep.count > 0
    for z in rep.zeros:
        assert abs(z.value) <= rep.radius
        v = theta_lattice(s, z.value, 1e-30)
        # Theta is analytic near z, so |Theta(z)| is at most its derivative times the radius
        assert abs(v.value) < 1e-20


def test_theta_zeros_conjugate_symmetric():
    rep = theta_zeros(ThetaSpec(5, 2), 0.5)
    zs = [complex(z.value) for z in rep.zeros]
    for z in zs:
        assert min(abs(z.conjugate() - y) for y in zs) < 1e-15


def test_small_disc_has_no_zeros():
    # the zero of smallest modulus for (7, 5) is near -0.305; a disc of radius 1/6 misses it
    rep = theta_zeros(ThetaSpec(7, 5), 5.0)
    assert rep.count == 0 and rep.zeros == []


def test_exceptional_set_reciprocals():
    rep = theta_zeros(ThetaSpec(7, 5), 0.5)
    for z, y in zip(rep.zeros, rep.exceptional_set()):
        assert abs(z.value * y.value - 1) < 1e-25


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        theta_zeros(ThetaSpec(7, 5), 0)
