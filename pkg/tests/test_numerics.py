import math
import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from hookpoly.numerics import (ConvergenceError, DomainError, PrecComplex, ThetaSpec, At_partial_sum, dedekind_sum,
                               euler_inf, eval_At, lattice_exponents, omega, omega_prime, theta_lattice,
                               theta_partition_form, theta_reduced, theta_roots_of_unity_form)
from hookpoly.partitions import partition_numbers

FORMS = (theta_lattice, theta_partition_form, theta_roots_of_unity_form)


# -- PrecComplex

def test_prec_complex_validation():
    with pytest.raises(ValueError):
        PrecComplex(1, 64, -1)
    with pytest.raises(ValueError):
        PrecComplex(1, 64, mp.inf)


small = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
errs = st.floats(0, 1e-3)


@given(small, small, errs, errs, st.floats(-1, 1), st.floats(-1, 1))
def test_error_propagation_contains_truth(a, b, ea, eb, sa, sb):
    A, B = PrecComplex(a, 64, ea), PrecComplex(b, 64, eb)
    ta, tb = mp.mpc(a) + sa * ea, mp.mpc(b) + sb * eb
    for got, want in ((A + B, ta + tb), (A - B, ta - tb), (A * B, ta * tb)):
        assert abs(got.value - want) <= got.err * (1 + 1e-12) + 1e-30
    if abs(b) > 2 * eb + 1e-6:
        q = A / B
        assert abs(q.value - ta / tb) <= q.err * (1 + 1e-12) + 1e-30


def test_division_by_uncertain_zero():
    with pytest.raises(ZeroDivisionError):
        PrecComplex(1) / PrecComplex(0, 64, 1e-3)


# -- Euler function

def test_euler_zero():
    assert euler_inf(0).value == 1


def test_euler_half_against_partitions():
    E = euler_inf(mp.mpf(0.5), 1e-30)
    p = partition_numbers(200)
    s = mp.fsum(p[n] * mp.mpf(0.5) ** n for n in range(201))
    assert abs(1 / E.value - s) < 1e-25


def test_euler_complex_against_longer_product():
    a = mp.mpc(-0.3, 0.2)
    E = euler_inf(a, 1e-30)
    with mp.workprec(200):
        ref = mp.fprod(1 - a**k for k in range(1, 400))
    assert abs(E.value - ref) <= E.err
    assert E.err < 1e-30


def test_euler_domain():
    with pytest.raises(DomainError):
        euler_inf(0.9999999)
    with pytest.raises(DomainError):
        euler_inf(1.5)


def test_euler_cap():
    with pytest.raises(ConvergenceError):
        euler_inf(mp.mpf("0.999"), 1e-30, cap=100)


# -- theta

@pytest.mark.parametrize("t", [2, 3, 7])
def test_theta_at_zero(t):
    for ell in range(t):
        for f in FORMS:
            assert f(ThetaSpec(t, ell), 0).value == (1 if ell == 0 else 0)


def test_theta_spec_validation():
    with pytest.raises(ValueError):
        ThetaSpec(3, 3)
    with pytest.raises(ValueError):
        ThetaSpec(0, 0)


@pytest.mark.parametrize("spec,z", [((7, 3), mp.mpc(0.3, 0.2)), ((5, 2), mp.mpf(0.5)), ((3, 1), mp.mpc(-0.6, 0.1))])
def test_theta_forms_agree(spec, z):
    s = ThetaSpec(*spec)
    vals = [f(s, z, 1e-30) for f in FORMS]
    for a in vals:
        for b in vals:
            assert abs(a.value - b.value) <= a.err + b.err
        assert a.err < 1e-20


def test_theta_two_zero_one_dimensional():
    # m = (k, -k); the residue condition forces k even; exponent k^2 - k/2
    z = mp.mpf(0.25)
    with mp.workprec(150):
        ref = mp.fsum(z ** (mp.mpf(k * k) - mp.mpf(k) / 2) for k in range(-40, 41, 2))
    v = theta_lattice(ThetaSpec(2, 0), z, 1e-35)
    assert abs(v.value - ref) <= v.err + 1e-40


def test_theta_t_one_is_one():
    for z in (mp.mpf(0.4), mp.mpc(0.1, -0.6)):
        v = theta_roots_of_unity_form(ThetaSpec(1, 0), z)
        assert abs(v.value - 1) <= v.err + 1e-35


def test_roots_of_unity_orthogonality():
    t, z = 5, mp.mpc(0.2, 0.35)
    total = sum((theta_roots_of_unity_form(ThetaSpec(t, ell), z).value for ell in range(t)), mp.mpc(0))
    with mp.workprec(150):
        root = mp.exp(mp.log(z) / t)
        want = mp.qp(z) ** t / mp.qp(root)
    assert abs(total - want) < 1e-28


@pytest.mark.parametrize("t", [2, 3, 4, 5])
def test_lattice_exponent_structure(t):
    for ell in range(t):
        for e in lattice_exponents(ThetaSpec(t, ell), 3):
            assert e >= 0
            assert (e - Fraction(ell, t)).denominator == 1


def test_reduced_theta_derivative():
    s = ThetaSpec(7, 5)
    z, h = mp.mpc(0.3, 0.1), mp.mpf("1e-12")
    g, dg = theta_reduced(s, z, 1e-40, 160, derivative=True)
    gp = theta_reduced(s, z + h, 1e-40, 160)
    gm = theta_reduced(s, z - h, 1e-40, 160)
    assert abs((gp.value - gm.value) / (2 * h) - dg) < 1e-8 * abs(dg)


def test_theta_domain():
    with pytest.raises(DomainError):
        theta_lattice(ThetaSpec(3, 0), 1.0)
    with pytest.raises(DomainError):
        theta_partition_form(ThetaSpec(3, 0), mp.mpc(0.8, 0.8))


# -- Dedekind sums and multipliers

def test_dedekind_examples():
    assert dedekind_sum(0, 1) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(4, 3) == Fraction(1, 18)
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)


def test_dedekind_reciprocity():
    rng = random.Random(7)
    done = 0
    while done < 100:
        k = rng.randint(1, 500)
        h = rng.randint(1, 500)
        if math.gcd(h, k) != 1:
            continue
        lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
        rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
        assert lhs == rhs
        done += 1


def test_omega_values():
    assert omega(0, 1).value == 1
    assert abs(omega(1, 3).value - mp.expjpi(mp.mpf(1) / 18)) < 1e-35
    assert abs(omega_prime(1, 3, 7).value - mp.expjpi(mp.mpf(-1) / 3)) < 1e-35
    for t in (1, 6, 7):
        assert abs(omega_prime(0, 1, t).value - 1) < 1e-35
    for h, k in ((5, 12), (7, 9), (3, 14)):
        assert abs(abs(omega(h, k).value) - 1) < 1e-35
        assert abs(abs(omega_prime(h, k, 7).value) - 1) < 1e-35


# -- A_t

def test_At_domain():
    with pytest.raises(DomainError):
        eval_At(5, 0, 10)
    with pytest.raises(DomainError):
        eval_At(7, 0.2, 10, w0=0.05)


@pytest.mark.parametrize("t", [6, 7, 8, 9, 10])
def test_At_w0_bounds(t):
    for n in (0, 7, 13, 50, 199):
        A = eval_At(t, 0, n, 1e-12)
        assert abs(A.value.imag) <= A.err
        assert 0.05 < A.value.real < 2.62
        assert A.err < 1e-10


def test_At_real_for_real_w():
    for w in (0.01, 0.05):
        A = eval_At(7, w, 100)
        assert abs(A.value.imag) <= A.err + 1e-30


def test_At_continuity_in_w():
    base = eval_At(7, 0, 100).value
    diffs = [abs(eval_At(7, w, 100).value - base) for w in (0.05, 0.01, 0.001)]
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] < 1e-2


@pytest.mark.parametrize("t,w,n,tol", [(10, 0, 50, 1e-4), (10, 0.05, 50, 1e-4), (12, 0.05, 30, 1e-5),
                                       (8, 0, 20, 1e-2)])
def test_At_series_matches_direct_sum(t, w, n, tol):
    a = eval_At(t, w, n, tol, method="direct")
    b = eval_At(t, w, n, 1e-12, method="series")
    assert abs(a.value - b.value) <= a.err + b.err


def test_At_partial_sum_approaches_exact():
    exact = eval_At(9, 0, 40).value
    gaps = [abs(At_partial_sum(9, 0, 40, K).value - exact) for K in (10, 100, 400)]
    assert gaps[-1] < gaps[0]
    assert gaps[-1] < 1e-3
