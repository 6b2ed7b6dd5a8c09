"""Exact evaluation of the singular series ``A_t(n)`` (the ``w = 0`` value).

The k-sum ``sum_k k^(-(t-1)/2) S_k(n)`` with
``S_k(n) = sum_h e(-hn/k) w'_{h,k}`` has multiplicative coefficients, so it
factors as an Euler product.  With ``M = 24 n + t^2 - 1`` and ``kappa = (t-1)/2``:

* odd t: ``S_{p^j} = chi(p)^j c_{p^j}(M/24)`` (Ramanujan sums), ``chi`` the
  Kronecker character of ``(-1)^((t-1)/2) t``;
* even t: for ``p`` not dividing ``M`` we get ``S_p = chi(p) sqrt(p)`` and
  ``S_{p^j} = 0`` for ``j >= 2``, ``chi`` the character of
  ``(-1)^((t-2)/2) 3 M``.  Primes dividing ``M`` follow the Ramanujan sum at
  even ``j`` and a twisted Gauss sum at odd ``j``.

Primes 2 and 3 (when prime to t) are summed directly: every term is a root
of unity with an exact integer phase mod 24k, so small moduli are summed at
working precision from a phase histogram and only very large ones fall back
to the double-precision kernel, with a matching error bound.  The remaining infinite product is a Dirichlet L-value at an integer
point, computed exactly from generalized Bernoulli numbers when the parity
allows it and by an incomplete-gamma theta series otherwise.  The local formulas above are
cross-checked against direct phase sums in the test suite.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .kernels import dedekind12k, phase_sum

DIRECT_PRIME_POWER_CAP = 1 << 24
EXACT_PHASE_CAP = 1 << 16


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|`` (inputs here stay below ~10^7)."""
    n = abs(n)
    out: dict[int, int] = {}
    if n == 0:
        raise ValueError("cannot factor 0")
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1 if abs(a) == 1 else 0
    res = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            res = -res
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def fundamental_discriminant(D: int) -> int:
    """The fundamental discriminant ``d`` with ``D = d f^2``."""
    if D == 0:
        raise ValueError("D must be nonzero")
    core = 1
    for p, e in factorize(D).items():
        if e % 2:
            core *= p
    d = core if D > 0 else -core
    return d if d % 4 == 1 else 4 * d


@lru_cache(maxsize=None)
def bernoulli_numbers(N: int) -> tuple[Fraction, ...]:
    """``B_0..B_N`` with ``B_1 = -1/2``."""
    B = [Fraction(0)] * (N + 1)
    for m in range(N + 1):
        B[m] = Fraction(1) if m == 0 else -sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1)
    return tuple(B)


@lru_cache(maxsize=4096)
def generalized_bernoulli(s: int, d: int) -> Fraction:
    """``B_{s, chi_d}`` for the primitive character of fundamental discriminant ``d``."""
    q = abs(d)
    power = [0] * (s + 1)
    for a in range(1, q + 1):
        c = kronecker(d, a)
        if c:
            x = c
            for i in range(s + 1):
                power[i] += x
                x *= a
    B = bernoulli_numbers(s)
    # q^(s-1) * sum_a chi(a) B_s(a/q), with B_s(x) = sum_i C(s,i) B_(s-i) x^i
    total = Fraction(0)
    for i in range(s + 1):
        total += math.comb(s, i) * B[s - i] * Fraction(power[i]) * Fraction(q) ** (s - 1 - i)
    return total


def dirichlet_L(s: int, d: int) -> mp.mpf:
    """``L(s, chi_d)`` for integer ``s >= 2`` at the current mpmath precision."""
    q = abs(d)
    if q == 1:
        return mp.zeta(s)
    odd = 1 if d < 0 else 0
    if (s - odd) % 2 == 0:
        Bs = generalized_bernoulli(s, d)
        # functional equation at a critical point; the Gauss sum is sqrt(d)
        val = (2 * mp.pi / q) ** s * mp.sqrt(q) / 2 * mp.mpf(Bs.numerator) / Bs.denominator / mp.factorial(s)
        sign = (-1) ** (1 + (s - odd) // 2)
        return sign * val
    return _L_theta_series(s, d)


def _L_theta_series(s: int, d: int) -> mp.mpf:
    # Mellin transform of the character theta function split at x = 1; a real
    # primitive character has root number 1, so both halves use chi itself.
    # Needs O(sqrt(q)) incomplete gamma values where mp.dirichlet needs q
    # Hurwitz zetas.
    q = abs(d)
    a = 1 if d < 0 else 0
    u = mp.mpf(s + a) / 2
    v = mp.mpf(1 - s + a) / 2
    cut = (mp.mp.prec + 30) * mp.log(2) + abs(u) + abs(v)
    total = mp.mpf(0)
    n = 1
    while True:
        X = mp.pi * n * n / q
        c = kronecker(d, n)
        if c:
            term = mp.gammainc(u, X) * X ** (-u) + mp.gammainc(v, X) * X ** (-v)
            total += c * mp.mpf(n) ** a * term
        if X > cut + a * mp.log(n):
            break
        n += 1
    return total / (mp.gamma(u) * (q / mp.pi) ** u)


def phase_histogram(t: int, k: int, n: int) -> Counter:
    """Integer phases ``ph`` (mod ``24k``) of the terms of ``S_k(n)``, with multiplicity."""
    g = math.gcd(t, k)
    k2 = k // g
    tg = t // g
    mod = 24 * k
    n24 = (24 * n) % mod
    out: Counter = Counter()
    for h in range(k):
        if math.gcd(h, k) == 1:
            ph = -h * n24 + dedekind12k(h, k) - t * g * dedekind12k((tg * h) % k2, k2)
            out[ph % mod] += 1
    return out


def phase_sum_real(t: int, k: int, n: int) -> tuple[mp.mpf, mp.mpf]:
    """``Re S_k(n)`` and an absolute error bound.

    Exact up to working-precision rounding for ``k <= EXACT_PHASE_CAP``;
    beyond that the double kernel is used and the bound covers its argument
    reduction and summation error.
    """
    if k <= EXACT_PHASE_CAP:
        mod = 24 * k
        val = mp.fsum(c * mp.cospi(mp.mpf(2 * ph) / mod) for ph, c in phase_histogram(t, k, n).items())
        return val, mp.mpf(0)
    re, _, cnt = phase_sum(t, k, n)
    return mp.mpf(re), mp.mpf(cnt) * (mp.ldexp(1, -49) + cnt * mp.ldexp(1, -52))


def _local_direct(t: int, n: int, p: int, J: int, kappa) -> tuple[mp.mpf, mp.mpf]:
    acc = mp.mpf(1)
    err = mp.mpf(0)
    for j in range(1, J + 1):
        k = p**j
        if k > DIRECT_PRIME_POWER_CAP:
            raise ArithmeticError("local factor at p=%d needs p^%d beyond the kernel cap" % (p, j))
        re, e = phase_sum_real(t, k, n)
        acc += re / mp.mpf(k) ** kappa
        err += e / mp.mpf(k) ** kappa
    return acc, err


def _local_formula(t: int, M: int, p: int, D: int, kappa) -> mp.mpf:
    """Local factor at ``p`` dividing ``M``, ``p`` prime to ``6t``."""
    v = valuation(M, p)
    acc = mp.mpf(1)
    if t % 2:
        chi = kronecker(D, p)
        for j in range(1, v + 2):
            c = (p**j - p ** (j - 1)) if j <= v else -(p ** (j - 1))
            acc += chi**j * mp.mpf(c) / mp.mpf(p) ** (j * kappa)
        return acc
    for j in range(1, v + 2):
        if j % 2 == 0:
            c = mp.mpf(p**j - p ** (j - 1)) if j <= v else -mp.mpf(p ** (j - 1))
        elif j == v + 1:
            c = p**v * kronecker(D // p**v, p) * mp.sqrt(p)
        else:
            c = 0
        acc += c / mp.mpf(p) ** (j * kappa)
    return acc


def _zero_M_local_direct(t: int, p: int, kappa, tol) -> tuple[mp.mpf, mp.mpf]:
    # M = 0: Ramanujan sums at 0 never terminate; sum until the trivial
    # bound phi(p^j) p^(-j kappa) on the tail is below tol
    acc = mp.mpf(1)
    err = mp.mpf(0)
    n = -(t * t - 1) // 24
    j = 0
    r = mp.mpf(p) ** (1 - kappa)
    while True:
        j += 1
        tail = r ** (j + 1) / (1 - r)
        re, e = phase_sum_real(t, p**j, n)
        acc += re / mp.mpf(p) ** (j * kappa)
        err += e / mp.mpf(p) ** (j * kappa)
        if tail < tol:
            return acc, err + tail
        if p ** (j + 1) > DIRECT_PRIME_POWER_CAP:
            raise ArithmeticError("tail bound not reached within the kernel cap")


def singular_series(t: int, n: int, tol=1e-30) -> mp.mpf:
    """Exact ``A_t(n)`` at the current mpmath precision (``t >= 6``, any integer n).

    ``tol`` only matters in the degenerate case ``24 n + t^2 - 1 = 0``.
    """
    return singular_series_err(t, n, tol)[0]


def singular_series_err(t: int, n: int, tol=1e-30) -> tuple[mp.mpf, mp.mpf]:
    """``A_t(n)`` and a bound on the error beyond working-precision rounding.

    The bound is zero unless a local sum needed the double kernel or the
    degenerate case truncated a series.
    """
    if t < 6:
        raise ValueError("t must be at least 6")
    M = 24 * n + t * t - 1
    kappa = mp.mpf(t - 1) / 2
    if t % 2:
        D = (-1) ** ((t - 1) // 2) * t
        s = (t - 1) // 2
        sigma = -1
    else:
        D = (-1) ** ((t - 2) // 2) * 3 * M
        s = (t - 2) // 2
        sigma = 1
    d = fundamental_discriminant(D)
    # relative error carried by the local factors
    rel = mp.mpf(0)
    if M == 0:
        # only odd t reach M = 0; every good prime has infinite valuation and
        # the good-prime product becomes L(s-1, chi) / L(s, chi)
        if s <= 2:
            raise ArithmeticError("degenerate case needs s - 1 >= 2")
        total = dirichlet_L(s - 1, d) / dirichlet_L(s, d)
        for p in (2, 3):
            if t % p:
                c = kronecker(d, p)
                good = (1 - c * mp.mpf(p) ** (-s)) / (1 - c * mp.mpf(p) ** (1 - s))
                local, e = _zero_M_local_direct(t, p, kappa, tol)
                total = total / good * local
                rel += e / abs(local)
        return total, abs(total) * rel
    if sigma < 0:
        total = 1 / dirichlet_L(s, d)
    else:
        chi2 = mp.fprod(1 - mp.mpf(p) ** (-2 * s) for p in factorize(d))
        total = dirichlet_L(s, d) / (mp.zeta(2 * s) * chi2)
    bad = set(factorize(6 * t * M))
    for p in sorted(bad):
        good = 1 + sigma * kronecker(d, p) * mp.mpf(p) ** (-s)
        if t % p == 0:
            local = mp.mpf(1)
        elif p in (2, 3):
            local, e = _local_direct(t, n, p, valuation(M, p) + 1, kappa)
            rel += e / abs(local)
        else:
            local = _local_formula(t, M, p, D, kappa)
        total = total * local / good
    return total, abs(total) * rel
