"""Truncated q-series with exact polynomial-in-w coefficients.

A :class:`QSeries` stores coefficients on the exponent grid ``e / delta`` for
``0 <= e / delta <= trunc``.  Every infinite product used by the package is
built from :func:`series_mul_factor`, which multiplies by one factor
``(1 + c w^d q^e)^(+-1)`` in exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .partitions import partition_numbers
from .poly import WPolynomial

MAX_GRID_POINTS = 5_000_000


class GridError(ValueError):
    """Exponent not representable on a series' grid, or grid too large."""


class TruncationError(LookupError):
    """Coefficient requested beyond the truncation order of a series."""


@dataclass(frozen=True)
class RationalPair:
    """Exponent parameters ``(a, b)`` of ``sum_m q^(a m^2 + b m) w^m / (q;q)_m``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a <= 0:
            raise ValueError("a must be positive")
        if a + b < 0:
            # m = 1 gives the smallest exponent a + b; negative exponents have no grid
            raise ValueError("a + b must be nonnegative so all exponents are >= 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def delta(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator)

    def exponent(self, m: int) -> Fraction:
        return self.a * m * m + self.b * m


class QSeries:
    """Truncated series ``sum_e P_e(w) q^(e/delta)`` with exact coefficients.

    The dense backing store is ``rows[e]`` = list of w-coefficients.
    Coefficients above ``trunc`` are never exposed.
    """

    __slots__ = ("delta", "trunc", "_rows")

    def __init__(self, rows: list[list[int]], trunc, delta: int = 1):
        if delta < 1:
            raise ValueError("delta must be positive")
        trunc = Fraction(trunc)
        top = math.floor(trunc * delta)
        if len(rows) != top + 1:
            raise ValueError("row count does not match truncation")
        self.delta = delta
        self.trunc = trunc
        self._rows = rows

    @classmethod
    def one(cls, trunc, delta: int = 1) -> "QSeries":
        trunc = Fraction(trunc)
        top = math.floor(trunc * delta)
        if top + 1 > MAX_GRID_POINTS:
            raise GridError("grid of %d points exceeds limit" % (top + 1))
        if top < 0:
            raise ValueError("trunc must be nonnegative")
        rows = [[] for _ in range(top + 1)]
        rows[0] = [1]
        return cls(rows, trunc, delta)

    @property
    def top(self) -> int:
        return len(self._rows) - 1

    def _index(self, exponent) -> int:
        x = Fraction(exponent) * self.delta
        if x.denominator != 1:
            raise GridError("exponent %s is off the 1/%d grid" % (exponent, self.delta))
        e = int(x)
        if e < 0:
            raise GridError("negative exponent")
        if e > self.top:
            raise TruncationError("exponent %s beyond truncation %s" % (exponent, self.trunc))
        return e

    def coeff(self, exponent) -> WPolynomial:
        return WPolynomial(self._rows[self._index(exponent)])

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[Fraction, WPolynomial]]:
        """All grid points with a nonzero coefficient, in increasing exponent order."""
        for e, row in enumerate(self._rows):
            if any(row):
                yield Fraction(e, self.delta), WPolynomial(row)

    def coefficient_list(self) -> list[WPolynomial]:
        """Coefficients of ``q^0, q^1, ...`` for an integer grid."""
        if self.delta != 1:
            raise GridError("coefficient_list needs delta = 1")
        return [WPolynomial(r) for r in self._rows]

    def scalar_list(self) -> list[int]:
        """Constant-in-w coefficients of a w-free integer series."""
        out = []
        for r in self._rows:
            if len(r) > 1 and any(r[1:]):
                raise ValueError("series depends on w")
            out.append(r[0] if r else 0)
        return out


def _axpy_shift(dst: list[int], src: list[int], scale: int, d: int) -> list[int]:
    """Return ``dst + scale * w^d * src`` as a new dense list."""
    if not src:
        return dst
    need = len(src) + d
    out = dst + [0] * (need - len(dst)) if len(dst) < need else list(dst)
    for i, v in enumerate(src):
        if v:
            out[i + d] += scale * v
    return out


def series_mul_factor(s: QSeries, c: int, e, d: int, sign: int) -> QSeries:
    """Return ``s * (1 + c w^d q^e)^sign`` truncated at ``s.trunc``.

    ``sign = -1`` divides by the factor via the forward recurrence
    ``r_E = s_E - c w^d r_(E - step)``.
    """
    if c not in (1, -1):
        raise ValueError("c must be +1 or -1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if d < 0:
        raise ValueError("d must be nonnegative")
    e = Fraction(e)
    if e <= 0:
        raise ValueError("factor exponent must be positive")
    step = e * s.delta
    if step.denominator != 1:
        raise GridError("exponent %s is off the 1/%d grid" % (e, s.delta))
    step = int(step)
    rows = s._rows
    if d == 0 and all(len(r) <= 1 for r in rows):
        return _scalar_mul_factor(s, c, step, sign)
    out = list(rows)
    if sign == 1:
        for E in range(s.top, step - 1, -1):
            out[E] = _axpy_shift(rows[E], rows[E - step], c, d)
    else:
        for E in range(step, s.top + 1):
            out[E] = _axpy_shift(rows[E], out[E - step], -c, d)
    return QSeries(out, s.trunc, s.delta)


def _scalar_mul_factor(s: QSeries, c: int, step: int, sign: int) -> QSeries:
    v = [r[0] if r else 0 for r in s._rows]
    top = len(v) - 1
    if sign == 1:
        for E in range(top, step - 1, -1):
            v[E] += c * v[E - step]
    else:
        for E in range(step, top + 1):
            v[E] -= c * v[E - step]
    return QSeries([[x] if x else [] for x in v], s.trunc, s.delta)


def _scalar_series(values: list[int]) -> QSeries:
    return QSeries([[v] if v else [] for v in values], len(values) - 1, 1)


def euler_inverse_series(N: int) -> list[int]:
    """Coefficients of ``prod_n 1/(1 - q^n)`` up to ``q^N`` (that is, p(0..N))."""
    return partition_numbers(N)


def expand_tcore(t: int, N: int) -> list[int]:
    """t-core counts ``c_t(0..N)`` from ``prod (1 - q^(tn))^t / (1 - q^n)``."""
    if t < 1:
        raise ValueError("t must be positive")
    if N < 0:
        raise ValueError("N must be nonnegative")
    s = _scalar_series(list(partition_numbers(N)))
    for n in range(1, N // t + 1):
        for _ in range(t):
            s = series_mul_factor(s, -1, t * n, 0, 1)
    return s.scalar_list()


def colored_partition_counts(t: int, K: int) -> list[int]:
    """Coefficients of ``prod_n (1 - u^n)^(-t)`` up to ``u^K``."""
    s = QSeries.one(K)
    for n in range(1, K + 1):
        for _ in range(t):
            s = series_mul_factor(s, -1, n, 0, -1)
    return s.scalar_list()


def expand_Ht(t: int, N: int) -> list[WPolynomial]:
    """Hook polynomials ``P_t(w, n)`` for ``n = 0..N``.

    The generating function splits as ``A(w q^t) F_t(q)`` with
    ``A(u) = prod (1 - u^n)^(-t)`` and ``F_t`` the t-core series, so
    ``P_t(w, n) = sum_k a_t(k) c_t(n - t k) w^k``.  For ``t = 1`` the t-core
    factor is 1 and the first factor is taken as ``prod 1/(1 - (wq)^n)``.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if t == 1:
        p = partition_numbers(N)
        return [WPolynomial.monomial(p[n], n) for n in range(N + 1)]
    a = colored_partition_counts(t, N // t)
    c = expand_tcore(t, N)
    return [WPolynomial([a[k] * c[n - t * k] for k in range(n // t + 1)]) for n in range(N + 1)]


def expand_Qn(N: int) -> list[WPolynomial]:
    """Number-of-parts polynomials ``Q_0..Q_N`` from ``prod 1/(1 - w q^n)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    s = QSeries.one(N)
    for n in range(1, N + 1):
        s = series_mul_factor(s, -1, n, 1, -1)
    return s.coefficient_list()


def default_degree_cap(ab: RationalPair, nmax) -> int:
    return math.isqrt(math.floor(Fraction(nmax) / ab.a)) + 1


def expand_pab(ab: RationalPair, nmax, dcap: int | None = None) -> QSeries:
    """Expand ``sum_m q^(a m^2 + b m) w^m / (q;q)_m`` up to ``q^nmax``.

    The grid has ``delta = lcm(den a, den b)``.  Terms are added for
    ``m = 0, 1, ...`` while ``a m^2 + b m <= nmax`` and ``m <= dcap``.
    """
    nmax = Fraction(nmax)
    if nmax <= 0:
        raise ValueError("nmax must be positive")
    delta = ab.delta
    if dcap is None:
        dcap = default_degree_cap(ab, nmax)
    out = QSeries.one(nmax, delta)
    rows = out._rows
    rows[0] = []
    top = out.top
    # partitions into parts <= m, on the integer grid
    kmax = math.floor(nmax)
    g = QSeries.one(kmax)
    # a m^2 + b m is nondecreasing in m once a > 0 and a + b >= 0
    for m in range(dcap + 1):
        base = ab.exponent(m) * delta
        if base > top:
            break
        if m > 0:
            g = series_mul_factor(g, -1, m, 0, -1)
        base = int(base)
        gl = g.scalar_list()
        for k in range((top - base) // delta + 1):
            v = gl[k]
            if v:
                rows[base + k * delta] = _axpy_shift(rows[base + k * delta], [v], 1, m)
    return out


def pab_polynomial(ab: RationalPair, n) -> WPolynomial:
    """Single coefficient ``p_{a,b}(w; n)`` without building the whole series.

    The ``w^m`` coefficient is the number of partitions of ``n - a m^2 - b m``
    into parts of size at most ``m`` (zero when that is not a nonnegative
    integer).  Off-grid ``n`` raise :class:`GridError`.
    """
    n = Fraction(n)
    if (n * ab.delta).denominator != 1 or n < 0:
        raise GridError("n = %s is not on the 1/%d grid" % (n, ab.delta))
    wanted: dict[int, int] = {}
    m = 0
    while ab.exponent(m) <= n:
        k = n - ab.exponent(m)
        if k.denominator == 1:
            wanted[m] = int(k)
        m += 1
    if not wanted:
        return WPolynomial()
    kmax = max(wanted.values())
    # dp[k] = partitions of k into parts <= m, updated as m grows
    dp = [1] + [0] * kmax
    terms = {}
    for m in range(0, max(wanted) + 1):
        if m > 0:
            for j in range(m, kmax + 1):
                dp[j] += dp[j - m]
        if m in wanted and dp[wanted[m]]:
            terms[m] = dp[wanted[m]]
    return WPolynomial.from_terms(terms)


def _dyadic_parts(x) -> tuple[int, int]:
    # an mpf is exactly man * 2^exp
    import mpmath as mp

    x = mp.mpf(x)
    if not mp.isfinite(x):
        raise ValueError("w must be finite")
    if x == 0:
        return 0, 0
    sign, man, exp, _ = x._mpf_
    return (-int(man) if sign else int(man)), int(exp)


def evaluate_wpoly(p: WPolynomial, w, prec: int | None = None):
    """``p(w)`` as a :class:`~hookpoly.numerics.PrecComplex`.

    The point itself is evaluated exactly (an mpmath number is a dyadic
    rational, so Horner runs on Gaussian integers) and rounded once.  If ``w``
    carries an error ``e``, the bound adds ``sum |c_k| ((|w| + e)^k - |w|^k)``.
    """
    import mpmath as mp

    from .numerics import DEFAULT_PREC, PrecComplex

    if not isinstance(w, PrecComplex):
        w = PrecComplex.of(w, prec or DEFAULT_PREC)
    prec = prec or w.prec
    c = p.coeffs
    if not c:
        return PrecComplex(0, prec, 0)
    (mr, er), (mi, ei) = _dyadic_parts(w.value.real), _dyadic_parts(w.value.imag)
    s = -min(er, ei, 0)
    a = mr << (er + s) if mr else 0
    b = mi << (ei + s) if mi else 0
    # acc = sum c_k (a + bi)^k 2^(s (d - k)), value = acc / 2^(s d)
    re, im = 0, 0
    for k in range(len(c) - 1, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += c[k] << (s * (len(c) - 1 - k))
    shift = s * (len(c) - 1)
    with mp.workprec(prec):
        v = mp.mpc(mp.ldexp(mp.mpf(re), -shift) if re else 0, mp.ldexp(mp.mpf(im), -shift) if im else 0)
        err = abs(v) * mp.ldexp(1, -prec + 1)
        if w.err:
            r = abs(w.value)
            err += mp.fsum(abs(ck) * ((r + w.err) ** k - r**k) for k, ck in enumerate(c) if ck)
    return PrecComplex(v, prec, err)
