"""Multiprecision evaluation with explicit error bounds.

Every public evaluator returns a :class:`PrecComplex`: an mpmath value, the
working precision in bits, and an absolute bound ``err`` on the total
evaluation error (truncation plus a conservative rounding allowance).
"""

from __future__ import annotations

import functools
import inspect
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from . import singular
from .kernels import dedekind12k
from .partitions import partition_numbers
from .series import colored_partition_counts

DEFAULT_PREC = 128
MAX_PREC = 1024
DEFAULT_MARGIN = 1e-6
EULER_TERM_CAP = 2_000_000


class DomainError(ValueError):
    """Argument outside the region where the quantity is defined or evaluated."""


class ConvergenceError(ArithmeticError):
    """A truncation could not meet its tolerance within the configured cap."""


@dataclass(frozen=True)
class PrecComplex:
    """A complex value with its working precision and an absolute error bound."""

    value: mp.mpc
    prec: int = DEFAULT_PREC
    err: mp.mpf = mp.mpf(0)

    def __post_init__(self):
        with mp.workprec(self.prec):
            object.__setattr__(self, "value", mp.mpc(self.value))
            e = mp.mpf(self.err)
        if not mp.isfinite(e) or e < 0:
            raise ValueError("err must be finite and nonnegative")
        object.__setattr__(self, "err", e)

    @classmethod
    def of(cls, x, prec: int = DEFAULT_PREC) -> "PrecComplex":
        if isinstance(x, PrecComplex):
            return x
        if isinstance(x, Fraction):
            with mp.workprec(prec):
                x = mp.mpf(x.numerator) / x.denominator
        return cls(x, prec, 0)

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def __abs__(self):
        with mp.workprec(self.prec):
            return abs(self.value)

    def _eps(self):
        return mp.ldexp(1, -self.prec + 1)

    def __add__(self, other):
        o = PrecComplex.of(other, self.prec)
        p = min(self.prec, o.prec)
        with mp.workprec(p):
            v = self.value + o.value
            return PrecComplex(v, p, self.err + o.err + abs(v) * self._eps())

    __radd__ = __add__

    def __neg__(self):
        return PrecComplex(-self.value, self.prec, self.err)

    def __sub__(self, other):
        return self + (-PrecComplex.of(other, self.prec))

    def __rsub__(self, other):
        return PrecComplex.of(other, self.prec) - self

    def __mul__(self, other):
        o = PrecComplex.of(other, self.prec)
        p = min(self.prec, o.prec)
        with mp.workprec(p):
            v = self.value * o.value
            e = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
            return PrecComplex(v, p, e + abs(v) * self._eps())

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PrecComplex.of(other, self.prec)
        p = min(self.prec, o.prec)
        with mp.workprec(p):
            d = abs(o.value)
            if d <= o.err:
                raise ZeroDivisionError("divisor not bounded away from zero")
            v = self.value / o.value
            e = (self.err * d + abs(self.value) * o.err) / (d * (d - o.err))
            return PrecComplex(v, p, e + abs(v) * self._eps())

    def __complex__(self):
        return complex(self.value)

    def strings(self) -> dict:
        """Decimal strings at full working precision, for JSON output."""
        digits = max(int(self.prec * math.log10(2)), 1)
        return {
            "re": mp.nstr(self.value.real, digits, min_fixed=-mp.inf, max_fixed=mp.inf),
            "im": mp.nstr(self.value.imag, digits, min_fixed=-mp.inf, max_fixed=mp.inf),
        }

    def err_string(self) -> str:
        return mp.nstr(self.err, 6)


@dataclass(frozen=True)
class ThetaSpec:
    t: int
    ell: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be positive")
        if not 0 <= self.ell < self.t:
            raise ValueError("ell must lie in 0..t-1")


def _as_mpc(z, prec):
    if isinstance(z, PrecComplex):
        return z.value, z.err
    if isinstance(z, Fraction):
        return mp.mpf(z.numerator) / z.denominator, mp.mpf(0)
    return mp.mpc(z), mp.mpf(0)


def principal_root(z, t: int):
    """``z^(1/t)`` with argument in ``(-pi/t, pi/t]``."""
    if z == 0:
        return mp.mpc(0)
    return mp.exp(mp.log(z) / t)


def escalating(fn):
    """Re-run ``fn`` at doubled precision while its error bound exceeds ``tol``.

    Stops at ``MAX_PREC`` and returns the last result; callers read ``err``.
    Only rounding shrinks this way, so truncation-limited results come back
    after the first pass that does not improve.
    """
    sig = inspect.signature(fn)

    @functools.wraps(fn)
    def run(*args, **kwargs):
        bound = sig.bind(*args, **kwargs)
        bound.apply_defaults()
        tol = mp.mpf(bound.arguments["tol"])
        out = fn(*bound.args, **bound.kwargs)
        while out.err > tol and bound.arguments["prec"] < MAX_PREC:
            bound.arguments["prec"] = min(2 * bound.arguments["prec"], MAX_PREC)
            nxt = fn(*bound.args, **bound.kwargs)
            if nxt.err >= out.err:
                return nxt if nxt.err == out.err else out
            out = nxt
        return out

    run.unwrapped = fn
    return run


# --------------------------------------------------------------------------
# Euler function


def euler_terms_needed(r, tol) -> tuple[int, mp.mpf]:
    """Smallest K with ``sum_{k>K} r^k/(1-r^k) <= r^(K+1)/((1-r)(1-r^(K+1))) < tol``."""
    if r == 0:
        return 0, mp.mpf(0)
    lo = 1 - r
    K = max(int(mp.log(tol * lo * lo) / mp.log(r)) - 1, 0)
    while True:
        T = r ** (K + 1) / (lo * (1 - r ** (K + 1)))
        if T < tol:
            if K > 0:
                Tp = r**K / (lo * (1 - r**K))
                if Tp < tol:
                    K -= 1
                    continue
            return K, T
        K += 1


def _euler_inf_at(a, tol=1e-30, prec: int = DEFAULT_PREC, margin=DEFAULT_MARGIN, cap: int = EULER_TERM_CAP) -> PrecComplex:
    """``(a)_inf = prod_{k>=1} (1 - a^k)`` with a certified truncation bound."""
    with mp.workprec(prec + 10):
        x, xerr = _as_mpc(a, prec)
        r = abs(x)
        if r >= 1 - margin:
            raise DomainError("|a| = %s is not below 1 - margin" % mp.nstr(r, 8))
        if x == 0:
            return PrecComplex(1, prec, xerr)
        K, T = euler_terms_needed(r, mp.mpf(tol) / 4)
        if K > cap:
            raise ConvergenceError("euler_inf needs %d factors (cap %d)" % (K, cap))
        P = mp.mpc(1)
        xk = mp.mpc(1)
        for _ in range(K):
            xk *= x
            P *= 1 - xk
        err = abs(P) * (mp.exp(T) - 1) + 4 * (K + 1) * abs(P) * mp.ldexp(1, -prec)
        if xerr:
            # |d/da log (a)_inf| <= sum k r^(k-1) / (1 - r^k) with r widened by xerr
            R = r + xerr
            if R >= 1:
                raise DomainError("input error reaches the unit circle")
            D = mp.fsum(k * R ** (k - 1) / (1 - R**k) for k in range(1, K + 2)) + mp.mpf(1) / (1 - R) ** 3
            err += abs(P) * (mp.exp(D * xerr + T) - 1)
        return PrecComplex(P, prec, err)


euler_inf = escalating(_euler_inf_at)


def _euler_log_derivative(x, K):
    """``d/dz log prod_{k<=K}(1 - z^k)`` at ``x``."""
    s = mp.mpc(0)
    xk1 = mp.mpc(1)
    for k in range(1, K + 1):
        xk = xk1 * x
        s -= k * xk1 / (1 - xk)
        xk1 = xk
    return s


# --------------------------------------------------------------------------
# Theta in three forms


def _p_bound_log(m):
    # p(m) < exp(pi sqrt(2m/3)) for m >= 1
    return mp.pi * mp.sqrt(mp.mpf(2 * m) / 3)


def _partition_tail_terms(spec: ThetaSpec, r, tol) -> tuple[int, mp.mpf]:
    """K and a bound on ``sum_{k>K} p(ell + t k) r^k``."""
    t, ell = spec.t, spec.ell
    if r == 0:
        return 0, mp.mpf(0)
    lr = mp.log(r)
    c = mp.pi * mp.sqrt(mp.mpf(2) / 3)
    K = 1
    while True:
        m = ell + t * (K + 1)
        rho = mp.exp(c * (mp.sqrt(m + t) - mp.sqrt(m)) + lr)
        if rho < 1:
            b = mp.exp(_p_bound_log(m) + (K + 1) * lr)
            tail = b / (1 - rho)
            if tail < tol:
                return K, tail
        K = K + max(1, K // 4)
        if K > 10**6:
            raise ConvergenceError("partition-form sum does not converge fast enough")


def theta_reduced(spec: ThetaSpec, z, tol=1e-30, prec: int = DEFAULT_PREC, derivative: bool = False):
    """``g(z) = (z)_inf^t sum_k p(ell + t k) z^k``, so that ``Theta = z^(ell/t) g(z)``.

    ``g`` is an ordinary power series with ``g(0) = p(ell)``; it has the same
    zeros as Theta in the punctured disc and no branch point.  With
    ``derivative=True`` returns ``(g, g')`` where ``g'`` carries no error bound.
    """
    t, ell = spec.t, spec.ell
    with mp.workprec(prec + 20):
        x, xerr = _as_mpc(z, prec)
        if xerr:
            raise ValueError("theta_reduced expects an exact argument")
        r = abs(x)
        if r >= 1:
            raise DomainError("|z| must be below 1")
        K, tail = _partition_tail_terms(spec, r, mp.mpf(tol) / 4)
        p = partition_numbers(ell + t * K)
        with mp.workprec(53):
            mag0 = mp.fsum(p[ell + t * k] * r**k for k in range(K + 1))
        # the series is summed at points where |S| can be far below sum |terms|
        guard = max(0, int(mp.log(mag0, 2))) + K.bit_length()
    with mp.workprec(prec + 20 + guard):
        S = mp.mpc(0)
        # Horner in z keeps the rounding error proportional to sum |terms|
        for k in range(K, -1, -1):
            S = S * x + p[ell + t * k]
        mag = mp.fsum(p[ell + t * k] * r**k for k in range(K + 1))
        if derivative:
            dS = mp.mpc(0)
            for k in range(K, 0, -1):
                dS = dS * x + k * p[ell + t * k]
        E = _euler_inf_at(x, mp.mpf(tol) / (4 * (mag + tail) * t + 1), prec + 20 + guard)
        Et = E.value**t
        Eabs = abs(E.value)
        Et_err = (Eabs + E.err) ** t - Eabs**t
        g = Et * S
        err = abs(Et) * (tail + 4 * (K + 2) * mag * mp.ldexp(1, -prec - 20 - guard)) + Et_err * (mag + tail)
        err += abs(g) * mp.ldexp(1, -prec)
        out = PrecComplex(g, prec, err)
        if not derivative:
            return out
        KE, _ = euler_terms_needed(r, mp.mpf(tol) / 4) if r else (0, 0)
        dlogE = _euler_log_derivative(x, KE)
        dg = Et * (t * dlogE * S + dS)
        return out, dg


@escalating
def theta_partition_form(spec: ThetaSpec, z, tol=1e-30, prec: int = DEFAULT_PREC) -> PrecComplex:
    """``Theta_{ell,t}(z) = (z)_inf^t sum_{m = ell mod t} p(m) z^(m/t)``, principal branch."""
    with mp.workprec(prec + 20):
        x, _ = _as_mpc(z, prec)
        if x == 0:
            return PrecComplex(1 if spec.ell == 0 else 0, prec, 0)
        root = principal_root(x, spec.t)
        lead = root**spec.ell
        g = theta_reduced(spec, x, mp.mpf(tol) / max(abs(lead), mp.mpf(1e-300)) / 2, prec)
        v = lead * g.value
        return PrecComplex(v, prec, abs(lead) * g.err + abs(v) * mp.ldexp(1, -prec))


@escalating
def theta_roots_of_unity_form(spec: ThetaSpec, z, tol=1e-30, prec: int = DEFAULT_PREC) -> PrecComplex:
    """``(1/t) sum_j e(-j ell / t) (z)_inf^t / (z^(1/t) e(j/t))_inf``."""
    t, ell = spec.t, spec.ell
    with mp.workprec(prec + 20):
        x, _ = _as_mpc(z, prec)
        if x == 0:
            return PrecComplex(1 if ell == 0 else 0, prec, 0)
        root = principal_root(x, t)
        E = _euler_inf_at(x, mp.mpf(tol) / (8 * t), prec + 20)
        Et = E.value**t
        Et_err = (abs(E.value) + E.err) ** t - abs(E.value) ** t
        total = mp.mpc(0)
        err = mp.mpf(0)
        for j in range(t):
            zeta = mp.expjpi(mp.mpf(2 * j) / t)
            F = _euler_inf_at(root * zeta, mp.mpf(tol) / (8 * t), prec + 20)
            d = abs(F.value)
            if d <= F.err:
                raise ConvergenceError("rotated Euler product not bounded away from zero")
            total += mp.expjpi(-mp.mpf(2 * j * ell) / t) * Et / F.value
            err += (Et_err * d + abs(Et) * F.err) / (d * (d - F.err))
        total /= t
        err = err / t + abs(total) * mp.ldexp(1, -prec) * 4
        return PrecComplex(total, prec, err)


def lattice_exponents(spec: ThetaSpec, radius: int) -> list[Fraction]:
    """Exponents ``|m|^2/2 + b.m/t`` of lattice points with ``|m_i| <= radius``.

    Brute-force enumeration over ``m in Z^t`` with ``sum m = 0`` and
    ``b.m = ell (mod t)``; meant for small ``t`` and ``radius``.
    """
    import itertools

    t, ell = spec.t, spec.ell
    out = []
    rng = range(-radius, radius + 1)
    for head in itertools.product(rng, repeat=t - 1):
        last = -sum(head)
        if abs(last) > radius:
            continue
        m = head + (last,)
        bm = sum(i * mi for i, mi in enumerate(m))
        if (bm - ell) % t:
            continue
        out.append(Fraction(sum(mi * mi for mi in m), 2) + Fraction(bm, t))
    return out


@functools.lru_cache(maxsize=256)
def _lattice_all(t: int, zre: str, zim: str, tol_exp: int, prec: int):
    with mp.workprec(prec + 40):
        x = mp.mpc(mp.mpf(zre), mp.mpf(zim))
        tol = mp.ldexp(1, tol_exp)
        v = principal_root(x, 2 * t)
        rho = abs(v)
        # choose the box half-width M so the escape bound is below tol / 2
        M = 1
        while True:
            S, T = [], []
            for i in range(t):
                box = mp.fsum(rho ** (t * m * m + 2 * i * m) for m in range(-M, M + 1))
                e1 = t * (M + 1) ** 2 - 2 * (t - 1) * (M + 1)
                e2 = t * (M + 2) ** 2 - 2 * (t - 1) * (M + 2)
                tail = 2 * rho**e1 / (1 - rho ** (e2 - e1)) if e2 > e1 else mp.inf
                S.append(box + tail)
                T.append(tail)
            trunc = mp.fsum(T[i] * mp.fprod(S[k] for k in range(t) if k != i) for i in range(t))
            if trunc < tol / 2:
                break
            M += 1
            if M > 400:
                raise ConvergenceError("lattice box would exceed 400 per coordinate")
        L = t * (M + 1)
        roots = [mp.expjpi(mp.mpf(2 * s) / L) for s in range(L)]
        phi = []
        for i in range(t):
            coeff = {m: v ** (t * m * m + 2 * i * m) for m in range(-M, M + 1)}
            row = []
            for s in range(L):
                xs = roots[s]
                xinv = roots[(-s) % L]
                # sum_m c_m x^m split into m >= 0 and m < 0 Horner passes
                pos = mp.mpc(0)
                for m in range(M, -1, -1):
                    pos = pos * xs + coeff[m]
                neg = mp.mpc(0)
                for m in range(M, 0, -1):
                    neg = neg * xinv + coeff[-m]
                row.append(pos + neg * xinv)
            phi.append(row)
        F = []
        for j in range(t):
            shift = [j * i * L // t for i in range(t)]
            acc = mp.mpc(0)
            for r in range(L):
                prod = mp.mpc(1)
                for i in range(t):
                    prod *= phi[i][(r + shift[i]) % L]
                acc += prod
            F.append(acc)
        ops = t * L * (2 * M + 2) * t
        bound = mp.fprod(S)
        rounding = ops * bound * mp.ldexp(1, -prec - 30)
        out = []
        for ell in range(t):
            val = mp.fsum(mp.expjpi(-mp.mpf(2 * j * ell) / t) * F[j] for j in range(t)) / (t * L)
            out.append((val, trunc + rounding))
        return tuple(out), M


@escalating
def theta_lattice(spec: ThetaSpec, z, tol=1e-30, prec: int = DEFAULT_PREC) -> PrecComplex:
    """Lattice sum ``sum z^(|m|^2/2 + b.m/t)`` over ``sum m = 0``, ``b.m = ell mod t``.

    Written as ``v^(sum_i t m_i^2 + 2 i m_i)`` with ``v = z^(1/(2t))``; the sum
    runs over the box ``|m_i| <= M`` and both congruence conditions are
    imposed exactly by discrete Fourier sums over roots of unity.  The error
    bound covers every lattice point outside the box.
    """
    with mp.workprec(prec + 20):
        x, _ = _as_mpc(z, prec)
        if abs(x) >= 1:
            raise DomainError("|z| must be below 1")
        if x == 0:
            return PrecComplex(1 if spec.ell == 0 else 0, prec, 0)
        tol_exp = int(mp.floor(mp.log(mp.mpf(tol), 2)))
        key_prec = prec + 20
        zre = mp.nstr(x.real, int(key_prec * 0.302) + 5)
        zim = mp.nstr(x.imag, int(key_prec * 0.302) + 5)
    # the cache key uses the decimal string of z, so re-read z from it
    vals, _ = _lattice_all(spec.t, zre, zim, tol_exp, prec)
    with mp.workprec(prec):
        val, err = vals[spec.ell]
        return PrecComplex(val, prec, err + abs(val) * mp.ldexp(1, -prec))


# --------------------------------------------------------------------------
# Dedekind sums and multipliers


def dedekind_sum(h: int, k: int) -> Fraction:
    """Exact Dedekind sum ``s(h, k)``; ``h`` is reduced mod ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError("gcd(h, k) must be 1")
    return Fraction(dedekind12k(h % k, k), 12 * k)


def omega(h: int, k: int, prec: int = DEFAULT_PREC) -> PrecComplex:
    """``exp(pi i s(h, k))``."""
    s = dedekind_sum(h, k)
    with mp.workprec(prec + 10):
        v = mp.expjpi(mp.mpf(s.numerator) / s.denominator)
    return PrecComplex(v, prec, mp.ldexp(1, -prec + 1))


def omega_prime(h: int, k: int, t: int, prec: int = DEFAULT_PREC) -> PrecComplex:
    """``w_{h,k} / w_{h',k'}^t`` with ``g = gcd(t,k)``, ``k' = k/g``, ``h' = t h / g mod k'``."""
    if t < 1:
        raise ValueError("t must be positive")
    g = math.gcd(t, k)
    k2 = k // g
    h2 = (t // g * h) % k2
    s = dedekind_sum(h, k) - t * dedekind_sum(h2, k2)
    with mp.workprec(prec + 10):
        v = mp.expjpi(mp.mpf(s.numerator) / s.denominator)
    return PrecComplex(v, prec, mp.ldexp(1, -prec + 1))


# --------------------------------------------------------------------------
# A_t(w, n)


def At_trivial_constant(t: int, w_abs) -> mp.mpf:
    """``(|w|)_inf^(-t)``: bounds ``|(a)_inf^(-t)|`` for every ``|a| = |w|``."""
    E = _euler_inf_at(w_abs, 1e-40)
    return 1 / (E.value.real - E.err) ** t


def _direct_tail(t: int, K: int, C) -> mp.mpf:
    # C * sum_{k > K} k * k^(-(t-1)/2), bounded by the integral from K
    a = mp.mpf(t - 1) / 2 - 1
    return C * mp.mpf(K) ** (1 - a) / (a - 1) if a > 1 else mp.inf


@escalating
def eval_At(t: int, w, n: int, tol=1e-12, prec: int = DEFAULT_PREC, method: str = "auto",
            kcap: int = 5000, w0=None) -> PrecComplex:
    """``A_t(w, n) = sum_{k, (k,t)=1} k^(-(t-1)/2) sum_h e(-hn/k) w'_{h,k} (w e(ht/k))_inf^(-t)``.

    ``method="direct"`` sums k up to the first K whose tail bound
    ``C sum_{k>K} k^(1-(t-1)/2)`` with ``C = (|w|)_inf^(-t)`` is below ``tol``.
    ``method="series"`` expands the Euler factor in powers of ``w``:
    ``A_t(w, n) = sum_m a_t(m) w^m A_t(0, n - t m)`` with ``a_t`` the
    coefficients of ``prod (1-u^k)^(-t)``, and evaluates each ``A_t(0, .)``
    exactly as an Euler product.  ``"auto"`` uses the series.
    """
    if t < 6:
        raise DomainError("A_t is only used for t >= 6")
    with mp.workprec(prec + 20):
        x, xerr = _as_mpc(w, prec)
        if xerr:
            raise ValueError("eval_At expects an exact w")
        r = abs(x)
        if r >= 1:
            raise DomainError("|w| must be below 1")
        if w0 is not None and r > mp.mpf(w0):
            raise DomainError("|w| exceeds w0 = %s" % w0)
        if method == "auto":
            method = "series"
        if method == "direct":
            return _At_direct(t, x, n, tol, prec, kcap)
        if method == "series":
            return _At_series(t, x, n, tol, prec)
        raise ValueError("unknown method %r" % method)


def _At_series(t, x, n, tol, prec):
    tol = mp.mpf(tol)
    r = abs(x)
    # |A_t(0, m)| <= sum_k phi(k) k^(-(t-1)/2) <= zeta((t-3)/2)
    B = mp.zeta(mp.mpf(t - 3) / 2)
    if r == 0:
        val, e = singular.singular_series_err(t, n, tol / 4)
        return PrecComplex(val, prec, e + abs(val) * mp.ldexp(1, -prec + 8))
    C = At_trivial_constant(t, r)
    m_max = 0
    while True:
        a = colored_partition_counts(t, m_max)
        partial = mp.fsum(a[m] * r**m for m in range(m_max + 1))
        tail = B * (C - partial)
        if tail < tol / 2:
            break
        m_max = m_max + 1 + m_max // 2
        if m_max > 10_000:
            raise ConvergenceError("w-series for A_t does not converge")
    total = mp.mpc(0)
    local_err = mp.mpf(0)
    xm = mp.mpc(1)
    for m in range(m_max + 1):
        if a[m]:
            v, e = singular.singular_series_err(t, n - t * m, tol / (4 * (m_max + 1)))
            total += a[m] * xm * v
            local_err += a[m] * abs(xm) * e
        xm *= x
    err = max(tail, mp.mpf(0)) + local_err + abs(total) * mp.ldexp(1, -prec + 8)
    return PrecComplex(total, prec, err)


def _At_direct(t, x, n, tol, prec, kcap):
    tol = mp.mpf(tol)
    r = abs(x)
    C = At_trivial_constant(t, r) if r else mp.mpf(1)
    K = 1
    while _direct_tail(t, K, C) >= tol:
        K *= 2
        if K > kcap:
            raise ConvergenceError(
                "direct A_t sum needs K > %d for tol %s (tail bound %s at K = %d)"
                % (kcap, mp.nstr(tol, 3), mp.nstr(_direct_tail(t, kcap, C), 3), kcap))
    lo = K // 2
    while lo + 1 < K:
        mid = (lo + K) // 2
        if _direct_tail(t, mid, C) < tol:
            K = mid
        else:
            lo = mid
    return At_partial_sum(t, x, n, K, prec, tail=_direct_tail(t, K, C))


def At_partial_sum(t: int, w, n: int, K: int, prec: int = DEFAULT_PREC, tail=None) -> PrecComplex:
    """The k-sum defining ``A_t(w, n)`` cut at ``k <= K``.

    The returned error is ``tail`` (if given) plus rounding; without ``tail``
    the value is just the partial sum.
    """
    with mp.workprec(prec + 20):
        x, _ = _as_mpc(w, prec)
        kappa = mp.mpf(t - 1) / 2
        total = mp.mpc(0)
        nterms = 0
        euler_cache: dict[tuple[int, int], mp.mpc] = {}
        for k in range(1, K + 1):
            if math.gcd(k, t) != 1:
                continue
            sk = mp.mpc(0)
            for h in range(k):
                if math.gcd(h, k) != 1:
                    continue
                phase = -Fraction(h * n, k) + omega_phase(h, k, t) / 2
                term = mp.expjpi(2 * (mp.mpf(phase.numerator) / phase.denominator))
                if x != 0:
                    key = ((h * t) % k, k)
                    f = euler_cache.get(key)
                    if f is None:
                        a = x * mp.expjpi(mp.mpf(2 * key[0]) / k)
                        f = _euler_inf_at(a, mp.ldexp(1, -prec), prec + 20).value ** (-t)
                        euler_cache[key] = f
                    term *= f
                sk += term
                nterms += 1
            total += sk / mp.mpf(k) ** kappa
        err = (tail or 0) + nterms * abs(total + 1) * mp.ldexp(1, -prec)
        return PrecComplex(total, prec, err)


def omega_phase(h: int, k: int, t: int) -> Fraction:
    """``s(h,k) - t s(h',k')``, so that ``w'_{h,k} = exp(pi i * this)``."""
    g = math.gcd(t, k)
    k2 = k // g
    return dedekind_sum(h, k) - t * dedekind_sum((t // g * h) % k2, k2)
