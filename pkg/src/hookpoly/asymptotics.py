"""Asymptotic main terms for hook polynomials and checks against exact values.

Two regimes:

* ``|w| > 1``: ``P_t(w, n) ~ e^(pi sqrt(2n/3)) w^(n/t) Theta_{ell,t}(1/w) C_t(n)``
  along ``n = ell (mod t)``;
* ``|w| <= w0``: ``P_t(w, n) ~ (2 pi)^((t-1)/2) A_t(w, n) n^((t-3)/2) / (t^(t/2) Gamma((t-1)/2))``.

For the first regime two constants are available.  ``"displayed"`` is
``1 / (2^((5+t)/4) 3^((1+t)/4) pi^((3+t)/2) n^((3+t)/4))``.  At ``t = 1`` the
polynomial is ``p(n) w^n`` and ``Theta_{0,1} = 1``, so the main term has to
reduce to Hardy-Ramanujan; that constant does not (it is off by
``pi^2 / sqrt 2``).  ``"corrected"`` (the default) redoes the final Laplace
step and gives ``t^((t+2)/2) / (2^((3t+5)/4) 3^((t+1)/4) n^((t+3)/4))``, which
reduces to ``1 / (4 sqrt(3) n)`` at ``t = 1``.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .jobs import ordered_map
from .numerics import DEFAULT_PREC, DomainError, PrecComplex, ThetaSpec, eval_At, principal_root, theta_reduced
from .poly import WPolynomial
from .roots import RootSet, find_roots, theta_zeros
from .series import RationalPair, evaluate_wpoly, expand_Ht, pab_polynomial

LARGE_W_CONSTANTS = ("corrected", "displayed")


def hardy_ramanujan_main(n: int, prec: int = DEFAULT_PREC) -> mp.mpf:
    """``e^(pi sqrt(2n/3)) / (4 n sqrt 3)``."""
    if n < 1:
        raise DomainError("n must be positive")
    with mp.workprec(prec):
        return mp.exp(mp.pi * mp.sqrt(mp.mpf(2 * n) / 3)) / (4 * n * mp.sqrt(3))


def large_w_constant(t: int, n: int, constant: str = "corrected") -> mp.mpf:
    """The n-dependent factor multiplying ``e^(pi sqrt(2n/3)) w^(n/t) Theta``."""
    t_ = mp.mpf(t)
    if constant == "corrected":
        return t_ ** ((t_ + 2) / 2) / (
            mp.mpf(2) ** ((3 * t_ + 5) / 4) * mp.mpf(3) ** ((t_ + 1) / 4) * mp.mpf(n) ** ((t_ + 3) / 4))
    if constant == "displayed":
        return 1 / (mp.mpf(2) ** ((5 + t_) / 4) * mp.mpf(3) ** ((1 + t_) / 4)
                    * mp.pi ** ((3 + t_) / 2) * mp.mpf(n) ** ((3 + t_) / 4))
    raise ValueError("constant must be one of %s" % (LARGE_W_CONSTANTS,))


@dataclass(frozen=True)
class MainTerm:
    """A main-term value, its branch-free modulus, and the near-zero flag."""

    value: PrecComplex
    modulus: mp.mpf
    near_zero: bool = False


def _exact_point(w, prec):
    if isinstance(w, PrecComplex):
        if w.err:
            raise ValueError("main terms expect an exact w")
        return w.value
    if isinstance(w, Fraction):
        return mp.mpf(w.numerator) / w.denominator
    return mp.mpc(w)


def main_term_large_w(t: int, ell: int, n: int, w, constant: str = "corrected", tol=1e-30,
                      prec: int = DEFAULT_PREC) -> MainTerm:
    """Main term for ``|w| > 1`` along ``n = ell (mod t)``.

    ``value`` uses the principal ``w^(n/t)`` and the principal branch inside
    Theta; ``modulus`` does not depend on either choice.  ``near_zero`` is set
    when ``Theta(1/w)`` is within 10 times its error bound of 0.
    """
    if t < 1 or n < 1:
        raise DomainError("t and n must be positive")
    if (n - ell) % t:
        raise DomainError("n = %d is not congruent to ell = %d mod t = %d" % (n, ell, t))
    spec = ThetaSpec(t, ell % t)
    with mp.workprec(prec + 40):
        x = _exact_point(w, prec)
        r = abs(x)
        if r <= 1:
            raise DomainError("|w| must exceed 1")
        z = 1 / x
        g = theta_reduced(spec, z, tol, prec + 20)
        near_zero = abs(g.value) <= 10 * g.err
        C = large_w_constant(t, n, constant) * mp.exp(mp.pi * mp.sqrt(mp.mpf(2 * n) / 3))
        # |w^(n/t) Theta(1/w)| = |w|^((n - ell)/t) |g(1/w)|
        scale = C * r ** (mp.mpf(n - spec.ell) / t)
        modulus = scale * abs(g.value)
        theta = principal_root(z, t) ** spec.ell * g.value
        v = C * principal_root(x, t) ** n * theta
        err = scale * g.err + abs(v) * mp.ldexp(1, -prec)
    return MainTerm(PrecComplex(v, prec, err), modulus, near_zero)


def main_term_small_w(t: int, n: int, w, tol=1e-12, prec: int = DEFAULT_PREC, w0=None) -> PrecComplex:
    """``(2 pi)^((t-1)/2) A_t(w, n) n^((t-3)/2) / (t^(t/2) Gamma((t-1)/2))``."""
    if t < 6:
        raise DomainError("the small-w main term needs t >= 6")
    if n < 1:
        raise DomainError("n must be positive")
    A = eval_At(t, w, n, tol, prec, w0=w0)
    with mp.workprec(prec + 20):
        C = (2 * mp.pi) ** (mp.mpf(t - 1) / 2) * mp.mpf(n) ** (mp.mpf(t - 3) / 2) / (
            mp.mpf(t) ** (mp.mpf(t) / 2) * mp.gamma(mp.mpf(t - 1) / 2))
        v = C * A.value
        return PrecComplex(v, prec, C * A.err + abs(v) * mp.ldexp(1, -prec))


@functools.lru_cache(maxsize=16)
def _hook_table(t: int, N: int) -> tuple[WPolynomial, ...]:
    return tuple(expand_Ht(t, N))


def hook_polynomial(t: int, n: int) -> WPolynomial:
    """``P_t(w, n)``, memoized per ``t`` on a doubling size grid."""
    N = 64
    while N < n:
        N *= 2
    return _hook_table(t, N)[n]


# --------------------------------------------------------------------------
# ratio reports


@dataclass(frozen=True)
class ReportEntry:
    n: int
    exact: PrecComplex
    main: PrecComplex
    ratio: mp.mpf
    near_zero: bool = False


@dataclass
class AsymptoticReport:
    t: int
    ell: int | None
    w: object
    regime: str
    entries: list[ReportEntry] = field(default_factory=list)
    constant: str = "corrected"

    def ratios(self) -> list[float]:
        return [float(e.ratio) for e in self.entries]

    def csv_rows(self) -> list[list[str]]:
        rows = [["n", "exact_modulus", "main_modulus", "ratio"]]
        for e in self.entries:
            digits = max(int(e.main.prec * math.log10(2)), 1)
            with mp.workprec(e.main.prec + 20):
                vals = (abs(e.exact.value), abs(e.main.value), e.ratio)
            # exponent form past `digits` so no padding zeros pose as significant
            rows.append([str(e.n)] + [mp.nstr(x, digits, min_fixed=-5, max_fixed=digits) for x in vals])
        return rows


def choose_regime(w) -> str:
    r = abs(complex(w)) if not isinstance(w, PrecComplex) else abs(complex(w.value))
    if r > 1:
        return "large"
    if r < 1:
        return "small"
    raise DomainError("|w| = 1 is covered by neither asymptotic regime")


def _entry(args) -> ReportEntry:
    t, ell, w, n, regime, constant, tol, prec = args
    exact = evaluate_wpoly(hook_polynomial(t, n), w, prec)
    with mp.workprec(prec + 20):
        if regime == "large":
            m = main_term_large_w(t, ell, n, w, constant, prec=prec)
            main, mod, flag = m.value, m.modulus, m.near_zero
        else:
            main = main_term_small_w(t, n, w, tol, prec)
            mod, flag = abs(main.value), abs(main.value) <= 10 * main.err
        ratio = abs(exact.value) / mod
    return ReportEntry(n, exact, main, ratio, flag)


def ratio_report(t: int, ell, w, n_list, regime: str | None = None, constant: str = "corrected",
                 tol=1e-12, prec: int = DEFAULT_PREC, jobs: int = 1) -> AsymptoticReport:
    """Compare ``|P_t(w, n)|`` with the modulus of the applicable main term.

    ``regime`` defaults to ``"large"`` for ``|w| > 1`` and ``"small"`` for
    ``|w| < 1``.  In the large regime every ``n`` must be ``ell`` mod ``t``.
    """
    n_list = list(n_list)
    if n_list != sorted(n_list):
        raise ValueError("n_list must be sorted")
    regime = regime or choose_regime(w)
    if regime not in ("large", "small"):
        raise ValueError("regime must be 'large' or 'small'")
    if regime == "small" and t < 6:
        raise DomainError("the small-w regime needs t >= 6")
    if regime == "large":
        if ell is None:
            raise DomainError("the large-w regime needs a residue ell")
        bad = [n for n in n_list if (n - ell) % t]
        if bad:
            raise DomainError("n values %s are not congruent to %d mod %d" % (bad, ell, t))
    rep = AsymptoticReport(t, ell, w, regime, constant=constant)
    if n_list:
        hook_polynomial(t, n_list[-1])
    rep.entries = ordered_map(_entry, [(t, ell, w, n, regime, constant, tol, prec) for n in n_list], jobs)
    return rep


def validate_w0(t: int, w0, n_list, samples: int = 8, tol=1e-12, prec: int = DEFAULT_PREC):
    """Smallest ``|A_t(w, n)|`` over ``|w| in {0, w0}`` (``samples`` angles) and ``n_list``.

    Returns ``(ok, smallest, its error)``; ``ok`` means every sampled value
    exceeds ten times its error bound.
    """
    pts = [mp.mpf(0)] + [mp.mpf(w0) * mp.expjpi(mp.mpf(2 * j) / samples) for j in range(samples)]
    worst, worst_err = mp.inf, mp.mpf(0)
    ok = True
    for n in n_list:
        for w in pts:
            A = eval_At(t, w, n, tol, prec)
            if abs(A.value) <= 10 * A.err:
                ok = False
            if abs(A.value) < worst:
                worst, worst_err = abs(A.value), A.err
    return ok, worst, worst_err


# --------------------------------------------------------------------------
# zero localization


@dataclass
class LocalizationVerdict:
    n: int
    t: int
    ell: int
    eps: float
    w0: float
    annulus_roots: list[complex]
    theta_neighborhood_roots: list[complex]
    violations: list[complex]
    exceptional_set: list[complex]
    zero_multiplicity: int
    degree: int

    @property
    def localized_fraction(self) -> float:
        total = len(self.annulus_roots) + len(self.theta_neighborhood_roots) + len(self.violations)
        return 1.0 if total == 0 else 1 - len(self.violations) / total

    def to_json(self) -> str:
        def pts(zs):
            return [{"re": repr(z.real), "im": repr(z.imag)} for z in zs]

        return json.dumps({
            "t": self.t, "ell": self.ell, "n": self.n, "eps": repr(self.eps), "w0": repr(self.w0),
            "degree": self.degree, "zero_multiplicity": self.zero_multiplicity,
            "exceptional_set": pts(self.exceptional_set),
            "annulus_roots": pts(self.annulus_roots),
            "theta_neighborhood_roots": pts(self.theta_neighborhood_roots),
            "violations": pts(self.violations),
            "localized_fraction": repr(self.localized_fraction),
        }, indent=1)


def classify_roots(roots, Z, eps: float, w0: float):
    """Split roots into annulus, theta-neighborhood and violation lists."""
    ann, near, bad = [], [], []
    for r in roots:
        a = abs(r)
        if w0 <= a <= 1 + eps:
            ann.append(r)
        elif any(abs(r - z) <= eps for z in Z):
            near.append(r)
        else:
            bad.append(r)
    return ann, near, bad


@functools.lru_cache(maxsize=32)
def _exceptional_set(t: int, ell: int, eps: float, prec: int) -> tuple[complex, ...]:
    rep = theta_zeros(ThetaSpec(t, ell), eps, prec)
    return tuple(complex(z.value) for z in rep.exceptional_set())


def zero_localization_check(t: int, ell: int, n: int, eps: float = 0.5, w0: float = 0.05,
                            prec: int = DEFAULT_PREC, roots: RootSet | None = None) -> LocalizationVerdict:
    """Where the zeros of ``P_t(w, n)`` sit relative to the annulus and the exceptional set."""
    if t < 6:
        raise DomainError("localization is stated for t >= 6")
    if (n - ell) % t:
        raise DomainError("n = %d is not congruent to ell = %d mod t = %d" % (n, ell, t))
    eps, w0 = float(eps), float(w0)
    p = hook_polynomial(t, n)
    rs = roots if roots is not None else find_roots(p, prec)
    Z = _exceptional_set(t, ell % t, eps, prec)
    ann, near, bad = classify_roots(rs.complex_roots(), Z, eps, w0)
    return LocalizationVerdict(n, t, ell % t, eps, w0, ann, near, bad, list(Z), rs.zero_multiplicity,
                               p.degree or 0)


# --------------------------------------------------------------------------
# real parts of the b = 0, 1 family


@dataclass(frozen=True)
class RRVerdict:
    b: int
    n: int
    passed: bool
    worst_re: float
    worst_root: complex | None
    max_abs_im: float
    degree: int


def rr_claim_check(b: int, n: int, tol=1e-8, prec: int = DEFAULT_PREC, roots: RootSet | None = None) -> RRVerdict:
    """Do all roots of ``p_{1,b}(w; n)`` have real part at most ``tol``?"""
    if b not in (0, 1):
        raise ValueError("b must be 0 or 1")
    if n < 1:
        raise ValueError("n must be positive")
    p = pab_polynomial(RationalPair(Fraction(1), Fraction(b)), n)
    if p.is_zero():
        return RRVerdict(b, n, True, 0.0, None, 0.0, 0)
    rs = roots if roots is not None else find_roots(p, prec)
    zs = rs.complex_roots() + [0j] * rs.zero_multiplicity
    if not zs:
        return RRVerdict(b, n, True, 0.0, None, 0.0, 0)
    worst = max(zs, key=lambda z: z.real)
    return RRVerdict(b, n, worst.real <= tol, worst.real, worst, max(abs(z.imag) for z in zs), p.degree)


def _rr_one(args):
    b, n, tol, prec = args
    return rr_claim_check(b, n, tol, prec)


def rr_sweep(b: int, n_list, tol=1e-8, prec: int = DEFAULT_PREC, jobs: int = 1) -> list[RRVerdict]:
    return ordered_map(_rr_one, [(b, n, tol, prec) for n in n_list], jobs)
