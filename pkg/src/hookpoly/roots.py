"""Certified polynomial roots and zero localization for the theta functions.

Polynomials are solved by Ehrlich-Aberth simultaneous iteration: a fast
double-precision stage (compiled kernel when available) followed by a
multiprecision stage that runs until corrections fall below ``tol`` and every
root passes the relative residual test, doubling precision as needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .kernels import aberth_sweeps
from .numerics import DEFAULT_PREC, MAX_PREC, PrecComplex, ThetaSpec, theta_reduced
from .poly import WPolynomial

PHASE_OFFSET = 0.37


class NonConvergenceError(ArithmeticError):
    def __init__(self, msg, iterations=None, worst=None):
        super().__init__(msg)
        self.iterations = iterations
        self.worst = worst


class CertificationError(ArithmeticError):
    pass


class WindingAmbiguityError(ArithmeticError):
    pass


@dataclass
class RootSet:
    roots: list[PrecComplex]
    residuals: list
    zero_multiplicity: int
    degree: int
    prec: int
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def complex_roots(self) -> list[complex]:
        return [complex(r.value) for r in self.roots]

    def max_modulus_root(self) -> PrecComplex:
        return max(self.roots, key=lambda r: abs(r.value))


def cauchy_bound(p: WPolynomial) -> Fraction:
    """``1 + max_k |c_k / c_deg|``; every root has smaller modulus."""
    if p.degree is None or p.degree < 1:
        raise ValueError("need degree >= 1")
    lead = abs(p.lead)
    return 1 + max(Fraction(abs(c), lead) for c in p.coeffs[:-1])


def newton_polygon_radii(coeffs) -> list[tuple[float, int]]:
    """``(radius, count)`` pairs from the upper convex hull of ``(k, log|c_k|)``."""
    pts = [(k, _log_abs(c)) for k, c in enumerate(coeffs) if c]
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or below the chord
            if (y2 - y1) * (pt[0] - x1) <= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (i, yi), (j, yj) in zip(hull, hull[1:]):
        out.append((math.exp((yi - yj) / (j - i)), j - i))
    return out


def _log_abs(c) -> float:
    c = abs(int(c))
    b = c.bit_length()
    if b < 1000:
        return math.log(c)
    return math.log(c >> (b - 60)) + (b - 60) * math.log(2)


def initial_points(coeffs) -> list[complex]:
    pts = []
    for radius, count in newton_polygon_radii(coeffs):
        for q in range(count):
            a = 2 * math.pi * q / count + PHASE_OFFSET
            pts.append(complex(radius * math.cos(a), radius * math.sin(a)))
    return pts


def _double_stage(coeffs, start, max_iter=400):
    """Run the double-precision sweep when the coefficients fit in a double."""
    bits = [abs(c).bit_length() for c in coeffs if c]
    top = max(bits)
    shift = max(top - 900, 0)
    if min(bits) - shift < -900 or any(abs(z) > 1e150 or abs(z) < 1e-150 for z in start):
        return start
    re_c = [float(Fraction(c, 1 << shift)) for c in coeffs]
    if any(c == 0.0 and orig for c, orig in zip(re_c, coeffs)):
        return start
    im_c = [0.0] * len(coeffs)
    re_z = [z.real for z in start]
    im_z = [z.imag for z in start]
    aberth_sweeps(re_c, im_c, re_z, im_z, max_iter, 1e-13)
    out = [complex(a, b) for a, b in zip(re_z, im_z)]
    if not all(math.isfinite(z.real) and math.isfinite(z.imag) for z in out):
        return start
    return out


def _horner2(c, z):
    p = mp.mpc(0)
    dp = mp.mpc(0)
    for a in reversed(c):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _scale(cabs, r):
    s = mp.mpf(0)
    for a in reversed(cabs):
        s = s * r + a
    return s


def _aberth_mp(c, z, tol, max_iter):
    """Synchronous Aberth iteration; returns (roots, iterations, worst correction).

    A root is frozen once its relative residual reaches rounding noise, since
    further corrections there are noise too; frozen roots still repel the rest.
    """
    n = len(z)
    cabs = [abs(a) for a in c]
    noise = 8 * (n + 1) * mp.eps
    frozen = [False] * n
    worst = mp.inf
    it = 0
    for it in range(1, max_iter + 1):
        ratios = []
        for i, zi in enumerate(z):
            if frozen[i]:
                ratios.append(None)
                continue
            p, dp = _horner2(c, zi)
            if abs(p) <= noise * _scale(cabs, abs(zi)):
                frozen[i] = True
                ratios.append(None)
                continue
            ratios.append(p / dp if dp != 0 else mp.mpc(0))
        new = []
        worst = mp.mpf(0)
        for i in range(n):
            r = ratios[i]
            if r is None or r == 0:
                new.append(z[i])
                continue
            s = mp.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            den = 1 - r * s
            corr = r / den if den != 0 else r
            new.append(z[i] - corr)
            rel = abs(corr) / max(abs(z[i]), mp.mpf(10) ** -300)
            if rel > worst:
                worst = rel
        z = new
        if worst < tol:
            break
    return z, it, worst


def find_roots(p: WPolynomial, prec: int = DEFAULT_PREC, tol=None, max_iter: int = 500,
               max_prec: int = MAX_PREC) -> RootSet:
    """All roots of ``p``: ``w = 0`` exactly by valuation, the rest by Aberth iteration.

    A root ``r`` is certified when ``|p(r)| <= tol * sum |c_k| |r|^k``; failing
    roots trigger another round at doubled precision.  Each returned root
    carries ``err = d |p(r)/p'(r)|`` (the Newton inclusion radius).
    """
    if p.degree is None or p.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    k0 = p.valuation()
    q = p.shift_down(k0)
    coeffs = list(q.coeffs)
    d = len(coeffs) - 1
    if d == 0:
        return RootSet([], [], k0, p.degree, prec)
    tol_given = tol
    start = initial_points(coeffs)
    start = _double_stage(coeffs, start)
    total_it = 0
    cur = prec
    z = None
    while True:
        if tol_given is None:
            tol = mp.ldexp(1, -(cur - 24))
        else:
            tol = mp.mpf(tol_given)
        with mp.workprec(cur + 16):
            c = [mp.mpf(a) for a in coeffs]
            cabs = [abs(a) for a in c]
            if z is None:
                z = [mp.mpc(s) for s in start]
            else:
                z = [mp.mpc(s) for s in z]
            z, it, worst = _aberth_mp(c, z, tol, max_iter)
            total_it += it
            residuals = []
            ok = worst < tol
            for zi in z:
                val, _ = _horner2(c, zi)
                res = abs(val) / _scale(cabs, abs(zi))
                residuals.append(res)
                if res > tol:
                    ok = False
            if ok:
                roots = []
                for zi in z:
                    val, dv = _horner2(c, zi)
                    rad = d * abs(val / dv) if dv != 0 else mp.inf
                    roots.append(PrecComplex(zi, cur, rad + abs(zi) * mp.ldexp(1, -cur)))
                order = sorted(range(d), key=lambda i: (float(z[i].real), float(z[i].imag)))
                return RootSet([roots[i] for i in order], [residuals[i] for i in order], k0, p.degree, cur, total_it)
        if cur * 2 > max_prec:
            if worst >= tol:
                raise NonConvergenceError(
                    "Aberth iteration did not converge: %d iterations, worst correction %s"
                    % (total_it, mp.nstr(worst, 3)), total_it, worst)
            raise CertificationError("residual above tolerance at %d bits" % cur)
        cur *= 2


def vieta_check(p: WPolynomial, rs: RootSet) -> mp.mpf:
    """Relative mismatch between ``|lead| prod |r_i|`` and ``|lowest nonzero coeff|``."""
    with mp.workprec(rs.prec):
        prod = mp.fprod(abs(r.value) for r in rs.roots) * abs(p.lead)
        low = abs(mp.mpf(p.coeffs[rs.zero_multiplicity]))
        return abs(prod - low) / low


def reconstruction_check(p: WPolynomial, rs: RootSet, points) -> mp.mpf:
    """Worst relative mismatch between ``lead prod (w - r_i) w^k`` and ``p(w)``."""
    worst = mp.mpf(0)
    with mp.workprec(rs.prec):
        c = [mp.mpf(a) for a in p.coeffs]
        for w in points:
            w = mp.mpc(w)
            rec = mp.mpf(p.lead) * mp.fprod(w - r.value for r in rs.roots) * w**rs.zero_multiplicity
            val, _ = _horner2(c, w)
            worst = max(worst, abs(rec - val) / abs(val))
    return worst


# --------------------------------------------------------------------------
# zeros of theta inside the disc


@dataclass
class DiscZeroReport:
    center: complex
    radius: mp.mpf
    count: int
    zeros: list[PrecComplex] = field(default_factory=list)
    spec: ThetaSpec | None = None
    eps: float | None = None

    def exceptional_set(self) -> list[PrecComplex]:
        """The reciprocals ``1/z`` of the located zeros (the set used for localization)."""
        out = []
        for z in self.zeros:
            with mp.workprec(z.prec):
                v = 1 / z.value
                out.append(PrecComplex(v, z.prec, z.err / (abs(z.value) * (abs(z.value) - z.err))))
        return out


class _Evaluator:
    """Cached low-precision evaluations of the reduced theta function for contour work."""

    def __init__(self, spec, prec, tol):
        self.spec = spec
        self.prec = prec
        self.tol = tol
        self.cache = {}

    def __call__(self, z):
        key = (float(z.real), float(z.imag))
        v = self.cache.get(key)
        if v is None:
            tol, prec = self.tol, self.prec
            for _ in range(4):
                g = theta_reduced(self.spec, z, tol, prec)
                if abs(g.value) > 10 * g.err:
                    break
                # tighten to a relative tolerance before calling it ambiguous
                tol = max(abs(g.value), mp.mpf(10) ** -200) * mp.mpf(10) ** -6
                prec += 64
            else:
                raise WindingAmbiguityError("theta too small on the contour at %s" % (key,))
            v = complex(g.value)
            if v == 0:
                raise WindingAmbiguityError("theta underflows on the contour at %s" % (key,))
            self.cache[key] = v
        return v


def _arg_step(a: complex, b: complex) -> float:
    return abs(math.atan2((b / a).imag, (b / a).real))


def _path_winding(f, path, samples: int, min_step: float = 1e-12) -> float:
    """Total change of ``arg f`` along ``path(s)``, ``s`` in ``[0, 1]``."""
    total = 0.0
    ss = [i / samples for i in range(samples + 1)]
    vals = [f(path(s)) for s in ss]
    stack = list(zip(ss, ss[1:], vals, vals[1:]))[::-1]
    while stack:
        s0, s1, v0, v1 = stack.pop()
        step = _arg_step(v0, v1)
        if step < math.pi / 4 and abs(v1 - v0) < 0.5 * min(abs(v0), abs(v1)):
            total += math.atan2((v1 / v0).imag, (v1 / v0).real)
            continue
        if s1 - s0 < min_step:
            raise WindingAmbiguityError("contour refinement stalled near s = %g" % s0)
        sm = (s0 + s1) / 2
        vm = f(path(sm))
        stack.append((sm, s1, vm, v1))
        stack.append((s0, sm, v0, vm))
    return total


def _sector_count(f, r0, r1, a0, a1, samples) -> int:
    """Zeros of f in ``{r0 <= |z| <= r1, a0 <= arg z <= a1}`` by the argument principle."""

    def arc(r, b0, b1):
        return lambda s: mp.mpc(r * math.cos(b0 + (b1 - b0) * s), r * math.sin(b0 + (b1 - b0) * s))

    def ray(a, q0, q1):
        return lambda s: mp.mpc((q0 + (q1 - q0) * s) * math.cos(a), (q0 + (q1 - q0) * s) * math.sin(a))

    full = a1 - a0 >= 2 * math.pi - 1e-15
    total = _path_winding(f, arc(r1, a0, a1), samples)
    if not full:
        total += _path_winding(f, ray(a1, r1, r0), max(samples // 4, 4))
    if r0 > 0:
        total += _path_winding(f, arc(r0, a1, a0), samples)
    if not full:
        total += _path_winding(f, ray(a0, r0, r1), max(samples // 4, 4))
    n = total / (2 * math.pi)
    k = round(n)
    if abs(n - k) > 0.05:
        raise WindingAmbiguityError("non-integral winding %.4f" % n)
    return k


def _newton_theta(spec, z0, prec, tol, max_iter=60):
    z = mp.mpc(z0)
    step = mp.inf
    with mp.workprec(prec):
        for _ in range(max_iter):
            if abs(z) >= 0.999:
                return None
            g, dg = theta_reduced(spec, z, mp.ldexp(1, -prec), prec, derivative=True)
            if dg == 0:
                return None
            step = g.value / dg
            z -= step
            if abs(step) < tol * max(abs(z), 1):
                return z, 2 * abs(step) + abs(z) * mp.ldexp(1, -prec + 4)
    return None


def theta_zeros(spec: ThetaSpec, eps, prec: int = DEFAULT_PREC, samples: int = 32,
                count_prec: int = 64, max_depth: int = 40) -> DiscZeroReport:
    """Zeros of ``Theta_{ell,t}`` in ``|z| <= 1/(1+eps)``, counted and refined.

    Works with ``g(z) = z^(-ell/t) Theta(z)``, which is analytic on the whole
    disc and has the same zeros except the branch point at 0.  Regions are
    polar sectors, subdivided until each holds one zero, which Newton then
    polishes at ``prec`` bits.  Contours that pass too close to a zero are
    moved slightly and recounted.
    """
    eps = float(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    R = 1.0 / (1.0 + eps)
    f = _Evaluator(spec, count_prec, 1e-15)
    # start the angular range off the real axis, where real zeros sit
    a_start = -math.pi + PHASE_OFFSET
    count = _sector_count(f, 0.0, R, a_start, a_start + 2 * math.pi, samples)
    zeros: list[PrecComplex] = []
    newton_tol = mp.ldexp(1, -(prec - 16))

    def visit(r0, r1, a0, a1, n, depth):
        if n == 0:
            return
        if n == 1:
            rm = (r0 + r1) / 2 if r0 > 0 else r1 / 2
            am = (a0 + a1) / 2
            guess = complex(rm * math.cos(am), rm * math.sin(am))
            res = _newton_theta(spec, guess, prec, newton_tol)
            if res is not None:
                z, err = res
                az = abs(complex(z))
                ang = math.atan2(float(z.imag), float(z.real))
                if r0 - 1e-9 <= az <= r1 + 1e-9 and _angle_in(ang, a0, a1):
                    zeros.append(PrecComplex(z, prec, err))
                    return
        if depth >= max_depth:
            rm = (r0 + r1) / 2
            am = (a0 + a1) / 2
            z = mp.mpc(rm * math.cos(am), rm * math.sin(am))
            for _ in range(n):
                zeros.append(PrecComplex(z, prec, r1 - r0 + r1 * (a1 - a0)))
            return
        last = None
        for frac in SPLIT_FRACTIONS:
            rm = r0 + (r1 - r0) * frac
            am = a0 + (a1 - a0) * frac
            parts = [(r0, rm, a0, am), (r0, rm, am, a1), (rm, r1, a0, am), (rm, r1, am, a1)]
            try:
                counts = [_sector_count(f, *pc, samples) for pc in parts]
            except WindingAmbiguityError as exc:
                last = exc
                continue
            if sum(counts) != n:
                last = WindingAmbiguityError("subregion counts %s do not add up to %d" % (counts, n))
                continue
            for pc, k in zip(parts, counts):
                visit(*pc, k, depth + 1)
            return
        raise last

    visit(0.0, R, a_start, a_start + 2 * math.pi, count, 0)
    zeros.sort(key=lambda z: (float(z.value.real), float(z.value.imag)))
    return DiscZeroReport(0j, mp.mpf(R), count, zeros, spec, eps)


SPLIT_FRACTIONS = (0.5, 0.4387, 0.5613, 0.4721)


def _angle_in(a, a0, a1) -> bool:
    tol = 1e-9
    for shift in (0.0, 2 * math.pi, -2 * math.pi):
        if a0 - tol <= a + shift <= a1 + tol:
            return True
    return False
