"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Both modules expose the same functions with the same semantics; the selector
in :mod:`hookpoly.kernels` picks one at import time.
"""

import math


def dedekind12k(h, k):
    """Return the integer ``12 k s(h, k)`` for ``gcd(h, k) = 1``.

    Uses the continued fraction of ``h/k``: with partial quotients
    ``a_1..a_r`` and ``hbar = h^-1 mod k``,
    ``12 s(h,k) = sum (-1)^(i+1) a_i + (h + hbar)/k - (3 if r odd else 1)``.
    """
    h %= k
    if k == 1 or h == 0:
        return 0
    alt = 0
    sign = 1
    x, y = h, k
    # extended Euclid alongside the quotients, for the inverse of h mod k
    u0, u1 = 0, 1
    r = 0
    while x:
        q = y // x
        alt += sign * q
        sign = -sign
        x, y = y - q * x, x
        u0, u1 = u1, u0 - q * u1
        r += 1
    # after the loop y = gcd = 1 and u0 * h = 1 (mod k)
    hbar = u0 % k
    c = 3 if r & 1 else 1
    return k * (alt - c) + h + hbar


def phase_sum(t, k, n):
    """Double-precision value of ``sum_h e(-hn/k) w_{h,k} / w^t_{h', k'}``.

    ``h`` runs over residues mod ``k`` prime to ``k``, ``g = gcd(t, k)``,
    ``k' = k/g`` and ``h' = (t/g) h mod k'``.  Every term is a root of unity
    of order dividing ``24 k``; its integer phase is computed exactly and only
    the final cosine and sine are rounded.  Returns ``(re, im, terms)``.
    """
    g = math.gcd(t, k)
    k2 = k // g
    tg = t // g
    mod = 24 * k
    n24 = (24 * n) % mod
    re = 0.0
    im = 0.0
    cnt = 0
    scale = 2.0 * math.pi / mod
    for h in range(k):
        if math.gcd(h, k) != 1:
            continue
        ph = -h * n24 + dedekind12k(h, k) - t * g * dedekind12k((tg * h) % k2, k2)
        ph %= mod
        a = scale * ph
        re += math.cos(a)
        im += math.sin(a)
        cnt += 1
    return re, im, cnt


def aberth_sweeps(re_c, im_c, re_z, im_z, max_iter, tol):
    """Ehrlich-Aberth iteration in complex double precision.

    ``re_c/im_c`` hold coefficients of a monic-free polynomial in increasing
    degree order; ``re_z/im_z`` the starting points (updated in place).
    Updates are synchronous so the result does not depend on root order.
    Returns ``(iterations, worst_correction)``.
    """
    c = [complex(a, b) for a, b in zip(re_c, im_c)]
    n = len(c) - 1
    rc = c[::-1]
    z = [complex(a, b) for a, b in zip(re_z, im_z)]
    worst = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        ratios = [_newton_ratio(c, rc, n, zi) for zi in z]
        new = []
        worst = 0.0
        for i, zi in enumerate(z):
            r = ratios[i]
            if r == 0:
                new.append(zi)
                continue
            s = 0j
            for j, zj in enumerate(z):
                if j != i:
                    d = zi - zj
                    if d != 0:
                        s += 1.0 / d
            den = 1.0 - r * s
            corr = r / den if den != 0 else r
            new.append(zi - corr)
            rel = abs(corr) / max(abs(zi), 1e-300)
            if rel > worst:
                worst = rel
        z = new
        if worst < tol:
            break
    for i, zi in enumerate(z):
        re_z[i] = zi.real
        im_z[i] = zi.imag
    return it, worst


def _newton_ratio(c, rc, n, z):
    """``p(z)/p'(z)``, evaluated through the reversed polynomial when ``|z| > 1``."""
    if abs(z) <= 1.0:
        p = 0j
        dp = 0j
        for a in reversed(c):
            dp = dp * z + p
            p = p * z + a
        if dp == 0:
            return 0j
        return p / dp
    y = 1.0 / z
    q = 0j
    dq = 0j
    for a in reversed(rc):
        dq = dq * y + q
        q = q * y + a
    if q == 0:
        return 0j
    den = n - y * dq / q
    if den == 0:
        return 0j
    return z / den
