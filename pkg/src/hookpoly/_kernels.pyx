# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Dedekind phase sums and the double-precision Aberth sweep.

Semantics match ``_kernels_py`` exactly; see that module for documentation.
"""

from libc.math cimport cos, sin, fabs, M_PI, hypot
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    while b:
        a, b = b, a % b
    return a if a >= 0 else -a


cdef i64 _d12k(i64 h, i64 k) nogil:
    cdef i64 x, y, q, alt = 0, sign = 1, u0 = 0, u1 = 1, tmp, hbar, c
    cdef int r = 0
    h %= k
    if h < 0:
        h += k
    if k == 1 or h == 0:
        return 0
    x = h
    y = k
    while x:
        q = y // x
        alt += sign * q
        sign = -sign
        tmp = y - q * x
        y = x
        x = tmp
        tmp = u0 - q * u1
        u0 = u1
        u1 = tmp
        r += 1
    hbar = u0 % k
    if hbar < 0:
        hbar += k
    c = 3 if (r & 1) else 1
    return k * (alt - c) + h + hbar


def dedekind12k(h, k):
    if k > 10**8:
        from ._kernels_py import dedekind12k as slow
        return slow(h, k)
    return _d12k(h, k)


def phase_sum(long t, long long k, long long n):
    if k > 10**8:
        from ._kernels_py import phase_sum as slow
        return slow(t, k, n)
    cdef i64 g = _gcd(t, k)
    cdef i64 k2 = k // g
    cdef i64 tg = t // g
    cdef i64 mod = 24 * k
    cdef i64 n24 = (24 * (n % k)) % mod
    cdef i64 h, ph, cnt = 0
    cdef double re = 0.0, im = 0.0, a
    cdef double scale = 2.0 * M_PI / mod
    if n24 < 0:
        n24 += mod
    with nogil:
        for h in range(k):
            if _gcd(h, k) != 1:
                continue
            # (h * n24) may overflow for huge k; reduce first
            ph = (-((h * n24) % mod) + _d12k(h, k) % mod
                  - ((t * g) % mod) * (_d12k((tg * h) % k2, k2) % mod) % mod) % mod
            if ph < 0:
                ph += mod
            a = scale * ph
            re += cos(a)
            im += sin(a)
            cnt += 1
    return re, im, cnt


cdef inline void _ratio(double complex *c, double complex *rc, int n,
                        double complex z, double complex *out) nogil:
    cdef double complex p = 0, dp = 0, y, q = 0, dq = 0, den
    cdef int i
    if hypot(z.real, z.imag) <= 1.0:
        for i in range(n, -1, -1):
            dp = dp * z + p
            p = p * z + c[i]
        out[0] = p / dp if dp != 0 else 0
        return
    y = 1.0 / z
    for i in range(n, -1, -1):
        dq = dq * y + q
        q = q * y + rc[i]
    if q == 0:
        out[0] = 0
        return
    den = n - y * dq / q
    out[0] = z / den if den != 0 else 0


def aberth_sweeps(re_c, im_c, re_z, im_z, int max_iter, double tol):
    cdef int n = len(re_c) - 1
    cdef int m = len(re_z)
    cdef double complex *c = <double complex *> malloc((n + 1) * sizeof(double complex))
    cdef double complex *rc = <double complex *> malloc((n + 1) * sizeof(double complex))
    cdef double complex *z = <double complex *> malloc(m * sizeof(double complex))
    cdef double complex *znew = <double complex *> malloc(m * sizeof(double complex))
    cdef double complex *rat = <double complex *> malloc(m * sizeof(double complex))
    cdef double complex s, d, den, corr
    cdef double worst = 1e300, rel, az
    cdef int i, j, it = 0
    try:
        for i in range(n + 1):
            c[i] = re_c[i] + 1j * im_c[i]
        for i in range(n + 1):
            rc[i] = c[n - i]
        for i in range(m):
            z[i] = re_z[i] + 1j * im_z[i]
        with nogil:
            for it in range(1, max_iter + 1):
                for i in range(m):
                    _ratio(c, rc, n, z[i], &rat[i])
                worst = 0.0
                for i in range(m):
                    if rat[i] == 0:
                        znew[i] = z[i]
                        continue
                    s = 0
                    for j in range(m):
                        if j != i:
                            d = z[i] - z[j]
                            if d != 0:
                                s = s + 1.0 / d
                    den = 1.0 - rat[i] * s
                    corr = rat[i] / den if den != 0 else rat[i]
                    znew[i] = z[i] - corr
                    az = hypot(z[i].real, z[i].imag)
                    rel = hypot(corr.real, corr.imag) / (az if az > 1e-300 else 1e-300)
                    if rel > worst:
                        worst = rel
                for i in range(m):
                    z[i] = znew[i]
                if worst < tol:
                    break
        for i in range(m):
            re_z[i] = z[i].real
            im_z[i] = z[i].imag
        return it, worst
    finally:
        free(c)
        free(rc)
        free(z)
        free(znew)
        free(rat)
