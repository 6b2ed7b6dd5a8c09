"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from hookpoly import _kernels_py as pure
from hookpoly.roots import initial_points
from hookpoly.series import expand_Ht

try:
    from hookpoly import _kernels as compiled
except ImportError:
    compiled = None


def phase_case(mod):
    # every k up to 400 for t = 7, n = 1000: the shape of a direct A_t sum
    tot = 0.0
    for k in range(1, 401):
        if k % 7:
            tot += mod.phase_sum(7, k, 1000)[0]
    return tot


def aberth_case(mod, coeffs, start):
    re_c = [float(c) / float(coeffs[-1]) for c in coeffs]
    im_c = [0.0] * len(coeffs)
    re_z = [z.real for z in start]
    im_z = [z.imag for z in start]
    it, worst = mod.aberth_sweeps(re_c, im_c, re_z, im_z, 200, 1e-14)
    return it, worst


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    p = expand_Ht(7, 105)[105]
    coeffs = p.coeffs
    start = initial_points(coeffs)
    cases = [
        ("phase_sum t=7 k<=400", lambda m: phase_case(m)),
        ("dedekind12k k<=300", lambda m: sum(m.dedekind12k(h, k) for k in range(1, 301) for h in range(k))),
        ("aberth P_7(w,105)", lambda m: aberth_case(m, coeffs, start)),
    ]
    print("%-24s %12s %12s %8s" % ("kernel", "python [s]", "cython [s]", "speedup"))
    for name, fn in cases:
        tp, rp = best_of(lambda: fn(pure), args.repeat)
        if compiled is None:
            print("%-24s %12.4f %12s %8s" % (name, tp, "n/a", "-"))
            continue
        tc, rc = best_of(lambda: fn(compiled), args.repeat)
        print("%-24s %12.4f %12.4f %7.1fx" % (name, tp, tc, tp / tc))
        if name.startswith("aberth"):
            continue
        if abs(rp - rc) > 1e-6 * max(1.0, abs(rp)):
            raise SystemExit("backends disagree on %s: %r vs %r" % (name, rp, rc))


if __name__ == "__main__":
    main()
