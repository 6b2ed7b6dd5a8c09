"""``hookpoly`` command line."""

from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath as mp

from . import asymptotics as asy
from .config import CONFIG_ENV, JobConfig, load_config
from .numerics import (DomainError, PrecComplex, ThetaSpec, eval_At, theta_lattice, theta_partition_form,
                       theta_roots_of_unity_form)
from .partitions import EnumerationLimitError, brute_force_Pt, brute_force_Qn
from .plot import PlotSpec, render_svg
from .poly import WPolynomial, parse_fraction
from .records import (disc_report_json, dump_records, evaluation_json, load_records, poly_record, read_roots_csv,
                      record_poly, roots_csv)
from .roots import CertificationError, NonConvergenceError, find_roots, theta_zeros
from .series import GridError, RationalPair, expand_Ht, expand_pab, expand_Qn, expand_tcore, pab_polynomial

THETA_FORMS = {
    "lattice": theta_lattice,
    "partition": theta_partition_form,
    "roots-of-unity": theta_roots_of_unity_form,
}


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# flag parsing


def parse_range(text: str, exact=parse_fraction) -> list:
    """``a``, ``a:b:s`` (inclusive of ``b`` when on the grid), or a comma list of those."""
    out = []
    for part in str(text).split(","):
        bits = part.split(":")
        if len(bits) == 1:
            out.append(exact(bits[0]))
            continue
        if len(bits) != 3:
            raise UsageError("range must be start:stop:step, got %r" % part)
        a, b, s = (exact(x) for x in bits)
        if s <= 0:
            raise UsageError("range step must be positive")
        x = a
        while x <= b:
            out.append(x)
            x += s
    return out


def parse_int_range(text: str) -> list[int]:
    vals = parse_range(text)
    if any(v.denominator != 1 for v in vals):
        raise UsageError("n must be an integer here")
    return [int(v) for v in vals]


def parse_complex(text: str, prec: int):
    s = str(text).strip().replace("−", "-").replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    with mp.workprec(prec):
        try:
            v = mp.mpmathify(s)
        except (ValueError, TypeError):
            raise UsageError("cannot parse complex number %r" % text) from None
    if not mp.isfinite(v):
        raise UsageError("value must be finite")
    return v


def parse_poly_list(text: str) -> WPolynomial:
    try:
        data = json.loads(text.replace("−", "-"))
    except json.JSONDecodeError as exc:
        raise UsageError("--poly must be a JSON list of integers: %s" % exc) from None
    if not isinstance(data, list) or not all(isinstance(c, int) or (isinstance(c, str) and c.lstrip("-").isdigit())
                                             for c in data):
        raise UsageError("--poly must be a JSON list of integers (ascending powers of w)")
    return WPolynomial([int(c) for c in data])


# --------------------------------------------------------------------------
# output


def _emit(args, cfg: JobConfig, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    path = args.output if os.path.isabs(args.output) else os.path.join(cfg.output_dir, args.output)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_csv_rows(rows) -> str:
    return "".join(",".join(r) + "\n" for r in rows)


# --------------------------------------------------------------------------
# commands


def _need(args, *names, why=""):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError("--%s is required%s" % (n.replace("_", "-"), why))


def _forbid(args, *names, why=""):
    for n in names:
        if getattr(args, n) is not None:
            raise UsageError("--%s is not allowed%s" % (n.replace("_", "-"), why))


def cmd_brute(args, cfg):
    ns = parse_int_range(args.n)
    recs = []
    for n in ns:
        if args.family == "hook":
            _need(args, "t", why=" for family hook")
            p = brute_force_Pt(args.t, n, cap=cfg.enumeration_cap)
            recs.append(poly_record("hook", n, p, t=args.t))
        else:
            _forbid(args, "t", why=" for family parts")
            recs.append(poly_record("parts", n, brute_force_Qn(n, cap=cfg.enumeration_cap)))
    _emit(args, cfg, dump_records(recs))
    return 0


def _family_flags(args):
    fam = args.family
    if fam in ("hook", "tcore"):
        _need(args, "t", why=" for family %s" % fam)
        _forbid(args, "a", "b", why=" for family %s" % fam)
        if args.t < 1:
            raise UsageError("--t must be positive")
    elif fam == "parts":
        _forbid(args, "t", "a", "b", why=" for family parts")
    else:
        _forbid(args, "t", why=" for family rr")
        _need(args, "a", "b", why=" for family rr")


def _n_values(args, rational: bool):
    if (args.n is None) == (getattr(args, "nmax", None) is None):
        raise UsageError("give exactly one of --n and --nmax")
    if args.n is not None:
        vals = parse_range(args.n)
        if not rational and any(v.denominator != 1 for v in vals):
            raise UsageError("n must be an integer for this family")
        if any(v < 0 for v in vals):
            raise UsageError("n must be nonnegative")
        return vals, None
    nmax = parse_fraction(args.nmax)
    if not rational and nmax.denominator != 1:
        raise UsageError("--nmax must be an integer for this family")
    return None, nmax


def cmd_expand(args, cfg):
    _family_flags(args)
    fam = args.family
    ns, nmax = _n_values(args, rational=(fam == "rr"))
    top = max(ns) if ns else nmax
    if top > cfg.series_trunc:
        raise UsageError("n = %s exceeds series_trunc = %d" % (top, cfg.series_trunc))
    recs = []
    if fam == "rr":
        ab = RationalPair(parse_fraction(args.a), parse_fraction(args.b))
        if ns is not None:
            for n in ns:
                recs.append(poly_record("rr", n, pab_polynomial(ab, n), a=ab.a, b=ab.b))
        else:
            s = expand_pab(ab, nmax)
            for e, p in s.items():
                if e <= nmax:
                    recs.append(poly_record("rr", e, p, a=ab.a, b=ab.b))
    else:
        N = int(top)
        idx = [int(n) for n in ns] if ns is not None else list(range(N + 1))
        if fam == "hook":
            table = expand_Ht(args.t, N)
            recs = [poly_record("hook", n, table[n], t=args.t) for n in idx]
        elif fam == "parts":
            table = expand_Qn(N)
            recs = [poly_record("parts", n, table[n]) for n in idx]
        else:
            c = expand_tcore(args.t, N)
            recs = [poly_record("tcore", n, WPolynomial([c[n]]), t=args.t) for n in idx]
    _emit(args, cfg, dump_records(recs))
    return 0


def _roots_input(args):
    """The polynomial to solve and its metadata."""
    sources = [args.poly is not None, args.input is not None, args.family is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --poly, --input, --family")
    if args.poly is not None:
        return parse_poly_list(args.poly), {"family": "inline"}
    if args.input is not None:
        with open(args.input) as fh:
            recs = load_records(fh.read())
        if len(recs) != 1:
            raise UsageError("--input must hold exactly one record")
        r = recs[0]
        meta = {k: r[k] for k in ("family", "t", "a", "b", "n") if r.get(k) is not None}
        return record_poly(r), meta
    _family_flags(args)
    if args.n is None:
        raise UsageError("--n is required with --family")
    n = parse_fraction(args.n)
    if args.family == "rr":
        ab = RationalPair(parse_fraction(args.a), parse_fraction(args.b))
        return pab_polynomial(ab, n), {"family": "rr", "a": args.a, "b": args.b, "n": args.n}
    if n.denominator != 1 or n < 0:
        raise UsageError("n must be a nonnegative integer for this family")
    n = int(n)
    if args.family == "hook":
        return asy.hook_polynomial(args.t, n), {"family": "hook", "t": args.t, "n": n}
    if args.family == "parts":
        return expand_Qn(n)[n], {"family": "parts", "n": n}
    raise UsageError("family tcore has constant polynomials; nothing to solve")


def cmd_roots(args, cfg):
    p, meta = _roots_input(args)
    if p.degree is None or p.degree < 1:
        raise UsageError("polynomial must have degree >= 1")
    tol = args.tol if args.tol is not None else None
    try:
        rs = find_roots(p, cfg.precision_bits, tol=tol)
    except (CertificationError, NonConvergenceError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    _emit(args, cfg, roots_csv(rs, meta))
    return 0


def cmd_plot(args, cfg):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    _, pts = read_roots_csv(text)
    window = {k: getattr(args, k) for k in ("xmin", "xmax", "ymin", "ymax", "rmin", "rmax")
              if getattr(args, k) is not None}
    spec = PlotSpec(pts, window, args.marker_radius, args.title or "", args.unit_circle)
    svg, empty = render_svg(spec)
    if empty:
        print("warning: no points inside the plot window", file=sys.stderr)
    _emit(args, cfg, svg)
    return 0


def _theta_spec(args):
    try:
        return ThetaSpec(args.t, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_theta(args, cfg):
    spec = _theta_spec(args)
    prec = cfg.precision_bits
    z = parse_complex(args.z, prec + 20)
    if abs(z) >= 1:
        raise UsageError("|z| must be below 1")
    tol = args.tol if args.tol is not None else cfg.default_tol
    forms = list(THETA_FORMS) if args.form == "all" else [args.form]
    out = []
    for f in forms:
        v = THETA_FORMS[f](spec, z, tol, prec)
        out.append(evaluation_json(spec.t, spec.ell, PrecComplex(z, prec), v, f))
    _emit(args, cfg, json.dumps(out[0] if len(out) == 1 else out, indent=1) + "\n")
    return 0


def cmd_theta_zeros(args, cfg):
    spec = _theta_spec(args)
    eps = args.eps if args.eps is not None else cfg.eps
    rep = theta_zeros(spec, eps, cfg.precision_bits, samples=args.samples)
    _emit(args, cfg, json.dumps(disc_report_json(rep), indent=1) + "\n")
    return 0


def cmd_at(args, cfg):
    if args.t < 6:
        raise UsageError("A_t is only defined here for t >= 6")
    prec = cfg.precision_bits
    w = parse_complex(args.w, prec + 20)
    tol = args.tol if args.tol is not None else 1e-12
    A = eval_At(args.t, w, args.n, tol, prec, method=args.method)
    d = evaluation_json(args.t, None, PrecComplex(w, prec), A, "A_t/" + ("series" if args.method == "auto" else args.method),
                        n=args.n)
    _emit(args, cfg, json.dumps(d, indent=1) + "\n")
    return 0


def cmd_compare(args, cfg):
    prec = cfg.precision_bits
    w = parse_complex(args.w, prec + 20)
    ns = parse_int_range(args.n)
    if not ns or min(ns) < 1:
        raise UsageError("n values must be positive")
    regime = args.regime or asy.choose_regime(w)
    if regime == "small":
        if args.t < 6:
            raise UsageError("--regime small needs --t >= 6")
        if abs(w) > cfg.w0:
            raise UsageError("|w| = %s exceeds w0 = %s" % (mp.nstr(abs(w), 6), cfg.w0))
        ell = None
    else:
        if abs(w) <= 1:
            raise UsageError("--regime large needs |w| > 1")
        ell = args.ell if args.ell is not None else ns[0] % args.t
        bad = [n for n in ns if (n - ell) % args.t]
        if bad:
            raise UsageError("n values %s are not congruent to %d mod %d" % (bad, ell, args.t))
    tol = args.tol if args.tol is not None else 1e-12
    rep = asy.ratio_report(args.t, ell, w, ns, regime, args.constant, tol, prec, jobs=args.jobs)
    _emit(args, cfg, _write_csv_rows(rep.csv_rows()))
    return 0


def cmd_localize(args, cfg):
    ell = args.ell if args.ell is not None else args.n % args.t
    eps = args.eps if args.eps is not None else cfg.eps
    w0 = args.w0 if args.w0 is not None else cfg.w0
    if args.t < 6:
        raise UsageError("localization needs --t >= 6")
    if (args.n - ell) % args.t:
        raise UsageError("n = %d is not congruent to ell = %d mod %d" % (args.n, ell, args.t))
    v = asy.zero_localization_check(args.t, ell, args.n, eps, w0, cfg.precision_bits)
    _emit(args, cfg, v.to_json() + "\n")
    return 0 if v.localized_fraction >= args.min_fraction else 1


def cmd_rr(args, cfg):
    ns = parse_int_range(args.n)
    if not ns or min(ns) < 1:
        raise UsageError("n values must be positive")
    vs = asy.rr_sweep(args.b, ns, args.tol, cfg.precision_bits, jobs=args.jobs)
    worst = max(vs, key=lambda v: v.worst_re)
    ok = all(v.passed for v in vs)
    lines = []
    if args.verbose:
        for v in vs:
            lines.append("%s b=%d n=%d worst_re=%r max_abs_im=%r\n"
                         % ("PASS" if v.passed else "FAIL", v.b, v.n, v.worst_re, v.max_abs_im))
    lines.append("%s b=%d worst_re=%r at n=%d (tol %r, %d polynomials)\n"
                 % ("PASS" if ok else "FAIL", args.b, worst.worst_re, worst.n, args.tol, len(vs)))
    _emit(args, cfg, "".join(lines))
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="JSON file with JobConfig fields (default from $%s)" % CONFIG_ENV)
    g.add_argument("--prec", type=int, help="working precision in bits (overrides the config)")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for independent n values")
    g.add_argument("-o", "--output", help="output file (default stdout; relative to output_dir)")
    return p


def _family_args(p, families, rational_n=True):
    p.add_argument("--family", choices=families)
    p.add_argument("--t", type=int, help="hook length modulus")
    p.add_argument("--a", help="rr family: exact rational a = p/q")
    p.add_argument("--b", help="rr family: exact rational b = p/q")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = argparse.ArgumentParser(prog="hookpoly", description="Hook-length polynomials and their zeros.",
                                  allow_abbrev=False)
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_, allow_abbrev=False)
        p.set_defaults(fn=fn)
        return p

    p = add("brute", cmd_brute, "Polynomials by direct enumeration of partitions (small n only).")
    p.add_argument("--family", choices=("hook", "parts"), default="hook")
    p.add_argument("--t", type=int)
    p.add_argument("--n", required=True, help="n, start:stop:step, or a comma list")

    p = add("expand", cmd_expand, "Polynomials from product expansions, as JSON records.")
    _family_args(p, ("hook", "parts", "rr", "tcore"))
    p.add_argument("--n", help="n (p/q for rr), start:stop:step, or a comma list")
    p.add_argument("--nmax", help="every n from 0 up to this bound")

    p = add("roots", cmd_roots, "Certified zeros of one polynomial, as CSV.")
    _family_args(p, ("hook", "parts", "rr"))
    p.add_argument("--n", help="n for --family (p/q for rr)")
    p.add_argument("--poly", help="JSON list of integer coefficients, ascending powers of w")
    p.add_argument("--input", help="file holding one JSON polynomial record")
    p.add_argument("--tol", type=float, help="relative residual for certification")

    p = add("plot", cmd_plot, "SVG scatter plot of a roots CSV.")
    p.add_argument("input", nargs="?", help="roots CSV (default stdin)")
    for k in ("xmin", "xmax", "ymin", "ymax", "rmin", "rmax"):
        p.add_argument("--" + k, type=float)
    p.add_argument("--unit-circle", action="store_true", help="draw the unit circle")
    p.add_argument("--marker-radius", type=float, default=3.0)
    p.add_argument("--title")

    p = add("theta", cmd_theta, "Evaluate the lattice theta function.")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--z", required=True, help="point with |z| < 1, e.g. 0.3+0.2j")
    p.add_argument("--form", choices=tuple(THETA_FORMS) + ("all",), default="lattice")
    p.add_argument("--tol", type=float)

    p = add("theta-zeros", cmd_theta_zeros, "Zeros of theta in |z| <= 1/(1+eps) and the exceptional set.")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--samples", type=int, default=32, help="initial contour samples per arc")

    p = add("at", cmd_at, "Evaluate A_t(w, n).")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--w", default="0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--method", choices=("auto", "series", "direct"), default="auto")

    p = add("compare", cmd_compare, "Exact |P_t(w,n)| against the asymptotic main term, as CSV.")
    p.add_argument("--regime", choices=("large", "small"))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--w", required=True)
    p.add_argument("--n", required=True, help="start:stop:step or a comma list")
    p.add_argument("--constant", choices=asy.LARGE_W_CONSTANTS, default="corrected")
    p.add_argument("--tol", type=float)

    p = add("localize", cmd_localize, "Classify the zeros of P_t(w,n) by region, as JSON.")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--w0", type=float)
    p.add_argument("--min-fraction", type=float, default=0.95, help="exit 1 below this localized share")

    p = add("rr", cmd_rr, "Check that every zero of p_{1,b}(w;n) has nonpositive real part.")
    p.add_argument("--b", type=int, choices=(0, 1), required=True)
    p.add_argument("--n", required=True, help="n, start:stop:step, or a comma list")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--verbose", action="store_true", help="one line per n")
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.prec is not None:
            cfg = cfg.updated(precision_bits=args.prec)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        # library calls set their own precision; this guards any stray
        # arithmetic on their results at mpmath's 53-bit default
        with mp.workprec(cfg.precision_bits + 20):
            return args.fn(args, cfg)
    except (UsageError, DomainError, GridError, EnumerationLimitError, ValueError) as exc:
        print("hookpoly %s: error: %s" % (args.command, exc), file=sys.stderr)
        return 2
    except (ArithmeticError, FileNotFoundError) as exc:
        print("hookpoly %s: error: %s" % (args.command, exc), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
