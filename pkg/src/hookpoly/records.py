"""Text formats: JSON polynomial records, roots CSV, evaluation JSON.

Numbers are written as decimal strings so nothing passes through a binary
float on the way out.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

import mpmath as mp

from .numerics import PrecComplex
from .poly import WPolynomial, format_fraction, parse_fraction

FAMILIES = ("hook", "parts", "rr", "tcore")


def poly_record(family: str, n, poly: WPolynomial, t: int | None = None, a=None, b=None) -> dict:
    if family not in FAMILIES:
        raise ValueError("unknown family %r" % family)
    return {
        "family": family,
        "t": t,
        "a": None if a is None else format_fraction(Fraction(a)),
        "b": None if b is None else format_fraction(Fraction(b)),
        "n": format_fraction(Fraction(n)),
        "coeffs": [str(c) for c in poly.coeffs],
    }


def dump_records(records) -> str:
    """One record as an object, several as an array; fixed key order."""
    payload = records[0] if len(records) == 1 else list(records)
    return json.dumps(payload, indent=None) + "\n"


def load_records(text: str) -> list[dict]:
    data = json.loads(text)
    recs = data if isinstance(data, list) else [data]
    for r in recs:
        if not isinstance(r, dict) or "coeffs" not in r:
            raise ValueError("not a polynomial record")
    return recs


def record_poly(rec: dict) -> WPolynomial:
    return WPolynomial([int(c) for c in rec["coeffs"]])


def record_n(rec: dict) -> Fraction:
    return parse_fraction(rec["n"])


def dec(x, prec: int) -> str:
    """Full-precision decimal string of a real mpmath number."""
    digits = max(int(prec * math.log10(2)), 1)
    with mp.workprec(prec + 10):
        x = mp.mpf(x)
    return mp.nstr(x, digits, min_fixed=-mp.inf, max_fixed=mp.inf)


def roots_csv(rs, meta: dict | None = None) -> str:
    """``re,im,residual`` rows, preceded by ``# key=value`` metadata lines."""
    out = io.StringIO()
    for k, v in (meta or {}).items():
        out.write("# %s=%s\n" % (k, v))
    out.write("# degree=%d\n# zero_multiplicity=%d\n" % (rs.degree, rs.zero_multiplicity))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["re", "im", "residual"])
    for r, res in zip(rs.roots, rs.residuals):
        w.writerow([dec(r.value.real, r.prec), dec(r.value.imag, r.prec), mp.nstr(mp.mpf(res), 6)])
    return out.getvalue()


def read_roots_csv(text: str) -> tuple[dict, list[tuple[float, float]]]:
    """Metadata and ``(re, im)`` pairs from a roots CSV."""
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k.strip()] = v.strip()
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    if not rows or rows[0][:2] != ["re", "im"]:
        raise ValueError("roots CSV must start with a re,im header")
    pts = []
    for row in rows[1:]:
        x, y = float(row[0]), float(row[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("non-finite coordinate in roots CSV")
        pts.append((x, y))
    return meta, pts


def complex_json(z: PrecComplex) -> dict:
    return z.strings()


def evaluation_json(t: int, ell, z, value: PrecComplex, form: str, **extra) -> dict:
    zc = z if isinstance(z, PrecComplex) else PrecComplex.of(z, value.prec)
    d = {
        "t": t,
        "ell": ell,
        "z": zc.strings(),
        "value": value.strings(),
        "err": value.err_string(),
        "form": form,
    }
    d.update(extra)
    return d


def disc_report_json(rep) -> dict:
    return {
        "t": rep.spec.t,
        "ell": rep.spec.ell,
        "eps": repr(rep.eps),
        "center": {"re": "0", "im": "0"},
        "radius": mp.nstr(rep.radius, 17),
        "count": rep.count,
        "zeros": [dict(z.strings(), err=z.err_string()) for z in rep.zeros],
        "exceptional_set": [dict(z.strings(), err=z.err_string()) for z in rep.exceptional_set()],
    }
