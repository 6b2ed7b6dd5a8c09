"""Exact univariate polynomials in ``w`` with arbitrary-precision integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class WPolynomial:
    """Immutable polynomial ``sum c_k w^k`` with Python ``int`` coefficients.

    Coefficients are stored densely with trailing zeros stripped, so the zero
    polynomial has an empty coefficient tuple and ``degree is None``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "WPolynomial":
        if not terms:
            return cls()
        if min(terms) < 0:
            raise ValueError("negative w-degree")
        c = [0] * (max(terms) + 1)
        for k, v in terms.items():
            c[k] += v
        return cls(c)

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> "WPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Dense coefficients, ``coeffs[k]`` multiplies ``w^k``."""
        return self._c

    @property
    def degree(self) -> int | None:
        return len(self._c) - 1 if self._c else None

    def terms(self) -> dict[int, int]:
        """Sparse view: w-degree -> nonzero coefficient."""
        return {k: v for k, v in enumerate(self._c) if v}

    def is_zero(self) -> bool:
        return not self._c

    @property
    def lead(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    def valuation(self) -> int:
        """Multiplicity of the root ``w = 0`` (lowest degree with nonzero coefficient)."""
        for k, v in enumerate(self._c):
            if v:
                return k
        raise ValueError("zero polynomial")

    def shift_down(self, k: int) -> "WPolynomial":
        if any(self._c[:k]):
            raise ValueError("polynomial not divisible by w^%d" % k)
        return WPolynomial(self._c[k:])

    def __call__(self, w):
        acc = 0
        for c in reversed(self._c):
            acc = acc * w + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, WPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == WPolynomial([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __add__(self, other: "WPolynomial") -> "WPolynomial":
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return WPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "WPolynomial":
        return WPolynomial(-x for x in self._c)

    def __sub__(self, other: "WPolynomial") -> "WPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "WPolynomial":
        if isinstance(other, int):
            return WPolynomial(x * other for x in self._c)
        a, b = self._c, other._c
        if not a or not b:
            return WPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return WPolynomial(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "WPolynomial(%s)" % (str(self) or "0")

    def __str__(self) -> str:
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append("%d*w" % c)
            else:
                parts.append("%d*w^%d" % (c, k))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal exactly; decimal literals are rejected."""
    s = str(text).strip().replace("−", "-")
    if any(ch in s for ch in ".eE"):
        raise ValueError("decimal value %r would be rounded; give p/q" % text)
    return Fraction(s)


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
