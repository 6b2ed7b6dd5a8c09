"""Integer partitions, hook lengths, and brute-force partition polynomials.

Everything here works by explicit enumeration and serves as ground truth for
the product-formula expansions in :mod:`hookpoly.series`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .poly import WPolynomial

DEFAULT_ENUMERATION_CAP = 40


class EnumerationLimitError(ValueError):
    """Raised when a brute-force enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError("parts must be positive and non-increasing: %r" % (p,))
        object.__setattr__(self, "parts", p)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition(())
        return
    # a[0..k] holds the current partition; standard reverse-lex successor step
    a = [n]
    while True:
        yield Partition(tuple(a))
        # strip trailing ones, remembering how much mass they carried
        rem = 0
        while a and a[-1] == 1:
            a.pop()
            rem += 1
        if not a:
            return
        x = a.pop() - 1
        rem += 1
        a.append(x)
        while rem > x:
            a.append(x)
            rem -= x
        if rem:
            a.append(rem)


def hook_numbers(lam: Partition) -> tuple[int, ...]:
    """Hook lengths of all cells, row by row.

    The hook of cell ``(i, j)`` counts the cell itself, the cells to its right
    in row ``i`` and the cells below it in column ``j``.
    """
    parts = lam.parts
    if not parts:
        return ()
    cols = lam.conjugate().parts
    return tuple(
        (parts[i] - j - 1) + (cols[j] - i - 1) + 1
        for i in range(len(parts))
        for j in range(parts[i])
    )


def hook_multiset(lam: Partition) -> Counter:
    return Counter(hook_numbers(lam))


def count_t_hooks(lam: Partition, t: int) -> int:
    if t < 1:
        raise ValueError("t must be positive")
    return sum(1 for h in hook_numbers(lam) if h % t == 0)


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise EnumerationLimitError("n=%d exceeds enumeration cap %d" % (n, cap))


def brute_force_Pt(t: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> WPolynomial:
    """``sum over partitions of n of w^(number of hooks divisible by t)``."""
    if t < 1:
        raise ValueError("t must be positive")
    _check_cap(n, cap)
    terms: Counter = Counter(count_t_hooks(lam, t) for lam in enumerate_partitions(n))
    return WPolynomial.from_terms(terms)


def brute_force_Qn(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> WPolynomial:
    """``sum over partitions of n of w^(number of parts)``."""
    _check_cap(n, cap)
    return WPolynomial.from_terms(Counter(lam.length for lam in enumerate_partitions(n)))


def superdistinct_partitions(n: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` whose parts differ pairwise by at least 2 and are >= ``min_part``.

    Direct recursive enumeration, used as an independent check on the
    Rogers-Ramanujan sum-side expansions.
    """

    def rec(rest, lo):
        if rest == 0:
            yield ()
            return
        for first in range(lo, rest + 1):
            for tail in rec(rest - first, first + 2):
                yield (first,) + tail

    for p in rec(n, min_part):
        yield tuple(reversed(p))


_P_CACHE: list[int] = [1]


def partition_numbers(N: int) -> list[int]:
    """Return ``[p(0), ..., p(N)]`` via Euler's pentagonal-number recurrence."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    p = _P_CACHE
    for m in range(len(p), N + 1):
        s = 0
        k = 1
        while True:
            g = k * (3 * k - 1) // 2
            if g > m:
                break
            term = p[m - g]
            g2 = g + k
            if g2 <= m:
                term += p[m - g2]
            s += term if k & 1 else -term
            k += 1
        p.append(s)
    return p[: N + 1]
