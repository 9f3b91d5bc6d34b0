"""Stirling numbers, generalized binomials, falling factorials, compositions."""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterator

from .polynomial import Poly
from .series import Number, as_rat


class StirlingKind(enum.Enum):
    FIRST = "first"
    SECOND = "second"


class StirlingTable:
    """Triangular table of Stirling numbers for ``0 <= k <= n <= n_max``.

    First-kind numbers are signed: ``(x)_n = sum_k S1(n, k) x^k``.
    """

    __slots__ = ("kind", "n_max", "_rows")

    def __init__(self, kind: StirlingKind, n_max: int):
        rows = [(1,)]
        for n in range(n_max):
            prev = rows[-1]
            row = [0] * (n + 2)
            for k in range(1, n + 2):
                left = prev[k - 1]
                here = prev[k] if k <= n else 0
                if kind is StirlingKind.FIRST:
                    row[k] = left - n * here
                else:
                    row[k] = left + k * here
            rows.append(tuple(row))
        self.kind = kind
        self.n_max = n_max
        self._rows = tuple(rows)

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        return self._rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self._rows[n]


_tables: dict[StirlingKind, StirlingTable] = {}


def stirling_table(kind: StirlingKind, n_max: int) -> StirlingTable:
    """Shared table covering at least ``n_max``; a larger request replaces it."""
    table = _tables.get(kind)
    if table is None or table.n_max < n_max:
        table = StirlingTable(kind, max(n_max, 2 * (table.n_max if table else 16)))
        _tables[kind] = table
    return table


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind; zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return stirling_table(StirlingKind.FIRST, n)(n, k)


def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return stirling_table(StirlingKind.SECOND, n)(n, k)


def gen_binomial(r: Number, k: int) -> Fraction:
    """``r (r-1) ... (r-k+1) / k!`` for any rational ``r``; zero for ``k < 0``."""
    if k < 0:
        return Fraction(0)
    return falling(r, k) / math.factorial(k)


def falling(r: Number, k: int) -> Fraction:
    r = as_rat(r)
    acc = Fraction(1)
    for j in range(k):
        acc *= r - j
    return acc


def falling_poly(n: int) -> Poly:
    """``(x)_n = x (x-1) ... (x-n+1)`` with ``(x)_0 = 1``."""
    acc = Poly.const(1)
    for j in range(n):
        acc = acc * Poly([-j, 1])
    return acc


def multinomial(parts) -> int:
    total = sum(parts)
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Every tuple of ``parts`` non-negative integers summing to ``total``.

    Tuples come out in colexicographic order: the last entry varies slowest.
    """
    if parts < 1:
        raise ValueError("parts must be at least 1")
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for head in compositions(total - last, parts - 1):
            yield head + (last,)
