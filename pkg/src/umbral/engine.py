"""Associated sequences, the transfer formula and Sheffer orthogonality.

An associated sequence for a delta series ``f`` is built from the conjugate
representation

    s_n(x) = sum_k <fbar(t)^k | x^n> / k! * x^k,

where ``fbar`` is the compositional inverse of ``f``.  The transfer formula

    q_n(x) = x (f(t)/g(t))^n x^(-1) p_n(x)

is kept as an independent route between two associated sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotDelta, TruncationError
from .polynomial import NEG_INFINITY, Poly, X, apply_series, divide_by_x, pair
from .series import Series, comp_inverse, mul_inverse, pow_int


@dataclass(frozen=True)
class AssociatedSpec:
    f: Series
    n_max: int
    trunc: int | None = None

    def __post_init__(self):
        if self.f.order != 1:
            raise NotDelta(f"expected a delta series, got order {self.f.order}")
        trunc = self.n_max if self.trunc is None else self.trunc
        if trunc < self.n_max:
            raise TruncationError(f"trunc={trunc} is below n_max={self.n_max}")
        if self.f.trunc < trunc:
            raise TruncationError(
                f"f is known to order {self.f.trunc}; s_{self.n_max} needs order {trunc}"
            )
        object.__setattr__(self, "trunc", trunc)


def associated_sequence(spec: AssociatedSpec | Series, n_max: int | None = None) -> list[Poly]:
    """``[s_0, ..., s_n_max]`` associated to ``spec.f``.

    Accepts either an :class:`AssociatedSpec` or a bare delta series plus
    ``n_max``.
    """
    if isinstance(spec, Series):
        spec = AssociatedSpec(spec, spec.trunc if n_max is None else n_max)
    n_max = spec.n_max
    fbar = comp_inverse(spec.f.truncate(spec.trunc))
    # powers[k][n] = [t^n] fbar^k
    powers = [Series.one(fbar.trunc)]
    for _ in range(n_max):
        powers.append(powers[-1] * fbar)
    out = []
    for n in range(n_max + 1):
        c = [Fraction(0)] * (n + 1)
        nf = math.factorial(n)
        for k in range(n + 1):
            c[k] = powers[k][n] * nf / math.factorial(k)
        out.append(Poly(c))
    return out


def delta_quotient(f: Series, g: Series) -> Series:
    """The order-zero series ``f/g`` for two delta series.

    Both are divided by ``t`` first so the only division is by an invertible
    series; the result is known to one order less than its inputs.
    """
    for name, s in (("f", f), ("g", g)):
        if s.order != 1:
            raise NotDelta(f"{name} must be a delta series, got order {s.order}")
    return f.shift_down(1) * mul_inverse(g.shift_down(1))


def transfer(p_n: Poly, f: Series, g: Series, n: int) -> Poly:
    """Turn the n-th member of the sequence for ``f`` into the one for ``g``."""
    if n < 1:
        raise ValueError("transfer needs n >= 1")
    reduced = divide_by_x(p_n)
    ratio = pow_int(delta_quotient(f, g), n)
    return X * apply_series(ratio, reduced)


def orthogonality_check(g: Series, f: Series, polys: Sequence[Poly]) -> list[list[Fraction]]:
    """Matrix ``M[n][k] = <g(t) f(t)^k | polys[n]>``.

    The sequence is Sheffer for ``(g, f)`` exactly when ``M[n][k] = n! delta``.
    """
    if f.order != 1:
        raise NotDelta(f"expected a delta series, got order {f.order}")
    if g.order != 0:
        raise ValueError("g must be invertible (order 0)")
    top = max((p.degree for p in polys), default=NEG_INFINITY)
    trunc = min(f.trunc, g.trunc)
    if top != NEG_INFINITY and trunc < top:
        raise TruncationError(f"series known to order {trunc}, polynomials reach degree {top}")
    rows = len(polys)
    functionals = []
    acc = g
    for _ in range(rows):
        functionals.append(acc)
        acc = acc * f
    return [[pair(functionals[k], p) for k in range(rows)] for p in polys]


def is_sheffer_matrix(m: list[list[Fraction]]) -> bool:
    return all(
        v == (math.factorial(n) if n == k else 0)
        for n, row in enumerate(m)
        for k, v in enumerate(row)
    )
