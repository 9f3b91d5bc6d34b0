"""Dense polynomials in ``x`` over the rationals and the action of series on them.

The zero polynomial is stored canonically as the empty coefficient tuple and
has degree :data:`NEG_INFINITY`; every other polynomial has a nonzero leading
coefficient, so equality is plain tuple comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotDivisible, TruncationError
from .series import Number, Series, as_rat, format_rat

NEG_INFINITY = -math.inf


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [as_rat(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, value: Number) -> "Poly":
        return cls([value])

    @classmethod
    def monomial(cls, n: int, coeff: Number = 1) -> "Poly":
        return cls([0] * n + [coeff])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INFINITY

    def coeff(self, m: int) -> Fraction:
        return self._c[m] if 0 <= m < len(self._c) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def dense(self, length: int) -> list[Fraction]:
        """Coefficients padded with zeros to ``length`` entries."""
        return [self.coeff(m) for m in range(length)]

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return Poly(self.coeff(m) + o.coeff(m) for m in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(x * other for x in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(x / other for x in self._c)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, value):
        """Evaluate at a rational point (Horner)."""
        value = as_rat(value)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """``p(q(x))``."""
        acc = Poly()
        for c in reversed(self._c):
            acc = acc * inner + c
        return acc

    def scale_arg(self, c: Number) -> "Poly":
        """``p(c x)``."""
        c = as_rat(c)
        return Poly(a * c**m for m, a in enumerate(self._c))

    def derivative(self, k: int = 1) -> "Poly":
        c = self._c
        return Poly(c[m] * math.perm(m, k) for m in range(k, len(c)))

    def antiderivative(self) -> "Poly":
        """The antiderivative vanishing at zero."""
        return Poly([0] + [a / (m + 1) for m, a in enumerate(self._c)])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"Poly([{', '.join(format_rat(x) for x in self._c)}])"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for m in range(len(self._c) - 1, -1, -1):
            a = self._c[m]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if m == 0:
                body = format_rat(mag)
            else:
                xs = "x" if m == 1 else f"x^{m}"
                body = xs if mag == 1 else f"{format_rat(mag)}*{xs}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = Poly.x()


def _check_trunc(f: Series, p: Poly) -> None:
    if p.degree != NEG_INFINITY and f.trunc < p.degree:
        raise TruncationError(
            f"series known to order {f.trunc} cannot act on a degree-{p.degree} polynomial"
        )


def apply_series(f: Series, p: Poly) -> Poly:
    """Act with ``f(t)`` on ``p(x)``, where ``t`` is differentiation: ``sum c_k p^(k)``."""
    _check_trunc(f, p)
    pc, fc = p.coeffs, f.coeffs
    d = len(pc)
    out = []
    for j in range(d):
        s = Fraction(0)
        for k in range(d - j):
            if fc[k] and pc[j + k]:
                # d^k/dx^k of x^(j+k) is (j+k)!/j! x^j
                s += fc[k] * math.perm(j + k, k) * pc[j + k]
        out.append(s)
    return Poly(out)


def pair(f: Series, p: Poly) -> Fraction:
    """The pairing ``<f(t) | p(x)> = sum_n n! c_n [x^n]p``."""
    _check_trunc(f, p)
    fc = f.coeffs
    return sum(
        (math.factorial(n) * fc[n] * a for n, a in enumerate(p.coeffs) if a),
        Fraction(0),
    )


def shift(p: Poly, y: Number) -> Poly:
    """``p(x + y)``."""
    y = as_rat(y)
    pc = p.coeffs
    out = []
    for j in range(len(pc)):
        out.append(sum((math.comb(m, j) * y ** (m - j) * pc[m]
                        for m in range(j, len(pc)) if pc[m]), Fraction(0)))
    return Poly(out)


def integral_pair(p: Poly, y: Number) -> Fraction:
    """``int_0^y p(u) du``."""
    return p.antiderivative()(y)


def divide_by_x(p: Poly) -> Poly:
    if p.coeff(0):
        raise NotDivisible(f"constant term {format_rat(p.coeff(0))} is nonzero")
    return Poly(p.coeffs[1:])


def from_roots(roots: Sequence[Number]) -> Poly:
    """``prod (x - r)``."""
    acc = Poly.const(1)
    for r in roots:
        acc = acc * Poly([-as_rat(r), 1])
    return acc
