"""Truncated formal power series in ``t`` with exact rational coefficients.

A :class:`Series` stores the *ordinary* coefficients ``c_0 .. c_N`` of
``f(t) = sum c_k t^k`` together with its truncation order ``N``.  The
exponential ("umbral") coefficients ``a_k = k! c_k`` are exposed as a view
through :meth:`Series.umbral`; they are never stored separately.

Every binary operation returns a series truncated at the smaller of the two
orders.  Nothing is ever silently extended with zeros.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    CompositionUndefined,
    ConstructionError,
    NotDelta,
    NotInvertible,
    BadParams,
    UnknownName,
)

Rat = Fraction
Number = Union[int, Fraction]

#: order of a series whose stored coefficients are all zero
INFINITE = math.inf


def as_rat(value) -> Fraction:
    """Coerce ``int``/``Fraction``/``"p/q"`` to a Fraction; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimal and exponent notation are rejected."""
    s = text.strip()
    if not s or any(ch in s for ch in ".eE_ "):
        raise ValueError(f"not an exact rational literal: {text!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational literal: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Series:
    """Immutable truncated power series ``c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number], trunc: int | None = None):
        c = tuple(as_rat(x) for x in coeffs)
        if trunc is not None and len(c) != trunc + 1:
            raise ConstructionError(
                f"expected {trunc + 1} coefficients for trunc={trunc}, got {len(c)}"
            )
        if not c:
            raise ConstructionError("a series needs at least the constant coefficient")
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value: Number, trunc: int) -> "Series":
        return cls([value] + [0] * trunc)

    @classmethod
    def zero(cls, trunc: int) -> "Series":
        return cls.const(0, trunc)

    @classmethod
    def one(cls, trunc: int) -> "Series":
        return cls.const(1, trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, coeff: Number = 1) -> "Series":
        c = [0] * (trunc + 1)
        if k <= trunc:
            c[k] = coeff
        return cls(c)

    @classmethod
    def from_umbral(cls, a: Sequence[Number]) -> "Series":
        """Build from exponential coefficients ``a_k`` (so ``c_k = a_k / k!``)."""
        return cls(as_rat(x) / math.factorial(k) for k, x in enumerate(a))

    # -- accessors ----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def trunc(self) -> int:
        return len(self._c) - 1

    @property
    def order(self):
        for k, x in enumerate(self._c):
            if x:
                return k
        return INFINITE

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k]

    def __len__(self) -> int:
        return len(self._c)

    def umbral(self, k: int) -> Fraction:
        """The exponential coefficient ``a_k = k! c_k``, i.e. ``<f(t) | x^k>``."""
        return self._c[k] * math.factorial(k)

    def umbral_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(self.umbral(k) for k in range(len(self._c)))

    # -- truncation helpers -------------------------------------------
    def truncate(self, trunc: int) -> "Series":
        if trunc > self.trunc:
            raise ConstructionError(
                f"cannot extend a series known to order {self.trunc} up to {trunc}"
            )
        return self if trunc == self.trunc else Series(self._c[: trunc + 1])

    def shift_down(self, d: int) -> "Series":
        """Divide by ``t^d``; the first ``d`` coefficients must vanish."""
        if d == 0:
            return self
        if any(self._c[:d]):
            raise ConstructionError(f"series is not divisible by t^{d}")
        if d > self.trunc:
            raise ConstructionError(f"no coefficients left after dividing by t^{d}")
        return Series(self._c[d:])

    def shift_up(self, d: int) -> "Series":
        """Multiply by ``t^d`` keeping the truncation order."""
        n = self.trunc
        return Series(([Fraction(0)] * d + list(self._c))[: n + 1])

    # -- ring structure -----------------------------------------------
    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Series.const(other, self.trunc)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.trunc, o.trunc)
        return Series(self._c[k] + o._c[k] for k in range(n + 1))

    __radd__ = __add__

    def __neg__(self):
        return Series(-x for x in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Series(x * other for x in self._c)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        a, b = self._c, other._c
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return Series(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Series(x / other for x in self._c)
        if isinstance(other, Series):
            return self * mul_inverse(other)
        return NotImplemented

    def __pow__(self, n: int):
        return pow_int(self, n)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        body = ", ".join(format_rat(x) for x in self._c)
        return f"Series([{body}], trunc={self.trunc})"


def series_from_coeffs(coeffs: Sequence[Number], trunc: int) -> Series:
    return Series(coeffs, trunc)


def order_of(f: Series):
    return f.order


def mul_inverse(f: Series) -> Series:
    """Multiplicative inverse of a series with nonzero constant term."""
    c = f.coeffs
    if not c[0]:
        raise NotInvertible(f"series of order {f.order} has no reciprocal")
    inv0 = 1 / c[0]
    g = [inv0]
    for k in range(1, len(c)):
        s = sum((c[j] * g[k - j] for j in range(1, k + 1) if c[j]), Fraction(0))
        g.append(-s * inv0)
    return Series(g)


def compose(f: Series, g: Series) -> Series:
    """``f(g(t))`` by Horner's rule in the truncated ring."""
    if g.coeffs[0]:
        raise CompositionUndefined(
            "inner series has a nonzero constant term; f(g) would need infinite sums"
        )
    n = min(f.trunc, g.trunc)
    g = g.truncate(n)
    fc = f.coeffs
    acc = Series.const(fc[n], n)
    for k in range(n - 1, -1, -1):
        acc = acc * g + fc[k]
    return acc


def _require_delta(f: Series) -> None:
    if f.order != 1:
        raise NotDelta(f"expected a delta series (order 1), got order {f.order}")


def comp_inverse(f: Series, method: str = "solve") -> Series:
    """Compositional inverse ``fbar`` of a delta series: ``f(fbar(t)) = t``.

    ``method="solve"`` fixes one coefficient at a time from the triangular
    system ``[t^k] f(g) = delta_{k,1}``; ``method="lagrange"`` uses
    ``[t^n] fbar = (1/n) [w^(n-1)] (w / f(w))^n``.  Both give identical output.
    """
    _require_delta(f)
    n = f.trunc
    c1 = f.coeffs[1]
    if method == "lagrange":
        out = [Fraction(0)] * (n + 1)
        ratio = mul_inverse(f.shift_down(1))  # w / f(w), known to order n-1
        power = Series.one(ratio.trunc)
        for k in range(1, n + 1):
            power = power * ratio
            out[k] = power[k - 1] / k
        return Series(out)
    if method != "solve":
        raise ValueError(f"unknown inversion method {method!r}")
    g = [Fraction(0)] * (n + 1)
    g[1] = 1 / c1
    for k in range(2, n + 1):
        trial = compose(f.truncate(k), Series(g[: k + 1]))
        g[k] = -trial[k] / c1
    return Series(g)


def pow_int(f: Series, n: int) -> Series:
    """``f**n`` by repeated squaring; negative ``n`` requires an invertible ``f``."""
    if n < 0:
        f = mul_inverse(f)
        n = -n
    result = Series.one(f.trunc)
    base = f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


# -- named series ---------------------------------------------------------

def exp_series(c: Number, trunc: int) -> Series:
    """``e^(c t)``."""
    c = as_rat(c)
    out, term = [], Fraction(1)
    for k in range(trunc + 1):
        out.append(term)
        term = term * c / (k + 1)
    return Series(out)


def log1p_series(trunc: int) -> Series:
    return Series([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, trunc + 1)])


def binomial_series(a: Number, trunc: int) -> Series:
    """``(1+t)^a`` for rational ``a``; coefficients are generalized binomials."""
    a = as_rat(a)
    out, term = [], Fraction(1)
    for k in range(trunc + 1):
        out.append(term)
        term = term * (a - k) / (k + 1)
    return Series(out)


def _need(params: Mapping[str, Number], name: str, nonzero: bool) -> Fraction:
    if name not in params:
        raise BadParams(f"missing parameter {name!r}")
    value = as_rat(params[name])
    if nonzero and value == 0:
        raise BadParams(f"parameter {name!r} must be nonzero")
    return value


def _t(trunc):
    return Series.monomial(1, trunc)


def _euler_f(trunc):
    num = exp_series(1, trunc) - 1
    den = exp_series(1, trunc) + 1
    return num * mul_inverse(den)


BUILTINS = {
    "EXP_T": lambda p, n: exp_series(1, n),
    "EXPM1": lambda p, n: exp_series(1, n) - 1,
    "LOG1P": lambda p, n: log1p_series(n),
    "T": lambda p, n: _t(n),
    "CONST": lambda p, n: Series.const(_need(p, "c", False), n),
    "EXPM1_B": lambda p, n: exp_series(_need(p, "b", True), n) - 1,
    "T_EXP_A": lambda p, n: exp_series(_need(p, "a", True), n).shift_up(1),
    "T_ONE_PLUS_T_POW_A": lambda p, n: binomial_series(_need(p, "a", True), n).shift_up(1),
    "EULER_F": lambda p, n: _euler_f(n),
    "LAGUERRE_F_NEG": lambda p, n: _t(n) * mul_inverse(Series.one(n) + _t(n)),
    "SSTAR_F": lambda p, n: (exp_series(1, n) + 1).shift_up(1) / 2,
}


def builtin(name: str, params: Mapping[str, Number] | None = None, trunc: int = 8) -> Series:
    """Exact expansion of one of the named series in :data:`BUILTINS`."""
    try:
        make = BUILTINS[name]
    except KeyError:
        raise UnknownName(f"unknown builtin series {name!r}") from None
    return make(params or {}, trunc)
