"""Named polynomial families, their closed forms and their defining series."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import falling, falling_poly, gen_binomial, stirling2
from .errors import BadParams, UnknownName
from .polynomial import Poly, X, apply_series
from .series import (
    Number,
    Series,
    as_rat,
    builtin,
    exp_series,
    format_rat,
    mul_inverse,
    pow_int,
)


class FamilyKind(enum.Enum):
    FALLING = "falling"
    SCALED_FALLING = "scaled-falling"
    MONOMIAL = "monomial"
    BERNOULLI = "bernoulli"
    EULER = "euler"
    ABEL = "abel"
    BELL = "bell"
    MITTAG_LEFFLER = "mittag-leffler"
    LAGUERRE_NEG = "laguerre-neg"
    ASSOC_POWER_S = "assoc-power-s"
    ASSOC_SSTAR = "assoc-sstar"


# kind -> (parameter name, must be nonzero, must be integer)
_PARAMS = {
    FamilyKind.SCALED_FALLING: ("b", True, False),
    FamilyKind.BERNOULLI: ("r", False, True),
    FamilyKind.EULER: ("r", False, True),
    FamilyKind.ABEL: ("a", True, False),
    FamilyKind.ASSOC_POWER_S: ("a", True, False),
}

APPELL = frozenset({FamilyKind.BERNOULLI, FamilyKind.EULER})
PARAMETRIZED = frozenset(_PARAMS)


@dataclass(frozen=True)
class Family:
    kind: FamilyKind
    param: Fraction | None = None

    def __post_init__(self):
        spec = _PARAMS.get(self.kind)
        if spec is None:
            if self.param is not None:
                raise BadParams(f"{self.kind.value} takes no parameter")
            return
        name, nonzero, integral = spec
        if self.param is None:
            raise BadParams(f"{self.kind.value} needs parameter {name!r}")
        value = as_rat(self.param)
        if nonzero and value == 0:
            raise BadParams(f"{self.kind.value}: parameter {name!r} must be nonzero")
        if integral and value.denominator != 1:
            raise BadParams(f"{self.kind.value}: parameter {name!r} must be an integer")
        object.__setattr__(self, "param", value)

    @property
    def is_associated(self) -> bool:
        return self.kind not in APPELL

    @property
    def param_name(self) -> str | None:
        spec = _PARAMS.get(self.kind)
        return spec[0] if spec else None

    def __str__(self):
        if self.param is None:
            return self.kind.value
        return f"{self.kind.value}({self.param_name}={format_rat(self.param)})"


def family(name: str, params: dict | None = None) -> Family:
    """Look a family up by its CLI name, pulling its parameter from ``params``."""
    try:
        kind = FamilyKind(name.lower().replace("_", "-"))
    except ValueError:
        raise UnknownName(f"unknown family {name!r}") from None
    spec = _PARAMS.get(kind)
    if spec is None:
        return Family(kind)
    pname = spec[0]
    params = params or {}
    if pname not in params:
        raise BadParams(f"family {kind.value} needs --param {pname}=...")
    return Family(kind, as_rat(params[pname]))


# -- higher-order Bernoulli and Euler polynomials --------------------------

def bernoulli_gf(trunc: int) -> Series:
    """``t / (e^t - 1)``."""
    return mul_inverse((exp_series(1, trunc + 1) - 1).shift_down(1))


def euler_gf(trunc: int) -> Series:
    """``2 / (e^t + 1)``."""
    return mul_inverse((exp_series(1, trunc) + 1) / 2)


@lru_cache(maxsize=None)
def _bernoulli_power(r: int, trunc: int) -> Series:
    return pow_int(bernoulli_gf(trunc), r)


@lru_cache(maxsize=None)
def _euler_power(r: int, trunc: int) -> Series:
    return pow_int(euler_gf(trunc), r)


@lru_cache(maxsize=None)
def bernoulli_high(n: int, r: int) -> Poly:
    """``B_n^(r)(x)``: coefficient of ``t^n/n!`` in ``(t/(e^t-1))^r e^(xt)``.

    Negative ``r`` uses the reciprocal ``((e^t-1)/t)^|r|``.
    """
    return apply_series(_bernoulli_power(r, n), Poly.monomial(n))


@lru_cache(maxsize=None)
def euler_high(n: int, r: int) -> Poly:
    """``E_n^(r)(x)``: coefficient of ``t^n/n!`` in ``(2/(e^t+1))^r e^(xt)``."""
    return apply_series(_euler_power(r, n), Poly.monomial(n))


# -- closed forms ----------------------------------------------------------

def abel_poly(n: int, a: Number) -> Poly:
    """``A_n(x; a) = x (x - a n)^(n-1)``, with ``A_0 = 1``."""
    if n == 0:
        return Poly.const(1)
    a = as_rat(a)
    return X * Poly([-a * n, 1]) ** (n - 1)


def scaled_falling_poly(n: int, b: Number) -> Poly:
    """``(x/b)_n``."""
    return falling_poly(n).scale_arg(1 / as_rat(b))


def bell_poly(n: int) -> Poly:
    return Poly(stirling2(n, k) for k in range(n + 1))


def mittag_leffler_poly(n: int) -> Poly:
    acc = Poly()
    for k in range(n + 1):
        w = math.comb(n, k) * falling(n - 1, n - k) * 2**k
        if w:
            acc = acc + falling_poly(k) * w
    return acc


def laguerre_neg_poly(n: int) -> Poly:
    """``L_n(-x)``, the Laguerre polynomial of order zero at ``-x``."""
    if n == 0:
        return Poly.const(1)
    c = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        c[k] = Fraction(math.comb(n - 1, k - 1) * math.factorial(n), math.factorial(k))
    return Poly(c)


def power_s_poly(n: int, a: Number) -> Poly:
    """The sequence associated to ``t (1+t)^a``."""
    if n == 0:
        return Poly.const(1)
    a = as_rat(a)
    c = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        c[k] = gen_binomial(-a * n, n - k) * falling(n - 1, n - k)
    return Poly(c)


def sstar_poly(n: int) -> Poly:
    """The sequence associated to ``t (e^t+1)/2``: ``x E_(n-1)^(n)(x)``."""
    if n == 0:
        return Poly.const(1)
    return X * euler_high(n - 1, n)


def family_poly(fam: Family, n: int) -> Poly:
    if n < 0:
        raise BadParams("n must be non-negative")
    k, p = fam.kind, fam.param
    if k is FamilyKind.FALLING:
        return falling_poly(n)
    if k is FamilyKind.SCALED_FALLING:
        return scaled_falling_poly(n, p)
    if k is FamilyKind.MONOMIAL:
        return Poly.monomial(n)
    if k is FamilyKind.BERNOULLI:
        return bernoulli_high(n, int(p))
    if k is FamilyKind.EULER:
        return euler_high(n, int(p))
    if k is FamilyKind.ABEL:
        return abel_poly(n, p)
    if k is FamilyKind.BELL:
        return bell_poly(n)
    if k is FamilyKind.MITTAG_LEFFLER:
        return mittag_leffler_poly(n)
    if k is FamilyKind.LAGUERRE_NEG:
        return laguerre_neg_poly(n)
    if k is FamilyKind.ASSOC_POWER_S:
        return power_s_poly(n, p)
    if k is FamilyKind.ASSOC_SSTAR:
        return sstar_poly(n)
    raise UnknownName(f"unknown family {fam!r}")


# kind -> (builtin name, parameter name passed through, human-readable f)
_DELTA = {
    FamilyKind.FALLING: ("EXPM1", None, "exp(t)-1"),
    FamilyKind.SCALED_FALLING: ("EXPM1_B", "b", "exp(b*t)-1"),
    FamilyKind.MONOMIAL: ("T", None, "t"),
    FamilyKind.ABEL: ("T_EXP_A", "a", "t*exp(a*t)"),
    FamilyKind.BELL: ("LOG1P", None, "log1p(t)"),
    FamilyKind.MITTAG_LEFFLER: ("EULER_F", None, "(exp(t)-1)/(exp(t)+1)"),
    FamilyKind.LAGUERRE_NEG: ("LAGUERRE_F_NEG", None, "t/(1+t)"),
    FamilyKind.ASSOC_POWER_S: ("T_ONE_PLUS_T_POW_A", "a", "t*(1+t)^a"),
    FamilyKind.ASSOC_SSTAR: ("SSTAR_F", None, "t*(exp(t)+1)/2"),
}


def family_pair(fam: Family, trunc: int) -> tuple[Series, Series]:
    """The defining pair ``(g, f)`` with ``s_n ~ (g(t), f(t))``.

    Associated families have ``g = 1``.  The two Appell families are
    included for the CLI: their ``f`` is ``t`` and ``g`` is the reciprocal of
    their generating factor.
    """
    if fam.kind is FamilyKind.BERNOULLI:
        return pow_int(bernoulli_gf(trunc), -int(fam.param)), Series.monomial(1, trunc)
    if fam.kind is FamilyKind.EULER:
        return pow_int(euler_gf(trunc), -int(fam.param)), Series.monomial(1, trunc)
    name, pname, _ = _DELTA[fam.kind]
    params = {pname: fam.param} if pname else {}
    return Series.one(trunc), builtin(name, params, trunc)


def family_pair_text(fam: Family) -> tuple[str, str]:
    """``(g, f)`` in the series expression language; parameters stay symbolic."""
    if fam.kind is FamilyKind.BERNOULLI:
        return f"((exp(t)-1)/t)^{int(fam.param)}", "t"
    if fam.kind is FamilyKind.EULER:
        return f"((exp(t)+1)/2)^{int(fam.param)}", "t"
    return "1", _DELTA[fam.kind][2]


ASSOCIATED_KINDS = tuple(k for k in FamilyKind if k not in APPELL)

