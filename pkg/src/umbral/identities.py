"""Registry of polynomial identities and an exact verifier for them.

Each registered identity has two transcriptions:

``AS_STATED``
    the displayed statement, copied term for term (including any misprint).
``DERIVATION_FORM``
    the line of the derivation the statement was read off from.  Where the
    two agree the derivation form re-derives the same quantity along an
    independent route (usually the transfer formula) instead.

Both sides of every check are exact :class:`~umbral.polynomial.Poly` or
:class:`~fractions.Fraction` values; PASS means exact equality.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .combinatorics import (
    compositions,
    falling,
    falling_poly,
    gen_binomial,
    multinomial,
    stirling1 as S1,
    stirling2 as S2,
)
from .engine import associated_sequence, transfer
from .errors import BadParams, UmbralError, UnknownName
from .polynomial import Poly, X, apply_series, shift
from .sequences import (
    abel_poly,
    bell_poly,
    bernoulli_high as B,
    euler_high as E,
    laguerre_neg_poly,
    mittag_leffler_poly,
    power_s_poly,
    scaled_falling_poly,
)
from .series import (
    Series,
    as_rat,
    binomial_series,
    builtin,
    exp_series,
    log1p_series,
    pow_int,
)

Value = Union[Poly, Fraction]
comb = math.comb


class Variant(enum.Enum):
    AS_STATED = "as-stated"
    DERIVATION_FORM = "derivation"


class StatementKind(enum.Enum):
    POLY_IDENTITY = "poly"
    SCALAR_IDENTITY = "scalar"


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ERROR = "ERROR"  # failed to evaluate


class UnknownIdentity(UnknownName):
    pass


DEFAULT_SWEEP: dict[str, tuple[Fraction, ...]] = {
    "a": (Fraction(1), Fraction(-1, 2), Fraction(3)),
    "b": (Fraction(1), Fraction(2), Fraction(-1, 3)),
}

DEFAULT_K_MAX = 8


@dataclass(frozen=True)
class Check:
    label: str
    lhs: Value
    rhs: Value
    index: tuple[int, ...] = ()


@dataclass(frozen=True)
class Context:
    params: Mapping[str, Fraction]
    k_max: int = DEFAULT_K_MAX

    @property
    def a(self) -> Fraction:
        return self.params["a"]

    @property
    def b(self) -> Fraction:
        return self.params["b"]


Builder = Callable[[int, Context], list[Check]]


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    statement_kind: StatementKind
    statement: str
    params: tuple[str, ...]
    n_min: int
    as_stated: Builder
    derivation: Builder | None = None
    derivation_statement: str | None = None

    def builder(self, variant: Variant) -> Builder:
        if variant is Variant.DERIVATION_FORM and self.derivation is not None:
            return self.derivation
        return self.as_stated


@dataclass(frozen=True)
class Outcome:
    n: int
    check: str
    index: tuple[int, ...]
    params: tuple[tuple[str, Fraction], ...]
    status: Status
    lhs: Value | None = None
    rhs: Value | None = None
    diff: Value | None = None
    message: str | None = None


@dataclass
class IdentityReport:
    id: str
    variant: Variant
    outcomes: list[Outcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.status is Status.PASS for o in self.outcomes)

    def failures(self) -> list[Outcome]:
        return [o for o in self.outcomes if o.status is not Status.PASS]


REGISTRY: dict[str, IdentityDescriptor] = {}


def register(id, kind, statement, *, params=(), n_min=1, derivation=None,
             derivation_statement=None):
    def deco(fn: Builder) -> Builder:
        REGISTRY[id] = IdentityDescriptor(
            id, kind, statement, tuple(params), n_min, fn, derivation, derivation_statement
        )
        return fn
    return deco


POLY = StatementKind.POLY_IDENTITY
SCALAR = StatementKind.SCALAR_IDENTITY


# -- shared pieces ---------------------------------------------------------

def _t(trunc: int) -> Series:
    return Series.monomial(1, trunc)


def _expm1_over_t(trunc: int) -> Series:
    return (exp_series(1, trunc + 1) - 1).shift_down(1)


def _log1p_over_t(trunc: int) -> Series:
    return log1p_series(trunc + 1).shift_down(1)


def _delta(i: int, j: int) -> Fraction:
    return Fraction(1 if i == j else 0)


def _bernoulli_number(k: int, r: int) -> Fraction:
    """``B_k^(r) = B_k^(r)(0)``."""
    return B(k, r).coeff(0)


def _integral_next_unit(p: Poly) -> Poly:
    """``int_x^(x+1) p(u) du`` as a polynomial in ``x``."""
    anti = p.antiderivative()
    return shift(anti, 1) - anti


def _sum(polys: Iterable[Poly]) -> Poly:
    acc = Poly()
    for p in polys:
        acc = acc + p
    return acc


def _x_minus(c: Fraction) -> Poly:
    return Poly([-c, 1])


# -- Stirling-number expansions ---------------------------------------------

def _thm1(n, ctx):
    out = []
    for m in range(n + 1):
        rhs = sum(
            (Fraction(comb(l + m, l), comb(l + n + 1, l)) * S2(l + n + 1, n + 1) * S1(n, l + m)
             for l in range(n - m + 1)),
            Fraction(0),
        )
        out.append(Check("binomial", Fraction(comb(n, m)), rhs, (m,)))
    return out


register("thm1", SCALAR,
         "binom(n,m) = sum_{l=0}^{n-m} binom(l+m,l)/binom(l+n+1,l) S2(l+n+1,n+1) S1(n,l+m)",
         n_min=0)(_thm1)


def _eq5_double_sum(n):
    c = []
    for m in range(n + 1):
        c.append(sum(
            (Fraction(comb(l + m, l), comb(l + n + 1, l)) * S2(l + n + 1, n + 1) * S1(n, l + m)
             for l in range(n - m + 1)),
            Fraction(0),
        ))
    return Poly(c)


def _eq5_der(n, ctx):
    acc = Poly()
    for l in range(n + 1):
        w = Fraction(math.factorial(n + 1), math.factorial(l + n + 1)) * S2(l + n + 1, n + 1)
        inner = Poly(S1(n, l + m) * math.perm(l + m, l) for m in range(n - l + 1))
        acc = acc + inner * w
    return [Check("operator-sum", shift(Poly.monomial(n), 1), acc)]


@register("eq5", POLY,
          "(x+1)^n = sum_m sum_l binom(l+m,l)/binom(l+n+1,l) S2(l+n+1,n+1) S1(n,l+m) x^m",
          n_min=0, derivation=_eq5_der,
          derivation_statement="(x+1)^n = sum_l (n+1)!/(l+n+1)! S2(l+n+1,n+1) "
                               "sum_m S1(n,l+m) (l+m)_l x^m")
def _eq5(n, ctx):
    return [Check("double-sum", shift(Poly.monomial(n), 1), _eq5_double_sum(n))]


def _eq3_der(n, ctx):
    return [Check("transfer", Poly.monomial(n),
                  transfer(falling_poly(n), exp_series(1, n + 1) - 1, _t(n + 1), n))]


@register("eq3", POLY,
          "x^n = x sum_l n!/(l+n)! S2(l+n,n) t^l (x-1)_(n-1)",
          derivation=_eq3_der,
          derivation_statement="x^n = x ((e^t-1)/t)^n x^(-1) (x)_n")
def _eq3(n, ctx):
    op = Series(Fraction(math.factorial(n), math.factorial(l + n)) * S2(l + n, n)
                for l in range(n))
    return [Check("stirling-operator", Poly.monomial(n),
                  X * apply_series(op, shift(falling_poly(n - 1), -1)))]


# -- Bernoulli polynomials of order n and falling factorials ----------------

def _lem2_der(n, ctx):
    lhs = X * B(n, n + 1)
    rhs = transfer(Poly.monomial(n + 1), _t(n + 2), exp_series(1, n + 2) - 1, n + 1)
    return [Check("transfer", lhs, rhs)]


@register("lem2", POLY, "B_n^(n+1)(x+1) = (x)_n", derivation=_lem2_der,
          derivation_statement="x B_n^(n+1)(x) = x (t/(e^t-1))^(n+1) x^(-1) x^(n+1)")
def _lem2(n, ctx):
    return [Check("shifted", shift(B(n, n + 1), 1), falling_poly(n))]


def _eq9_der(n, ctx):
    return [Check("transfer", X * B(n - 1, n),
                  transfer(Poly.monomial(n), _t(n + 1), exp_series(1, n + 1) - 1, n))]


@register("eq9", POLY, "B_(n-1)^(n)(x) = (x-1)_(n-1)", derivation=_eq9_der,
          derivation_statement="x B_(n-1)^(n)(x) = x (t/(e^t-1))^n x^(-1) x^n")
def _eq9(n, ctx):
    return [Check("falling", B(n - 1, n), shift(falling_poly(n - 1), -1))]


def _eq13_der(n, ctx):
    return [Check("operator", shift(B(n, n), 1),
                  apply_series(_expm1_over_t(n), falling_poly(n)))]


@register("eq13", POLY, "B_n^(n)(x+1) = int_x^(x+1) (u)_n du", derivation=_eq13_der,
          derivation_statement="B_n^(n)(x+1) = ((e^t-1)/t) (x)_n")
def _eq13(n, ctx):
    return [Check("integral", shift(B(n, n), 1), _integral_next_unit(falling_poly(n)))]


def _thm3_der(n, ctx):
    rhs = _sum(
        ((X + 1) ** (l + 1) - X ** (l + 1)) * Fraction(S1(n, l), l + 1) for l in range(n + 1)
    )
    return [Check("stirling-sum", shift(B(n, n), 1), rhs)]


@register("thm3", POLY,
          "B_n^(n)(x+1) = sum_l S1(n,l)/(l+1) (x^(l+1) - (x-1)^(l+1))",
          derivation=_thm3_der,
          derivation_statement="B_n^(n)(x+1) = sum_l S1(n,l)/(l+1) ((x+1)^(l+1) - x^(l+1))")
def _thm3(n, ctx):
    rhs = _sum(
        (X ** (l + 1) - (X - 1) ** (l + 1)) * Fraction(S1(n, l), l + 1) for l in range(n + 1)
    )
    return [Check("stirling-sum", shift(B(n, n), 1), rhs)]


def _eq11_12(n, ctx):
    op = _expm1_over_t(n)
    return [Check("order-step", apply_series(op, B(l, n + 1)), B(l, n), (l,))
            for l in range(n + 1)]


register("eq11_12", POLY, "((e^t-1)/t) B_l^(n+1)(x) = B_l^(n)(x), 0 <= l <= n")(_eq11_12)


# -- scaled falling factorials through Abel polynomials --------------------

def _abel_terms(n, a, b, power_offset, abel_form):
    """``sum_k binom(n-1,k) b^(k-n+power_offset) B_k^(n)(an/b) * term_k``."""
    acc = Poly()
    for k in range(n):
        w = comb(n - 1, k) * b ** (k - n + power_offset) * B(k, n)(a * n / b)
        if abel_form:
            term = shift(abel_poly(n - k, a), -a * k)
        else:
            term = X * _x_minus(a * n) ** (n - 1 - k)
        acc = acc + term * w
    return acc


def _thm4_common(n, ctx, abel_form):
    a, b = ctx.a, ctx.b
    lhs = scaled_falling_poly(n, b)
    closed = (X / b) * B(n - 1, n).scale_arg(1 / b)
    x_closed = X * B(n - 1, n).scale_arg(1 / b)
    label = "abel-sum" if abel_form else "expanded-sum"
    return [
        Check(label, lhs, _abel_terms(n, a, b, 0, abel_form)),
        Check("closed", lhs, closed),
        Check("scaled-" + label, x_closed, _abel_terms(n, a, b, 1, abel_form)),
    ]


def _thm4_der(n, ctx):
    a, b = ctx.a, ctx.b
    via = transfer(abel_poly(n, a), builtin("T_EXP_A", {"a": a}, n + 1),
                   builtin("EXPM1_B", {"b": b}, n + 1), n)
    return _thm4_common(n, ctx, False) + [Check("transfer", scaled_falling_poly(n, b), via)]


@register("thm4", POLY,
          "(x/b)_n = sum_{k<n} binom(n-1,k) b^(k-n) B_k^(n)(an/b) A_(n-k)(x-ak;a) "
          "= (x/b) B_(n-1)^(n)(x/b)",
          params=("a", "b"), derivation=_thm4_der,
          derivation_statement="(x/b)_n = sum_{k<n} binom(n-1,k) b^(k-n) B_k^(n)(an/b) "
                               "x (x-an)^(n-1-k)")
def _thm4(n, ctx):
    return _thm4_common(n, ctx, True)


def _remark_b1_common(n, ctx, abel_form):
    one = Fraction(1)
    lhs = falling_poly(n)
    label = "abel-sum" if abel_form else "expanded-sum"
    return [
        Check("closed", lhs, X * B(n - 1, n)),
        Check(label, lhs, _abel_terms(n, ctx.a, one, 0, abel_form)),
    ]


@register("remark_b1", POLY,
          "(x)_n = x B_(n-1)^(n)(x) = sum_{k<n} binom(n-1,k) B_k^(n)(an) A_(n-k)(x-ak;a)",
          params=("a",), derivation=lambda n, ctx: _remark_b1_common(n, ctx, False),
          derivation_statement="(x)_n = sum_{k<n} binom(n-1,k) B_k^(n)(an) x (x-an)^(n-1-k)")
def _remark_b1(n, ctx):
    return _remark_b1_common(n, ctx, True)


# -- exponential polynomials ----------------------------------------------

def _thm5_der(n, ctx):
    via = transfer(bell_poly(n), log1p_series(n + 1), _t(n + 1), n)
    return [Check("transfer", Poly.monomial(n), via)]


@register("thm5", SCALAR,
          "sum_{k=0}^{n-m} n binom(k+m-1,k)/(n+k) B_k^(n+k) S2(n,k+m) = delta_(m,n), 1<=m<=n",
          derivation=_thm5_der,
          derivation_statement="x^n = x (log(1+t)/t)^n x^(-1) phi_n(x)")
def _thm5(n, ctx):
    out = []
    for m in range(1, n + 1):
        lhs = sum(
            (Fraction(n * comb(k + m - 1, k), n + k) * _bernoulli_number(k, n + k) * S2(n, k + m)
             for k in range(n - m + 1)),
            Fraction(0),
        )
        out.append(Check("kronecker", lhs, _delta(m, n), (m,)))
    return out


def _laguerre_log_ratio(trunc):
    """``t / ((1+t) log(1+t))``."""
    return pow_int(_log1p_over_t(trunc) * binomial_series(1, trunc), -1)


def _thm8_der(n, ctx):
    via = transfer(laguerre_neg_poly(n), builtin("LAGUERRE_F_NEG", {}, n + 1),
                   log1p_series(n + 1), n)
    return [Check("transfer", bell_poly(n), via)]


def _diagonal_bernoulli_product(parts):
    acc = Fraction(1)
    for li in parts:
        acc *= _bernoulli_number(li, li)
    return acc


@register("thm8", SCALAR,
          "S2(n,l) = sum_{l<=m<=n} sum_{l_1+..+l_n=m-l} binom(n-1,m-1) binom(m-1,l-1) n!/m! "
          "multinom(m-l; l_1..l_n) B_(l_1)^(l_1)...B_(l_n)^(l_n)",
          derivation=_thm8_der,
          derivation_statement="phi_n(x) = x (t/((1+t)log(1+t)))^n x^(-1) L_n(-x)")
def _thm8(n, ctx):
    out = []
    for l in range(1, n + 1):
        rhs = Fraction(0)
        for m in range(l, n + 1):
            w = comb(n - 1, m - 1) * comb(m - 1, l - 1) * Fraction(math.factorial(n), math.factorial(m))
            inner = sum(
                (multinomial(c) * _diagonal_bernoulli_product(c) for c in compositions(m - l, n)),
                Fraction(0),
            )
            rhs += w * inner
        out.append(Check("composition-sum", Fraction(S2(n, l)), rhs, (l,)))
    return out


def _eq31(n, ctx):
    ratio = pow_int(_laguerre_log_ratio(ctx.k_max), n)
    out = []
    for k in range(ctx.k_max + 1):
        rhs = sum(
            (multinomial(c) * _diagonal_bernoulli_product(c) for c in compositions(k, n)),
            Fraction(0),
        )
        out.append(Check("coefficient", ratio.umbral(k), rhs, (k,)))
    return out


register("eq31", SCALAR,
         "(t/((1+t)log(1+t)))^n = sum_k (sum_{l_1+..+l_n=k} multinom(k; l_i) prod B_(l_i)^(l_i)) t^k/k!"
         )(_eq31)


# -- Mittag-Leffler polynomials --------------------------------------------

def _prop6_der(n, ctx):
    via = transfer(mittag_leffler_poly(n), builtin("EULER_F", {}, n + 1),
                   exp_series(1, n + 1) - 1, n)
    return [Check("transfer", falling_poly(n), via)]


@register("prop6", POLY,
          "(x)_n = sum_k sum_{l<k} binom(n,k) (n-1)_(n-k) 2^(k-n) S1(k-1,l) x E_l^(n)(x-1)",
          derivation=_prop6_der,
          derivation_statement="(x)_n = x (1/(e^t+1))^n x^(-1) M_n(x)")
def _prop6(n, ctx):
    acc = Poly()
    for k in range(n + 1):
        w = comb(n, k) * falling(n - 1, n - k) * Fraction(2) ** (k - n)
        if not w:
            continue
        for l in range(k):
            acc = acc + X * shift(E(l, n), -1) * (w * S1(k - 1, l))
    return [Check("euler-sum", falling_poly(n), acc)]


def _cor7_der(n, ctx):
    op = pow_int(exp_series(1, n) + 1, n)
    operator_form = X * apply_series(op, shift(falling_poly(n - 1), -1))
    via = transfer(falling_poly(n), exp_series(1, n + 1) - 1, builtin("EULER_F", {}, n + 1), n)
    return [Check("operator", mittag_leffler_poly(n), operator_form),
            Check("transfer", mittag_leffler_poly(n), via)]


@register("cor7", POLY, "M_n(x) = x sum_k binom(n,k) (x+k-1)_(n-1)", derivation=_cor7_der,
          derivation_statement="M_n(x) = x (e^t+1)^n (x-1)_(n-1)")
def _cor7(n, ctx):
    rhs = X * _sum(shift(falling_poly(n - 1), k - 1) * comb(n, k) for k in range(n + 1))
    return [Check("shifted-falling-sum", mittag_leffler_poly(n), rhs)]


# -- Abel polynomials from scaled falling factorials ------------------------

def _lem9_expansion(n, a, b, squared_factorials):
    """The triple Stirling sum for ``A_n(x; a)`` with the given prefactor."""
    ratio = -a * n / b
    u = X / b - 1
    acc = Poly()
    for k in range(n):
        for l in range(k, n):
            s1 = S1(n - 1, l)
            if not s1:
                continue
            inner = sum(
                (ratio ** (k - j) * comb(k, j) * comb(l, k) * Fraction(S2(j + n, n) * s1, comb(j + n, j))
                 for j in range(k + 1)),
                Fraction(0),
            )
            if inner:
                acc = acc + X * u ** (l - k) * inner
    pre = b ** (n - 1) * (math.factorial(n) ** 2 if squared_factorials else 1)
    return acc * pre


def _lem9_common(n, ctx, squared):
    a, b = ctx.a, ctx.b
    lhs = abel_poly(n, a)
    checks = [Check("triple-sum", lhs, _lem9_expansion(n, a, b, squared))]
    if b == 1:
        checks.append(Check("b=1", lhs, _lem9_expansion(n, a, Fraction(1), squared)))
    return checks


def _lem9_der(n, ctx):
    a, b = ctx.a, ctx.b
    via = transfer(scaled_falling_poly(n, b), builtin("EXPM1_B", {"b": b}, n + 1),
                   builtin("T_EXP_A", {"a": a}, n + 1), n)
    return _lem9_common(n, ctx, False) + [Check("transfer", abel_poly(n, a), via)]


@register("lem9", POLY,
          "A_n(x;a) = (n!)^2 b^(n-1) sum_k sum_j sum_l (-an/b)^(k-j) binom(k,j) binom(l,k) "
          "S2(j+n,n) S1(n-1,l)/binom(j+n,j) x (x/b-1)^(l-k)",
          params=("a", "b"), derivation=_lem9_der,
          derivation_statement="same triple sum with prefactor b^(n-1): the weights "
                               "S2(j+n,n)/binom(j+n,j) are already the exponential "
                               "coefficients of ((e^t-1)/t)^n")
def _lem9(n, ctx):
    return _lem9_common(n, ctx, True)


def _eq35_rhs(n, k, squared):
    pre = math.factorial(n) ** 2 if squared else 1
    c = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        c[k - j] = (Fraction(-1) ** (k - j) * comb(k, j) * S2(j + n, n) / comb(j + n, j)) * pre
    return Poly(c)


def _eq35_common(n, ctx, squared):
    return [Check("coefficient", B(k, -n).scale_arg(-1), _eq35_rhs(n, k, squared), (k,))
            for k in range(ctx.k_max + 1)]


@register("eq35", POLY,
          "(e^t-1)^n/(e^(xt) t^n) = (n!)^2 sum_k (sum_j (-1)^(k-j) binom(k,j) S2(j+n,n)"
          "/binom(j+n,j) x^(k-j)) t^k/k!",
          derivation=lambda n, ctx: _eq35_common(n, ctx, False),
          derivation_statement="prefactor 1: ((e^t-1)/t)^n has exponential coefficients "
                               "S2(j+n,n)/binom(j+n,j)")
def _eq35(n, ctx):
    return _eq35_common(n, ctx, True)


def _eq36_common(n, ctx, squared):
    a, b = ctx.a, ctx.b
    K = ctx.k_max
    num = (exp_series(b, K + 1) - 1).shift_down(1)
    series = pow_int(num * exp_series(-a, K), n)
    pre = (math.factorial(n) ** 2 if squared else 1) * b**n
    out = []
    for k in range(K + 1):
        rhs = sum(
            (Fraction(-1) ** (k - j) * comb(k, j) * Fraction(S2(j + n, n), comb(j + n, j))
             * (a * n) ** (k - j) * b**j for j in range(k + 1)),
            Fraction(0),
        ) * pre
        out.append(Check("coefficient", series.umbral(k), rhs, (k,)))
    return out


@register("eq36", SCALAR,
          "((e^(bt)-1)/(t e^(at)))^n = (n!)^2 b^n sum_k (sum_j (-1)^(k-j) binom(k,j) "
          "S2(j+n,n)/binom(j+n,j) (an)^(k-j) b^j) t^k/k!",
          params=("a", "b"),
          derivation=lambda n, ctx: _eq36_common(n, ctx, False),
          derivation_statement="prefactor b^n, no (n!)^2")
def _eq36(n, ctx):
    return _eq36_common(n, ctx, True)


# -- the sequence associated to t (1+t)^a -----------------------------------

def _prop10_der(n, ctx):
    a = ctx.a
    f = builtin("T_ONE_PLUS_T_POW_A", {"a": a}, n)
    engine = associated_sequence(f, n)[n]
    operator_form = X * apply_series(binomial_series(-a * n, n), Poly.monomial(n - 1))
    via = transfer(Poly.monomial(n), _t(n + 1), builtin("T_ONE_PLUS_T_POW_A", {"a": a}, n + 1), n)
    return [Check("operator", engine, operator_form), Check("transfer", engine, via)]


@register("prop10", POLY,
          "S_n(x) = sum_{k=1}^n binom(-an,n-k) (n-1)_(n-k) x^k  for  S_n ~ (1, t(1+t)^a)",
          params=("a",), derivation=_prop10_der,
          derivation_statement="S_n(x) = x (1+t)^(-an) x^(n-1)")
def _prop10(n, ctx):
    f = builtin("T_ONE_PLUS_T_POW_A", {"a": ctx.a}, n)
    return [Check("closed-form", associated_sequence(f, n)[n], power_s_poly(n, ctx.a))]


def _thm11_der(n, ctx):
    a = ctx.a
    via = transfer(power_s_poly(n, a), builtin("T_ONE_PLUS_T_POW_A", {"a": a}, n + 1),
                   log1p_series(n + 1), n)
    return [Check("transfer", bell_poly(n), via)]


@register("thm11", SCALAR,
          "S2(n,m) = sum_{m<=l<=n} binom(-an,n-l) (n-1)_(n-l) binom(l-1,m-1) "
          "B_(l-m)^(l-m-n+1)(an+1)",
          params=("a",), derivation=_thm11_der,
          derivation_statement="phi_n(x) = x (t(1+t)^a/log(1+t))^n x^(-1) S_n(x)")
def _thm11(n, ctx):
    a = ctx.a
    out = []
    for m in range(n + 1):
        rhs = Fraction(0)
        for l in range(max(m, 1), n + 1):
            c = comb(l - 1, m - 1) if m >= 1 else 0
            if c:
                rhs += (gen_binomial(-a * n, n - l) * falling(n - 1, n - l) * c
                        * B(l - m, l - m - n + 1)(a * n + 1))
        out.append(Check("bernoulli-sum", Fraction(S2(n, m)), rhs, (m,)))
    return out


def _eq40_coefficient_poly(n, k):
    """Exponential coefficient ``k`` of ``(1+t)^(x-1) (t/log(1+t))^n`` as a polynomial in x."""
    ratio = pow_int(_log1p_over_t(k), -n)
    acc = Poly()
    for j in range(k + 1):
        binom_poly = shift(falling_poly(j), -1) / math.factorial(j)  # binom(x-1, j)
        acc = acc + binom_poly * ratio[k - j]
    return acc * math.factorial(k)


@register("eq40", POLY,
          "(1+t)^(x-1) t^n/(log(1+t))^n = sum_k B_k^(k-n+1)(x) t^k/k!")
def _eq40(n, ctx):
    return [Check("coefficient", _eq40_coefficient_poly(n, k), B(k, k - n + 1), (k,))
            for k in range(ctx.k_max + 1)]


@register("eq41", SCALAR,
          "(t(1+t)^a/log(1+t))^n = sum_k B_k^(k-n+1)(an+1) t^k/k!", params=("a",))
def _eq41(n, ctx):
    a, K = ctx.a, ctx.k_max
    series = pow_int(binomial_series(a, K) * pow_int(_log1p_over_t(K), -1), n)
    return [Check("coefficient", series.umbral(k), B(k, k - n + 1)(a * n + 1), (k,))
            for k in range(K + 1)]


# -- generating-function expansions -----------------------------------------

@register("eq2", SCALAR, "((e^t-1)/t)^n = sum_l n!/(l+n)! S2(l+n,n) t^l")
def _eq2(n, ctx):
    s = pow_int(_expm1_over_t(ctx.k_max), n)
    return [Check("coefficient", s[l],
                  Fraction(math.factorial(n), math.factorial(l + n)) * S2(l + n, n), (l,))
            for l in range(ctx.k_max + 1)]


@register("eq21", SCALAR, "(log(1+t)/t)^n = n sum_k B_k^(n+k)/(n+k) t^k/k!")
def _eq21(n, ctx):
    s = pow_int(_log1p_over_t(ctx.k_max), n)
    return [Check("coefficient", s.umbral(k), Fraction(n, n + k) * _bernoulli_number(k, n + k), (k,))
            for k in range(ctx.k_max + 1)]


@register("eq30", SCALAR, "t/((1+t)log(1+t)) = sum_k B_k^(k) t^k/k!  (checked at k = n)",
          n_min=0)
def _eq30(n, ctx):
    s = _laguerre_log_ratio(n)
    return [Check("coefficient", s.umbral(n), _bernoulli_number(n, n), (n,))]


# -- Euler polynomials and the sequence associated to t(e^t+1)/2 ------------

def _thm12_sum(n, a, upper, abel_form):
    acc = Poly()
    for k in range(upper + 1):
        w = comb(n - 1, k)
        if not w:
            continue
        w = w * E(k, n)(a * n)
        if abel_form:
            term = shift(abel_poly(n - k, a), -a * k)
        else:
            term = X * _x_minus(a * n) ** (n - 1 - k)
        acc = acc + term * w
    return acc


def _eq47(n):
    f = builtin("SSTAR_F", {}, n)
    return Check("sstar", associated_sequence(f, n)[n], X * E(n - 1, n))


def _thm12_der(n, ctx):
    a = ctx.a
    lhs = X * E(n - 1, n)
    via = transfer(abel_poly(n, a), builtin("T_EXP_A", {"a": a}, n + 1),
                   builtin("SSTAR_F", {}, n + 1), n)
    return [Check("expanded-sum", lhs, _thm12_sum(n, a, n - 1, False)),
            Check("transfer", lhs, via),
            _eq47(n)]


@register("thm12", POLY,
          "x E_(n-1)^(n)(x) = sum_{k=0}^{n} binom(n-1,k) E_k^(n)(an) A_(n-k)(x-ak;a)",
          params=("a",), derivation=_thm12_der,
          derivation_statement="x E_(n-1)^(n)(x) = sum_{k<n} binom(n-1,k) E_k^(n)(an) x (x-an)^(n-1-k)")
def _thm12(n, ctx):
    lhs = X * E(n - 1, n)
    return [Check("abel-sum", lhs, _thm12_sum(n, ctx.a, n, True)), _eq47(n)]


# -- verification -----------------------------------------------------------

def identity_ids() -> list[str]:
    return list(REGISTRY)


def get(id: str) -> IdentityDescriptor:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {id!r}") from None


def _as_variant(v) -> Variant:
    if isinstance(v, Variant):
        return v
    try:
        return Variant(v)
    except ValueError:
        return Variant[str(v).upper()]


def _param_grid(desc: IdentityDescriptor, params: Mapping | None) -> list[dict[str, Fraction]]:
    params = params or {}
    axes = []
    for name in desc.params:
        raw = params.get(name, DEFAULT_SWEEP[name])
        values = list(raw) if isinstance(raw, (list, tuple)) else [raw]
        if not values:
            raise BadParams(f"empty value list for parameter {name!r}")
        values = [as_rat(v) for v in values]
        if any(v == 0 for v in values):
            raise BadParams(f"parameter {name!r} must be nonzero")
        axes.append(values)
    return [dict(zip(desc.params, combo)) for combo in itertools.product(*axes)]


def _compare(check: Check, n: int, params: tuple) -> Outcome:
    lhs, rhs = check.lhs, check.rhs
    if isinstance(lhs, Poly) or isinstance(rhs, Poly):
        lhs, rhs = Poly([lhs]) if not isinstance(lhs, Poly) else lhs, \
            Poly([rhs]) if not isinstance(rhs, Poly) else rhs
    else:
        lhs, rhs = as_rat(lhs), as_rat(rhs)
    if lhs == rhs:
        return Outcome(n, check.label, check.index, params, Status.PASS)
    return Outcome(n, check.label, check.index, params, Status.FAIL, lhs, rhs, lhs - rhs)


def verify(id: str, variant=Variant.AS_STATED, n_range: Iterable[int] = (),
           params: Mapping | None = None, k_max: int = DEFAULT_K_MAX) -> IdentityReport:
    """Check one identity for every ``n`` in ``n_range`` and every parameter combination.

    ``params`` maps a parameter name to a single rational or a list of them;
    missing parameters fall back to :data:`DEFAULT_SWEEP`.  Evaluation errors
    become ``ERROR`` outcomes instead of propagating.
    """
    desc = get(id)
    variant = _as_variant(variant)
    ns = sorted(set(n_range))
    if ns and ns[0] < desc.n_min:
        raise BadParams(f"{id} holds for n >= {desc.n_min}, got n = {ns[0]}")
    builder = desc.builder(variant)
    report = IdentityReport(id, variant)
    for combo in _param_grid(desc, params):
        ctx = Context(combo, k_max)
        key = tuple(sorted(combo.items()))
        for n in ns:
            try:
                checks = builder(n, ctx)
            except (UmbralError, ArithmeticError, ValueError) as exc:
                report.outcomes.append(
                    Outcome(n, "", (), key, Status.ERROR, message=f"{type(exc).__name__}: {exc}")
                )
                continue
            report.outcomes.extend(_compare(c, n, key) for c in checks)
    return report


def verify_all(n_max: int, params: Mapping | None = None,
               variants: Sequence = (Variant.AS_STATED, Variant.DERIVATION_FORM),
               ids: Sequence[str] | None = None,
               k_max: int = DEFAULT_K_MAX) -> list[IdentityReport]:
    """Run every selected identity over ``max(1, n_min) .. n_max`` in registry order."""
    selected = list(REGISTRY) if ids is None else list(ids)
    for id in selected:
        get(id)
    variants = [_as_variant(v) for v in variants]
    reports = []
    for id in selected:
        desc = REGISTRY[id]
        for variant in variants:
            ns = range(max(1, desc.n_min), n_max + 1)
            reports.append(verify(id, variant, ns, params, k_max))
    return reports
