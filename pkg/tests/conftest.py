"""Shared oracles.

Independent reference values come from sympy's series expansion and
polynomial arithmetic, which share no code with the package under test.
"""

import math
from fractions import Fraction
from functools import lru_cache

import sympy as sp
from hypothesis import settings

from umbral.polynomial import Poly
from umbral.series import Series

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

t, x = sp.symbols("t x")


def to_fraction(value) -> Fraction:
    value = sp.nsimplify(value) if not isinstance(value, sp.Rational) else value
    if not isinstance(value, sp.Rational):
        raise AssertionError(f"oracle produced a non-rational value: {value}")
    return Fraction(int(value.p), int(value.q))


def sym_coeffs(expr, trunc: int) -> list[Fraction]:
    """Ordinary coefficients c_0..c_trunc of ``expr`` as a power series in t."""
    s = sp.series(expr, t, 0, trunc + 1).removeO()
    s = sp.expand(s)
    return [to_fraction(s.coeff(t, k)) for k in range(trunc + 1)]


def sym_series(expr, trunc: int) -> Series:
    return Series(sym_coeffs(expr, trunc))


def sym_poly(expr) -> Poly:
    p = sp.Poly(sp.expand(expr), x)
    coeffs = p.all_coeffs()[::-1]
    return Poly(to_fraction(c) for c in coeffs)


@lru_cache(maxsize=None)
def _egf_coeffs(gen, trunc: int) -> tuple:
    return tuple(sym_coeffs(gen, trunc))


def sym_egf_poly(gen, n: int) -> Poly:
    """n! [t^n] of ``gen * exp(x t)``, a polynomial in x.

    Only ``gen`` goes through sympy; the product with ``exp(x t)`` is the
    binomial convolution ``sum_k binom(n, k) a_k x^(n-k)``.
    """
    c = _egf_coeffs(gen, max(n, 8))
    return Poly(math.comb(n, m) * math.factorial(n - m) * c[n - m] for m in range(n + 1))


def sym_bernoulli_high(n: int, r: int) -> Poly:
    return sym_egf_poly((t / (sp.exp(t) - 1)) ** r, n)


def sym_euler_high(n: int, r: int) -> Poly:
    return sym_egf_poly((2 / (sp.exp(t) + 1)) ** r, n)


def sym_rat(q: Fraction):
    return sp.Rational(q.numerator, q.denominator)


def sym_associated(f_expr, n: int) -> Poly:
    """s_n for the delta series ``f_expr`` by Lagrange-Buermann inversion.

    With ``fbar`` the inverse of ``f``, ``sum s_n t^n/n! = exp(x fbar(t))``, and
    ``[t^n] exp(x fbar) = (x/n) [w^(n-1)] exp(x w) (w/f(w))^n``.
    """
    if n == 0:
        return Poly.const(1)
    c = sym_coeffs(sp.cancel(t / f_expr) ** n, n - 1)  # (w/f(w))^n
    # x (n-1)! [w^(n-1)] exp(x w) (w/f(w))^n, the exp factor expanded by hand
    inner = [c[n - 1 - j] * Fraction(math.factorial(n - 1), math.factorial(j)) for j in range(n)]
    return Poly([0] + inner)
