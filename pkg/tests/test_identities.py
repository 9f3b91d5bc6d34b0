import math
from fractions import Fraction as F

import pytest
import sympy as sp
from sympy.functions.combinatorial.numbers import stirling

from conftest import sym_bernoulli_high, sym_euler_high, sym_poly, sym_rat, x
from umbral import identities as ids
from umbral.errors import BadParams
from umbral.identities import (
    DEFAULT_SWEEP,
    REGISTRY,
    IdentityDescriptor,
    Status,
    StatementKind,
    UnknownIdentity,
    Variant,
    verify,
    verify_all,
)
from umbral.polynomial import Poly, X

AS, DER = Variant.AS_STATED, Variant.DERIVATION_FORM


def to_sym(p: Poly):
    return sum((sym_rat(c) * x**k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def outcome(report, n, check, **params):
    key = tuple(sorted((k, F(v)) for k, v in params.items()))
    hits = [o for o in report.outcomes if o.n == n and o.check == check and o.params == key]
    assert len(hits) == 1
    return hits[0]


def assert_sides(o, lhs, rhs):
    """A FAIL outcome must carry exactly the oracle's sides; a PASS needs them equal."""
    lhs, rhs = sym_poly(lhs), sym_poly(rhs)
    if o.status is Status.FAIL:
        assert o.lhs == lhs and o.rhs == rhs and lhs != rhs
    else:
        assert o.status is Status.PASS and lhs == rhs


def abel_sym(m, y, a):
    """A_m(y; a) = y (y - a m)^(m-1), A_0 = 1."""
    return sp.Integer(1) if m == 0 else y * (y - a * m) ** (m - 1)


# -- registry ---------------------------------------------------------------------

def test_registry_contents():
    expected = {"thm1", "eq5", "eq3", "lem2", "eq9", "eq13", "thm3", "eq11_12", "thm4",
                "remark_b1", "thm5", "thm8", "eq31", "prop6", "cor7", "lem9", "eq35",
                "eq36", "prop10", "thm11", "eq40", "eq41", "eq2", "eq21", "eq30", "thm12"}
    assert set(REGISTRY) == expected
    for desc in REGISTRY.values():
        assert isinstance(desc, IdentityDescriptor)
        assert desc.statement
        assert set(desc.params) <= set(DEFAULT_SWEEP)


@pytest.mark.parametrize("id", ["thm3", "thm4", "remark_b1", "thm12", "lem9", "eq35", "eq36"])
def test_corrected_identities_have_derivation_forms(id):
    desc = REGISTRY[id]
    assert desc.derivation is not None and desc.derivation_statement
    assert desc.builder(DER) is not desc.builder(AS)


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify("thm99")
    with pytest.raises(UnknownIdentity):
        verify_all(2, ids=["lem2", "nope"])


def test_bad_ranges_and_params():
    with pytest.raises(BadParams):
        verify("lem2", AS, [0])
    with pytest.raises(BadParams):
        verify("thm4", AS, [1], {"a": 0, "b": 1})


def test_empty_range_gives_empty_report():
    assert verify("lem2", AS, []).outcomes == []


def test_variant_names():
    assert verify("lem2", "derivation", [1]).variant is DER
    assert verify("lem2", "AS_STATED", [1]).variant is AS


# -- examples ------------------------------------------------------------------------

def test_shifted_bernoulli_is_falling():
    assert verify("lem2", AS, range(1, 11)).passed


def test_stirling_integral_form_fails_at_one():
    report = verify("thm3", AS, [1])
    o = outcome(report, 1, "stirling-sum")
    assert o.status is Status.FAIL
    assert o.lhs == X + F(1, 2) and o.rhs == X - F(1, 2) and o.diff == Poly.const(1)


def test_stirling_integral_corrected_form():
    assert verify("thm3", DER, range(1, 11)).passed


def test_abel_expansion_of_scaled_falling_fails_at_two():
    report = verify("thm4", AS, [2], {"a": 1, "b": 1})
    o = outcome(report, 2, "abel-sum", a=1, b=1)
    assert o.status is Status.FAIL
    assert o.lhs == X ** 2 - X and o.rhs == X ** 2 - X - 1
    assert o.diff == Poly.const(1)


def test_scaled_falling_corrected_expansion():
    assert verify("thm4", DER, range(1, 9), {"a": [1, F(-1, 2)], "b": [1, 2]}).passed


def test_binomial_stirling_sum_at_one():
    report = verify_all(1, {"a": 1, "b": 1}, [AS], ["thm1"])
    assert report[0].passed
    # the m = 0 term at n = 1 is binom(1,0) = 1 = 1/3 * S2(3,2) * S1(1,1)
    assert F(1, 3) * stirling(3, 2) * stirling(1, 1, kind=1, signed=True) == 1


def test_full_suite_derivation():
    for report in verify_all(6, {"a": 1, "b": 1}, [DER]):
        assert report.passed, report.id


def test_as_stated_failures_are_exactly_the_known_errata():
    failing = {r.id for r in verify_all(6, {"a": 1, "b": 1}, [AS]) if not r.passed}
    assert failing == {"thm3", "thm4", "remark_b1", "lem9", "eq35", "eq36", "thm12"}


# -- failing sides re-derived independently --------------------------------------

@pytest.mark.parametrize("n", range(1, 5))
def test_stirling_integral_failure_sides(n):
    lhs = to_sym(sym_bernoulli_high(n, n)).subs(x, x + 1)
    rhs = sum(stirling(n, l, kind=1, signed=True) * sp.Rational(1, l + 1)
              * (x ** (l + 1) - (x - 1) ** (l + 1)) for l in range(n + 1))
    o = outcome(verify("thm3", AS, [n]), n, "stirling-sum")
    assert_sides(o, lhs, rhs)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("a,b", [(F(1), F(1)), (F(-1, 2), F(2)), (F(3), F(-1, 3))])
def test_scaled_falling_failure_sides(n, a, b):
    sa, sb = sym_rat(a), sym_rat(b)
    lhs = sp.ff(x / sb, n)
    rhs = sum(sp.binomial(n - 1, k) * sb ** (k - n)
              * sym_rat(sym_bernoulli_high(k, n)(a * n / b))
              * abel_sym(n - k, x - sa * k, sa) for k in range(n))
    o = outcome(verify("thm4", AS, [n], {"a": a, "b": b}), n, "abel-sum", a=a, b=b)
    assert_sides(o, lhs, rhs)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("a", [F(1), F(-1, 2)])
def test_euler_abel_failure_sides(n, a):
    sa = sym_rat(a)
    lhs = x * to_sym(sym_euler_high(n - 1, n))
    rhs = sum(sp.binomial(n - 1, k) * sym_rat(sym_euler_high(k, n)(a * n))
              * abel_sym(n - k, x - sa * k, sa) for k in range(n + 1))
    o = outcome(verify("thm12", AS, [n], {"a": a}), n, "abel-sum", a=a)
    assert_sides(o, lhs, rhs)


def test_euler_abel_expansion_fails_at_two():
    o = outcome(verify("thm12", AS, [2], {"a": 1}), 2, "abel-sum", a=1)
    assert o.status is Status.FAIL


@pytest.mark.parametrize("id", ["lem9", "eq35", "eq36"])
def test_squared_factorial_prefactor(id):
    # the printed forms carry an extra (n!)^2; they hold at n = 1 only
    params = {"a": 1, "b": 1}
    assert verify(id, AS, [1], params).passed
    for n in range(2, 5):
        report = verify(id, AS, [n], params)
        der = verify(id, DER, [n], params)
        assert der.passed
        main = [o for o in report.outcomes if o.check in ("triple-sum", "coefficient")]
        for o in main:
            if o.status is Status.FAIL:
                assert o.rhs == o.lhs * math.factorial(n) ** 2


# -- structure ----------------------------------------------------------------------

@pytest.mark.parametrize("id,first", [("thm5", 1), ("thm1", 0)])
def test_kronecker_identities_check_the_full_row(id, first):
    for n in range(1, 7):
        report = verify(id, AS, [n])
        assert sorted(o.index for o in report.outcomes) == [(m,) for m in range(first, n + 1)]
        assert report.passed
    assert REGISTRY[id].statement_kind is StatementKind.SCALAR_IDENTITY


def test_default_sweep_is_used():
    report = verify("thm4", DER, [2])
    combos = {o.params for o in report.outcomes}
    assert len(combos) == 9


def test_verify_is_deterministic():
    one = verify_all(4, None, [AS, DER])
    two = verify_all(4, None, [AS, DER])
    assert [(r.id, r.variant, r.outcomes) for r in one] == [(r.id, r.variant, r.outcomes) for r in two]


def test_evaluation_errors_become_error_outcomes(monkeypatch):
    def broken(n, ctx):
        raise ZeroDivisionError("boom")

    desc = IdentityDescriptor("broken", StatementKind.POLY_IDENTITY, "0 = 1", (), 1, broken)
    monkeypatch.setitem(ids.REGISTRY, "broken", desc)
    report = verify("broken", AS, [1, 2])
    assert [o.status for o in report.outcomes] == [Status.ERROR, Status.ERROR]
    assert "boom" in report.outcomes[0].message
    assert not report.passed
