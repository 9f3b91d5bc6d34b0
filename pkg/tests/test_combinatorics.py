import math
from fractions import Fraction as F

import pytest
import sympy as sp
from sympy.functions.combinatorial.numbers import stirling

from conftest import sym_poly, x
from umbral.combinatorics import (
    StirlingKind,
    compositions,
    falling,
    falling_poly,
    gen_binomial,
    multinomial,
    stirling1,
    stirling2,
    stirling_table,
)
from umbral.polynomial import Poly


def test_stirling1_examples():
    assert stirling1(3, 1) == 2
    assert all(stirling1(n, n) == 1 for n in range(12))
    assert stirling1(4, 2) == 11
    assert stirling1(3, 5) == 0 and stirling1(3, -1) == 0


def test_stirling2_examples():
    assert stirling2(3, 2) == 3
    assert all(stirling2(n, 1) == 1 for n in range(1, 12))
    assert stirling2(4, 2) == 7


@pytest.mark.parametrize("n", range(25))
def test_stirling_tables_match_sympy(n):
    for k in range(n + 1):
        assert stirling1(n, k) == stirling(n, k, kind=1, signed=True)
        assert stirling2(n, k) == stirling(n, k, kind=2)


def test_table_grows():
    small = stirling_table(StirlingKind.SECOND, 5)
    big = stirling_table(StirlingKind.SECOND, small.n_max + 40)
    assert big.n_max >= small.n_max + 40
    assert big(30, 7) == stirling(30, 7, kind=2)


@pytest.mark.parametrize("n", range(21))
def test_falling_poly_is_stirling_expansion(n):
    assert falling_poly(n) == Poly(stirling1(n, l) for l in range(n + 1))
    assert falling_poly(n) == sym_poly(sp.ff(x, n))


def test_stirling_inversion():
    for n in range(16):
        for m in range(16):
            s = sum(stirling2(n, k) * stirling1(k, m) for k in range(16))
            assert s == (1 if n == m else 0)


def test_gen_binomial_examples():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(-2, 3) == -4
    assert gen_binomial(F(1, 2), 2) == F(-1, 8)
    assert gen_binomial(3, -1) == 0


def test_gen_binomial_pascal():
    for n in range(21):
        for k in range(n + 1):
            assert gen_binomial(n, k) == math.comb(n, k)


def test_falling_examples():
    assert falling_poly(2) == Poly([0, -1, 1])
    assert falling(5, 3) == 60
    assert falling_poly(3) == Poly([0, 2, -3, 1])


def test_compositions_examples():
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert set(compositions(2, 2)) == {(0, 2), (1, 1), (2, 0)}
    assert len(list(compositions(5, 4))) == 56


@pytest.mark.parametrize("total,parts", [(0, 1), (3, 1), (4, 3), (6, 4), (7, 2)])
def test_compositions_count_and_content(total, parts):
    out = list(compositions(total, parts))
    assert len(out) == gen_binomial(total + parts - 1, parts - 1)
    assert len(set(out)) == len(out)
    assert all(len(c) == parts and sum(c) == total and min(c) >= 0 for c in out)


def test_compositions_rejects_zero_parts():
    with pytest.raises(ValueError):
        list(compositions(2, 0))


def test_multinomial():
    assert multinomial((2, 1, 1)) == 12
    assert multinomial(()) == 1
