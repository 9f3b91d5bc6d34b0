"""Acceptance criteria 1-9, all exact.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line (visible in ``pytest -v``
output because the print bypasses capture) before asserting.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import jsonschema
import pytest

from test_cli import VERIFY_SCHEMA
from test_dsl import ALPHABET, BINDINGS, GOLDEN
from umbral import sequences
from umbral.combinatorics import falling_poly
from umbral.dsl import DSLSyntaxError, evaluate, parse, to_text
from umbral.engine import associated_sequence, is_sheffer_matrix, orthogonality_check
from umbral.identities import Status, Variant, verify
from umbral.polynomial import shift
from umbral.sequences import ASSOCIATED_KINDS, Family, FamilyKind, family_pair, family_poly
from umbral.series import (
    BUILTINS,
    Series,
    binomial_series,
    builtin,
    comp_inverse,
    compose,
    log1p_series,
    mul_inverse,
    pow_int,
)

AS, DER = Variant.AS_STATED, Variant.DERIVATION_FORM
A_SWEEP = [F(1), F(-1, 2), F(3)]
B_SWEEP = [F(1), F(2), F(-1, 3)]


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def swept_families(kinds=ASSOCIATED_KINDS):
    out = []
    for kind in kinds:
        name = Family(kind, F(1) if kind in sequences.PARAMETRIZED else None).param_name
        values = {"a": A_SWEEP, "b": B_SWEEP, "r": [-2, -1, 1, 3]}.get(name, [None])
        out += [Family(kind, v) for v in values]
    return out


def test_1_kernel_round_trips(capsys):
    n = 16
    bad = []
    deltas = invertibles = 0
    for name in sorted(BUILTINS):
        for params in ({"a": a, "b": b, "c": a} for a, b in zip(A_SWEEP, B_SWEEP)):
            f = builtin(name, params, n)
            if f.order == 1:
                deltas += 1
                for method in ("solve", "lagrange"):
                    g = comp_inverse(f, method)
                    if compose(f, g) != Series.monomial(1, n) or compose(g, f) != Series.monomial(1, n):
                        bad.append((name, params, method))
            elif f.order == 0:
                invertibles += 1
                if f * mul_inverse(f) != Series.one(n):
                    bad.append((name, params))
    # the invertible series the families and identities are built from
    extra = [sequences.bernoulli_gf(n), sequences.euler_gf(n)]
    extra += [binomial_series(a, n) for a in A_SWEEP]
    extra += [family_pair(fam, n)[0] for fam in swept_families(FamilyKind)]
    for g in extra:
        invertibles += 1
        if g * mul_inverse(g) != Series.one(n):
            bad.append(g)
    report(capsys, 1, not bad,
           f"{deltas} delta round trips (two inversion methods), "
           f"{invertibles} reciprocals at trunc {n}; failures={bad}")


def _eq40_pointwise(x, n, k_max):
    # exponential coefficients of (1+t)^(x-1) (t/log(1+t))^n at a rational x
    ratio = pow_int(log1p_series(k_max + 1).shift_down(1), -n)
    s = binomial_series(x - 1, k_max) * ratio
    return all(s.umbral(k) == sequences.bernoulli_high(k, k - n + 1)(x) for k in range(k_max + 1))


def test_2_generating_function_cross_checks(capsys):
    results = {
        "eq2 n<=8 l<=8": verify("eq2", AS, range(1, 9), k_max=8).passed,
        "eq21 n<=6 k<=8": verify("eq21", AS, range(1, 7), k_max=8).passed,
        "eq30 k<=10": verify("eq30", AS, range(0, 11)).passed,
        "eq35 n<=5 k<=6 (derivation form)": verify("eq35", DER, range(1, 6), k_max=6).passed,
        "eq36 n<=5 k<=6 (derivation form)": verify(
            "eq36", DER, range(1, 6), {"a": [1], "b": [1]}, k_max=6).passed
        and verify("eq36", DER, range(1, 6), {"a": [F(-1, 2)], "b": [2]}, k_max=6).passed,
        "eq40 n<=5 k<=8 polynomial": verify("eq40", AS, range(1, 6), k_max=8).passed,
        "eq40 at x in {0,1,5/2}": all(_eq40_pointwise(x, n, 8)
                                      for x in (F(0), F(1), F(5, 2)) for n in range(1, 6)),
    }
    printed = verify("eq36", AS, range(1, 6), {"a": [1], "b": [1]}, k_max=6)
    failing_n = sorted({o.n for o in printed.failures()})
    note = f"printed (n!)^2 form of eq35/eq36 fails at n={failing_n} (known erratum)"
    report(capsys, 2, all(results.values()), f"{results}; {note}")


def test_3_orthogonality(capsys):
    bad, count = [], 0
    for fam in swept_families():
        g, f = family_pair(fam, 8)
        m = orthogonality_check(g, f, [family_poly(fam, n) for n in range(9)])
        count += 1
        if not is_sheffer_matrix(m):
            bad.append(str(fam))
    report(capsys, 3, not bad,
           f"<f^k | s_n> = n! delta for {count} family/parameter cases, n,k<=8; failures={bad}")


def test_4_closed_forms_match_engine(capsys):
    bad, count = [], 0
    for fam in swept_families():
        _, f = family_pair(fam, 10)
        engine = associated_sequence(f, 10)
        count += 1
        if any(family_poly(fam, n) != engine[n] for n in range(11)):
            bad.append(str(fam))
    report(capsys, 4, not bad, f"{count} family/parameter cases agree for n<=10; failures={bad}")


SUITE = {
    "thm1": 8, "eq5": 8, "lem2": 8, "eq9": 8, "eq13": 8, "thm3": 8, "thm4": 8,
    "remark_b1": 8, "thm5": 8, "prop6": 8, "cor7": 8, "thm8": 6, "lem9": 6,
    "prop10": 8, "thm11": 8, "thm12": 8, "eq3": 8, "eq11_12": 8, "eq31": 8, "eq36": 6,
}


def test_5_derivation_suite(capsys):
    counts, bad = 0, []
    for id, n_max in SUITE.items():
        r = verify(id, DER, range(1, n_max + 1))
        counts += len(r.outcomes)
        if not r.passed:
            bad.append(id)
    report(capsys, 5, not bad,
           f"{len(SUITE)} identities, {counts} exact checks over the default sweep; failures={bad}")


def test_6_discrepancy_detection(capsys):
    found = {}
    thm3 = verify("thm3", AS, [1]).outcomes[0]
    found["thm3 n=1"] = (thm3.status is Status.FAIL and str(thm3.lhs) == "x + 1/2"
                         and str(thm3.rhs) == "x - 1/2" and str(thm3.diff) == "1")
    thm4 = [o for o in verify("thm4", AS, [2], {"a": 1, "b": 1}).outcomes if o.check == "abel-sum"][0]
    found["thm4 n=2 a=b=1"] = (thm4.status is Status.FAIL and str(thm4.lhs) == "x^2 - x"
                               and str(thm4.rhs) == "x^2 - x - 1" and str(thm4.diff) == "1")
    thm12 = [o for o in verify("thm12", AS, [2], {"a": 1}).outcomes if o.check == "abel-sum"][0]
    found["thm12 n=2 a=1"] = (thm12.status is Status.FAIL and thm12.lhs is not None
                              and thm12.rhs is not None and thm12.lhs - thm12.rhs == thm12.diff)
    report(capsys, 6, all(found.values()),
           f"{found}; thm12 sides: lhs={thm12.lhs}, rhs={thm12.rhs}")


def test_7_bernoulli_shift_at_scale(capsys):
    sequences.bernoulli_high.cache_clear()
    sequences._bernoulli_power.cache_clear()
    start = time.perf_counter()
    ok = all(shift(sequences.bernoulli_high(n, n + 1), 1) == falling_poly(n) for n in range(21))
    elapsed = time.perf_counter() - start
    report(capsys, 7, ok and elapsed < 10, f"B_n^(n+1)(x+1) = (x)_n for n<=20 in {elapsed:.2f}s")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "umbral", *args], capture_output=True, check=False)


def test_8_cli_contract(capsys):
    base = ["verify", "all", "--n-max", "6", "--param", "a=1", "--param", "b=1"]
    der = _cli(*base, "--variant", "derivation")
    stated = _cli(*base, "--variant", "as-stated")
    js1 = _cli(*base, "--variant", "both", "--format", "json")
    js2 = _cli(*base, "--variant", "both", "--format", "json")
    try:
        jsonschema.validate(json.loads(js1.stdout), VERIFY_SCHEMA)
        schema_ok = True
    except jsonschema.ValidationError:
        schema_ok = False
    identical = js1.stdout == js2.stdout and der.stdout == _cli(*base, "--variant", "derivation").stdout
    ok = der.returncode == 0 and stated.returncode == 1 and schema_ok and identical
    report(capsys, 8, ok,
           f"derivation exit={der.returncode}, as-stated exit={stated.returncode}, "
           f"schema valid={schema_ok}, byte-identical={identical}")


def test_9_dsl(capsys):
    golden_ok = all(evaluate(text, b, 12) == builtin(name, b, 12)
                    for name, text in GOLDEN.items() for b in BINDINGS)
    rng = random.Random(9)
    crashes, runs = [], 100_000
    for i in range(runs):
        if i % 4 == 0:
            data = bytes(rng.randrange(256) for _ in range(rng.randrange(12)))
        else:
            data = "".join(rng.choice(ALPHABET) for _ in range(rng.randrange(1, 16)))
        try:
            tree = parse(data)
            if parse(to_text(tree)) != tree:
                crashes.append(data)
        except DSLSyntaxError:
            pass
        except Exception as exc:  # anything else is a crash
            crashes.append((data, exc))
    report(capsys, 9, golden_ok and not crashes,
           f"{len(GOLDEN)} builtin goldens x {len(BINDINGS)} bindings ok={golden_ok}; "
           f"{runs} fuzz inputs, crashes={len(crashes)}")
