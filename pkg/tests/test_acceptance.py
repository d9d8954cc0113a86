"""Acceptance gate: one test per primary criterion.

Each test emits a single summary line on success; pytest -v adds the
PASSED/FAILED verdict per criterion.
"""
import random
import time
from fractions import Fraction

import mpmath as mp
import pytest

from helpers import close_digits, diff_of
from eulersum.algebra import sv_numeric, sv_sub
from eulersum.cli import main as cli_main
from eulersum.engine import eval_I, eval_sum
from eulersum.reduce import (
    euler_linear,
    fs_odd_linear,
    identity_family,
    integral_I_closed,
    pf_coeffs,
    reduce_quadratic,
    regression_identities,
    resolve_tag,
)
from eulersum.sumspec import Factor, SumSpec, format_sumspec, parse_sumspec
from eulersum.verify import brute_euler, brute_fs, run_suite, suite_ok, verify

# printed reference values for criterion 1 (trailing 2 digits unreliable)
PRINTED = {
    "Li4(1/2)": "0.5174790616738993863307581618988629456",
    "l(1)/n^5 alt": "0.987441426403299713771650007985",
    "l(2)/n^4": "1.06358224101814909880154833539",
    "h(2)/n^4 alt": "0.934707899349253255197542851216",
    "h(1)/n^5 alt": "0.959151942504318157165421137321",
    "l(1)/n^5": "1.02005194570145237930331996837",
    "l(1)*h(2)/n^3": "1.15935334356951415975457027807",
    "l(1)*h(3)/n^2": "1.47723102170162037670053143416",
}


@pytest.fixture(scope="module")
def suite25():
    return run_suite(25)


def test_criterion_1_printed_constants(capsys):
    t0 = time.perf_counter()
    code = cli_main(["constants", "--digits", "28"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert elapsed < 60.0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 8
    with mp.workdps(45):
        for line in lines:
            name, _, value = line.partition(" = ")
            name = name.strip()
            printed = PRINTED[name]
            # every reference digit but the last 2; output carries 28.
            # comparison uses the same 3-digit pass margin as the
            # verification suite, absorbing terminal rounding noise in
            # the reference digits
            digits = min(len(printed.replace(".", "").lstrip("0")) - 2, 28)
            want = mp.mpf(printed)
            tol = mp.mpf(10) ** (3 - digits) * max(mp.mpf(1), abs(want))
            assert abs(mp.mpf(value) - want) < tol, name
    print(f"criterion 1 PASS: 8 printed constants reproduced "
          f"({elapsed:.1f}s)")


def test_criterion_2_identity_regressions(suite25):
    tags = [f"Eq(3.{k})" for k in range(6, 12)]
    tags += ["R(4,1)", "R(2,3)", "closing"]
    tags += ["S1:h(1)/n^3 alt", "S1:l(1)/n^3 alt", "S1:l(2)/n^2",
             "S1:h(2)/n^2 alt"]
    by_tag = {r.provenance: r for r in suite25}
    with mp.workdps(40):
        bound = mp.mpf(10) ** -22
        for tag in tags:
            report = by_tag[tag]
            assert report.passed, tag
            assert report.digits_requested == 25
            assert mp.mpf(report.abs_diff.value) < bound, tag
    print(f"criterion 2 PASS: {len(tags)} regressions within 1e-22 "
          "at 25 digits")


def test_criterion_3_euler_formula_vs_brute_force():
    for k in range(2, 9):
        got = sv_numeric(euler_linear(k), 16)
        want = brute_euler(k, 16)
        assert close_digits(got, want, 12), k
    print("criterion 3 PASS: euler_linear matches brute force, k=2..8")


def test_criterion_4_odd_weight_formula_vs_brute_force():
    for p, q in [(2, 3), (3, 2), (2, 5), (4, 3)]:
        got = sv_numeric(fs_odd_linear(p, q), 16)
        want = brute_fs(p, q, 16)
        assert close_digits(got, want, 12), (p, q)
    for q in (2, 4, 6):
        a = sv_numeric(fs_odd_linear(1, q), 30)
        b = sv_numeric(euler_linear(q), 30)
        assert close_digits(a, b, 25), q
    print("criterion 4 PASS: odd-weight closed form matches brute force "
          "and the order-one specialization")


def test_criterion_5_integral_closed_forms():
    values = {}
    for p in range(1, 5):
        for q in range(1, 5):
            got = sv_numeric(integral_I_closed(p, q), 16)
            want = eval_I(p, q, 1, 16)
            values[(p, q)] = want
            assert close_digits(got, want, 12), (p, q)
    with mp.workdps(30):
        for p in range(1, 5):
            for q in range(p, 5):
                sym_diff = diff_of(values[(p, q)], values[(q, p)])
                assert sym_diff < mp.mpf(10) ** -12, (p, q)
    print("criterion 5 PASS: 16 closed-form integrals match the double "
          "series, symmetry within 1e-12")


def test_criterion_6_quadratic_reduction_driver():
    got = reduce_quadratic("h(2)*h(3)/n alt")
    want = resolve_tag("Eq(3.7)").rhs
    assert sv_sub(got, want).is_zero(), "coefficient mismatch"
    unprinted = ["h(2)*h(5)/n alt", "h(3)*h(4)/n alt",
                 "l(2)*l(5)/n alt", "l(3)*l(4)/n alt"]
    for spec in unprinted:
        reduced = sv_numeric(reduce_quadratic(spec), 22)
        direct = eval_sum(spec, 22)
        assert close_digits(reduced, direct, 18), spec
    print("criterion 6 PASS: benchmark reduction exact, 4 unprinted "
          "instances match to 18+ digits")


def test_criterion_7_structural_properties():
    # partial-fraction exactness, all s,t <= 6, 20 random rational points
    rng = random.Random(20260816)
    points = []
    while len(points) < 20:
        x = Fraction(rng.randint(-60, 60), rng.randint(1, 40))
        if x not in (0, 1):
            points.append(x)
    for s in range(1, 7):
        for t in range(1, 7):
            a, b = pf_coeffs(s, t)
            for x in points:
                lhs = Fraction(1) / (x ** s * (1 - x) ** t)
                rhs = sum(a[j - 1] / x ** j for j in range(1, s + 1)) \
                    + sum(b[j - 1] / (1 - x) ** j for j in range(1, t + 1))
                assert lhs == rhs, (s, t, x)

    # weight homogeneity of every generated identity
    generated = list(regression_identities())
    for name, grids in [
        ("cor2_6", [(2, 0), (2, 1), (3, 0)]),
        ("cor2_7", [(2, 0), (2, 1), (3, 0)]),
        ("thm2_8", [(2, 0), (3, 1)]),
        ("thm2_9", [(2, 0), (3, 0)]),
        ("cor3_2", [(2, 0), (2, 1)]),
        ("cor3_3", [(1, 1), (2, 0)]),
    ]:
        for params in grids:
            generated.append(identity_family(name, params))
    for ident in generated:
        assert ident.weight is not None, ident.provenance

    # the verifier notices a perturbed identity
    control = verify("NegControl:Eq(3.6)", 25)
    assert control.status == "fail" and control.digits_agreed <= 2

    # parse/print round trip on 500 random specifications
    for _ in range(500):
        nfac = rng.randint(0, 3)
        factors = tuple(Factor(rng.choice("hl"), rng.randint(1, 6),
                               rng.randint(1, 3)) for _ in range(nfac))
        spec = SumSpec(factors, rng.randint(1, 6), rng.random() < 0.5)
        assert parse_sumspec(format_sumspec(spec)) == spec
    print("criterion 7 PASS: partial fractions exact, identities weight-"
          "homogeneous, control detected, 500 round trips")


def test_criterion_8_precision_stability(suite25):
    suite35 = run_suite(35)
    assert suite_ok(suite25) and suite_ok(suite35)
    assert [r.provenance for r in suite25] == [r.provenance for r in suite35]
    for low, high in zip(suite25, suite35):
        if low.negative_control or low.lhs_value is None:
            continue
        digits = low.digits_requested
        assert close_digits(high.lhs_value, low.lhs_value, digits), \
            low.provenance
        assert close_digits(high.rhs_value, low.rhs_value, digits), \
            low.provenance
    print("criterion 8 PASS: suite values stable under +10 digit "
          "recomputation")
