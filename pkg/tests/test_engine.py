"""Numeric summation engine against independent reference values.

The frozen constants below were produced by a separate evaluator built
only on mpmath primitives: factor partial sums written analytically via
Hurwitz zeta and digamma tails, consecutive terms paired to keep the
summand smooth, and the outer series fed to mpmath's adaptive nsum.
That route shares no code with the engine under test.
"""
from fractions import Fraction

import mpmath as mp
import pytest

from helpers import close_digits
from eulersum.kernel import AccelerationError, DivergentSumError, PrecReal
from eulersum.engine import (
    DEFAULT_MAX_TERMS,
    eval_I,
    eval_R,
    eval_polylog,
    eval_series,
    eval_sum,
    euler_gamma_value,
    lihalf_value,
    zeta_value,
    zetabar_value,
)
from eulersum.sumspec import Factor, parse_sumspec

# reference values, 36 digits each (independent evaluator, see module doc)
FROZEN_SUMS = [
    ("h(1)^2/n^2 alt", "0.656311551607752204630659246374290999"),
    ("h(1)*h(2)/n^2", "3.01423210544066604452845092794215974"),
    ("l(1)^2/n^3", "1.07480947372281777610886484448078459"),
    ("l(2)*h(1)/n^2 alt", "0.837379474295682582661632589059460664"),
    ("h(3)/n^5", "1.04178502918279188338999002080231238"),
    ("l(1)^3/n^2", "1.18656420780517313344083771549904350"),
    ("h(1)/n^4 alt", "0.923183373396940242574912394912593961"),
    ("h(2)^2/n^3 alt", "0.852463812744326373452844136947451620"),
    ("l(3)/n^3", "1.17917072978143807542268991649372306"),
    ("h(2)*h(3)/n alt", "0.593273284340843960250850059320023714"),
]

FROZEN_I = [
    (2, 3, "0.5", "0.144299007693274842504530249411787651"),
    (3, 2, "-0.7", "0.210383998184860178732286499740253052"),
    (1, 1, "0.25", "0.0375549103170281766929959557029756414"),
]

FROZEN_R = [
    (3, 2, "-0.485050977665856087412829366594899547"),
    (2, 3, "-0.598654621159369588022434442510341323"),
    (4, 1, "-0.405124201570536909837373821972155915"),
]


@pytest.mark.parametrize("spec,want", FROZEN_SUMS)
def test_eval_sum_against_independent_oracle(spec, want):
    got = eval_sum(spec, 30)
    with mp.workdps(45):
        assert close_digits(got, mp.mpf(want), 28)


def test_eval_sum_classical_closed_forms():
    with mp.workdps(45):
        assert close_digits(eval_sum("1/n^2", 30), mp.zeta(2), 28)
        assert close_digits(eval_sum("1/n alt", 30), mp.ln(2), 28)
        assert close_digits(eval_sum("h(1)/n^2", 30), 2 * mp.zeta(3), 28)
        # sum H_n/n^3 = (5/4) zeta(4)
        assert close_digits(eval_sum("h(1)/n^3", 30),
                            mp.mpf(5) / 4 * mp.zeta(4), 28)


def test_eval_sum_requested_digits_scale():
    lo = eval_sum("h(1)^2/n^2 alt", 15)
    hi = eval_sum("h(1)^2/n^2 alt", 35)
    assert close_digits(lo, hi, 14)


def test_eval_sum_accepts_spec_object():
    spec = parse_sumspec("h(2)/n^3")
    assert close_digits(eval_sum(spec, 20), eval_sum("h(2)/n^3", 20), 19)


def test_eval_sum_divergent():
    for bad in ("h(1)/n", "1/n", "h(2)/n^0", "l(1)*h(1)/n"):
        with pytest.raises(DivergentSumError):
            eval_sum(bad, 20)


def test_eval_sum_budget_exhaustion():
    # a fresh spec/digits pair (cached results spend no terms) cannot
    # finish in a 120-term budget
    with pytest.raises(AccelerationError):
        eval_sum("l(3)*h(2)/n^2", 27, max_terms=120)
    assert DEFAULT_MAX_TERMS >= 10 ** 5


def test_eval_polylog_against_mpmath():
    with mp.workdps(45):
        for p, x in [(2, "0.5"), (3, "-0.8"), (5, "0.99"), (1, "0.25"),
                     (4, "-1")]:
            got = eval_polylog(p, mp.mpf(x), 32)
            assert close_digits(got, mp.polylog(p, mp.mpf(x)), 30)


def test_eval_polylog_domain():
    with pytest.raises(DivergentSumError):
        eval_polylog(1, 1, 20)


@pytest.mark.parametrize("p,q,x,want", FROZEN_I)
def test_eval_I_interior_points(p, q, x, want):
    with mp.workdps(45):
        got = eval_I(p, q, mp.mpf(x), 30)
        assert close_digits(got, mp.mpf(want), 28)


def test_eval_I_symmetry_in_first_arguments():
    # the double series is symmetric under (p,x-part) swap of k and m
    a = eval_I(2, 3, 1, 20)
    b = eval_I(3, 2, 1, 20)
    assert close_digits(a, b, 18)


def test_eval_I_at_one_known_value():
    # I(1,1) at x=1 is 2 zeta(3)
    with mp.workdps(40):
        assert close_digits(eval_I(1, 1, 1, 25), 2 * mp.zeta(3), 23)


@pytest.mark.parametrize("p,q,want", FROZEN_R)
def test_eval_R_frozen(p, q, want):
    with mp.workdps(45):
        assert close_digits(eval_R(p, q, 28), mp.mpf(want), 26)


def test_eval_series_geometric_weight():
    # sum H_n z^n/n^2 at z=1/2 = zeta(3) - (pi^2/12) ln 2
    with mp.workdps(45):
        want = mp.zeta(3) - mp.pi ** 2 / 12 * mp.ln(2)
        got = eval_series([(1, 1)], 2, Fraction(1, 2), 30)
        assert close_digits(got, want, 28)


def test_eval_series_matches_eval_sum_at_unit_arguments():
    # factor argument 1 gives h(2); outer z=-1 weights by (-1)**n, which is
    # the negative of the sumspec "alt" convention (-1)**(n-1)
    direct = eval_sum("h(2)/n^3 alt", 25)
    series = eval_series([(2, 1)], 3, -1, 25)
    with mp.workdps(40):
        flipped = PrecReal(-mp.mpf(series.value), series.digits)
    assert close_digits(direct, flipped, 23)


def test_eval_series_mixed_route():
    # one |x|<1 factor among unit arguments, z=1: summation order swap
    with mp.workdps(45):
        x = Fraction(1, 3)
        got = eval_series([(2, x)], 2, 1, 25)
        # independent: w_n(2,x) -> Li_2(x), tail decays like x^n;
        # direct summation at 45 dps
        acc = mp.mpf(0)
        w = mp.mpf(0)
        xm = mp.mpf(1) / 3
        for n in range(1, 400):
            w += xm ** n / mp.mpf(n) ** 2
            acc += w / mp.mpf(n) ** 2
        # tail: w_n ~ Li_2(x) so remainder ~ Li_2(x) * (zeta(2) - partial)
        li = mp.polylog(2, xm)
        acc += li * (mp.zeta(2) - sum(mp.mpf(1) / mp.mpf(n) ** 2
                                      for n in range(1, 400)))
        assert close_digits(got, acc, 20)


def test_engine_constants_against_mpmath():
    with mp.workdps(50):
        assert close_digits(zeta_value(3, 40), mp.zeta(3), 38)
        assert close_digits(zetabar_value(1, 40), mp.ln(2), 38)
        assert close_digits(zetabar_value(5, 40),
                            (1 - mp.mpf(2) ** -4) * mp.zeta(5), 38)
        assert close_digits(lihalf_value(4, 40),
                            mp.polylog(4, mp.mpf(1) / 2), 38)
        assert close_digits(euler_gamma_value(40), mp.euler, 38)
