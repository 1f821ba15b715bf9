import math
from fractions import Fraction

import mpmath
import pytest

from sincpow import bounds
from sincpow.quadrature import quad_gaussian_tail, quad_sinc_pow
from sincpow.series import series_log_sinc


def test_tail_bound_values():
    assert math.isclose(float(bounds.tail_bound(6)), math.exp(-1), rel_tol=1e-15)
    assert math.isclose(float(bounds.tail_bound(12)), 0.1353352832366127, rel_tol=1e-15)


def test_tail_lemma_n3():
    q = quad_sinc_pow(3, mpmath.mpf("1e-30"), lower=1)
    assert 0 <= float(q.value) <= math.exp(-0.5)


def test_tail_lemma_range():
    assert bounds.tail_lemma_check(range(3, 21)).passed


def test_coeff_bound_reports_k2():
    res = bounds.coeff_bound_check(6)
    assert res.status == "fail"
    assert res.detail["first_violation"] == 2
    assert res.detail["per_k"][4] and res.detail["per_k"][6]
    # exact comparisons
    assert Fraction(1, 6) > Fraction("0.517") / 9
    assert Fraction(1, 180) < Fraction("0.517") / 81
    assert Fraction(1, 2835) < Fraction("0.517") / 729


def test_coeff_bound_from_4():
    assert bounds.coeff_bound_check(60, k_min=4).passed


def test_remainder_bound_values():
    assert math.isclose(float(bounds.remainder_bound(1, 2)), 1.09 / 81, rel_tol=1e-15)
    assert math.isclose(float(bounds.remainder_bound(1.5, 10)), 1.09 * 0.5**12, rel_tol=1e-15)
    with pytest.raises(ValueError):
        bounds.remainder_bound(1, 3)
    with pytest.raises(ValueError):
        bounds.remainder_bound(2, 4)


def test_remainder_x1_K2():
    with mpmath.workprec(128):
        actual = abs(mpmath.log(mpmath.sin(1)) - (-mpmath.mpf(1) / 6 - mpmath.mpf(1) / 180))
        assert actual <= bounds.remainder_bound(1, 2).value
    a = series_log_sinc(2)
    assert bounds.true_remainder(1, 2, series_log_sinc(4), 128).value <= bounds.remainder_bound(1, 2).value


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5])
@pytest.mark.parametrize("K", [2, 4, 6, 8, 10])
def test_remainder_points(x, K):
    coeffs = series_log_sinc(10)
    assert bounds.true_remainder(x, K, coeffs).value < bounds.remainder_bound(x, K, 256).value


def test_remainder_grid():
    res = bounds.remainder_grid_check()
    assert res.passed and res.detail["points"] == 100


def test_log_sinc_upper():
    assert bounds.log_sinc_upper_check(1000).passed


def test_gaussian_tail_bound():
    assert math.isclose(float(bounds.gaussian_tail_bound(6, 0)), 1.96e-8, rel_tol=2e-3)
    q = quad_gaussian_tail(20, 6)
    assert q.value.value + q.certified_error.value <= bounds.gaussian_tail_bound(6, 20, 256).value
    assert float(bounds.gaussian_tail_bound(5.01, 1)) > 0
    with pytest.raises(ValueError):
        bounds.gaussian_tail_bound(5, 1)
    with pytest.raises(ValueError):
        bounds.gaussian_tail_bound(6, 21)


def test_gaussian_tail_grid():
    assert bounds.gaussian_tail_check().passed


def test_fibonacci_check():
    assert bounds.fibonacci_identity_check(300).passed
    # compositions of 5 into parts >= 2: (2,3), (3,2), (5)
    assert math.comb(2, 1) + math.comb(3, 0) == 3


@pytest.mark.parametrize("n", [400, 1000, 2000])
def test_error_budget(n):
    b = bounds.error_budget(n)
    assert b.residual_ok and b.extension_ok
    for part in (b.taylor_tail, b.extension_tail, b.residual_terms):
        assert part.value >= 0
    with mpmath.workprec(128):
        assert abs(b.total.value - (b.taylor_tail.value + b.extension_tail.value + b.residual_terms.value)) \
            <= mpmath.ldexp(b.total.value, -120)


def test_error_budget_monotone():
    totals = [bounds.error_budget(n).total.value for n in range(400, 2001, 100)]
    assert all(a > b for a, b in zip(totals, totals[1:]))


def test_error_budget_rejects_small_n():
    with pytest.raises(ValueError):
        bounds.error_budget(399)


def test_envelope_small_range():
    rep = bounds.prop2_envelope(1, 30)
    assert [2, 4, 6, 8, 10] == [n for n in rep.exceptions if n in bounds.EXPECTED_EXCEPTIONS]
    # the residuals at small odd n exceed the printed constant as well
    assert rep.unexpected == [1, 3, 5, 7, 9, 12]
    assert not rep.missing
    for n in range(13, 31):
        assert rep.residuals[n].value <= mpmath.mpf("7.26e-3")
    assert rep.residuals[3].precision >= 128


def test_envelope_residual_n3_by_hand():
    with mpmath.workprec(200):
        pref = mpmath.sqrt(mpmath.pi / 2)
        S4 = 1 + mpmath.mpf(-3) / 60 - mpmath.mpf(13) / 1120 / 9 + mpmath.mpf(27) / 3200 / 27 \
            + mpmath.mpf(52791) / 3942400 / 81
        ref = 243 * abs(3 * mpmath.pi / 8 / pref - S4)
        assert abs(bounds.envelope_residual(3, precision=200).value - ref) < mpmath.mpf("1e-50")


def test_printed_coefficient_comparison():
    from sincpow.series import asymptotic_coefficients
    assert bounds.compare_printed_coeffs(asymptotic_coefficients(9)).passed
    res = bounds.compare_printed_coeffs(asymptotic_coefficients(10))
    assert res.status == "discrepancy" and res.detail["mismatched"] == [10]


def test_certified_le_margin():
    with mpmath.workprec(128):
        one = mpmath.mpf(1)
        assert bounds.certified_le(one, 2 * one)
        assert not bounds.certified_le(one, one)


from hypothesis import given, settings, strategies as st


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=13, max_value=2000))
def test_envelope_holds_from_13(n):
    assert bounds.envelope_residual(n).value <= mpmath.mpf("7.26e-3")
