"""Exit criteria, one test per criterion, each at its stated tolerance."""

import io
import json
import math
import time
from fractions import Fraction

import mpmath

from sincpow import bounds
from sincpow.cli import run
from sincpow.exact_core import double_factorial, exact_sinc_integral, to_float
from sincpow.inequality import Relation, schneider_scan
from sincpow.quadrature import contour_mean, gaussian_moment, quad_sinc_pow

PRINTED_1_TO_9 = [
    "-3/20", "-13/1120", "27/3200", "52791/3942400", "482427/66560000",
    "-124996631/10035200000", "-5270328789/136478720000",
    "-7479063506161/268461670400000", "6921977624613/56518246400000",
]
PRINTED_C10 = Fraction(2631854096507395099467, 1028632084480000000)


def _cli(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, json.loads(buf.getvalue())


def test_c1_coefficient_reproduction(criterion):
    start = time.perf_counter()
    code9, rep9 = _cli(["coeffs", "--order", "9"])
    got = [rep9["results"]["coefficients"][str(i)] for i in range(1, 10)]
    code10, rep10 = _cli(["coeffs", "--order", "10"])
    elapsed = time.perf_counter() - start
    c10 = Fraction(*map(int, rep10["results"]["coefficients"]["10"].split("/")))
    c10_ok = (c10 == PRINTED_C10 and code10 == 0) or (
        c10 != PRINTED_C10 and code10 == 3
        and rep10["checks"][0]["detail"]["mismatched"] == [10]
    )
    ok = got == PRINTED_1_TO_9 and code9 == 0 and c10_ok and elapsed < 10
    criterion(ok, f"c1..c9 exact; c10={c10} vs printed {PRINTED_C10} -> exit {code10}; {elapsed:.2f}s")
    assert ok


def test_c2_prop2_envelope(criterion):
    start = time.perf_counter()
    rep = bounds.prop2_envelope(1, 400, precision=128)
    elapsed = time.perf_counter() - start
    with mpmath.workprec(128):
        limit = mpmath.mpf("7.26e-3")
        violators = [
            n for n in range(1, 401)
            if n not in bounds.EXPECTED_EXCEPTIONS and rep.residuals[n].value > limit
        ]
    excluded = {n: rep.residuals[n].to_decimal(6) for n in sorted(bounds.EXPECTED_EXCEPTIONS)}
    ok = not violators and elapsed < 60
    detail = ", ".join(f"n={n}: {rep.residuals[n].to_decimal(6)}" for n in violators)
    criterion(ok, f"violations outside {{2,4,6,8,10}}: [{detail}]; excluded n: {excluded}; {elapsed:.2f}s")
    assert ok, f"n^5 |delta| > 7.26e-3 at n = {violators}"


def test_c3_oracle_equivalence(criterion):
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for n in (2, 3, 5, 10, 20, 50):
        q = quad_sinc_pow(n, mpmath.mpf("1e-25"), precision=256)
        exact = to_float(exact_sinc_integral(n).r, 256)
        with mpmath.workprec(256):
            diff = abs(q.value.value - exact.value)
            ok &= diff <= mpmath.mpf("1e-25") and q.certified_error.value <= mpmath.mpf("1e-25")
            worst = max(worst, float(diff))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    criterion(ok, f"max |quad - exact| = {worst:.3e} (tol 1e-25); {elapsed:.2f}s")
    assert ok


def test_c4_exact_spot_values(criterion):
    expected = {1: Fraction(1, 2), 2: Fraction(1, 2), 3: Fraction(3, 8), 4: Fraction(1, 3),
                5: Fraction(115, 384)}
    got = {n: exact_sinc_integral(n).r for n in expected}
    ok = got == expected
    criterion(ok, ", ".join(f"r({n})={r}" for n, r in got.items()))
    assert ok


def test_c5_schneider_scan(criterion):
    start = time.perf_counter()
    non_gt = schneider_scan(2000)
    elapsed = time.perf_counter() - start
    lt = [v.n for v in non_gt if v.relation is Relation.LT]
    eq = [v.n for v in non_gt if v.relation is Relation.EQ]
    ok = not lt and eq == [1, 2, 4] and elapsed < 300
    criterion(ok, f"LT: {lt}; EQ: {eq} (n=1,2 equalities are a discrepancy with 'n != 4'); {elapsed:.1f}s")
    assert ok


def test_c6_bound_suite(criterion):
    parts = {
        "coeff_bound_4_60": bounds.coeff_bound_check(60, k_min=4).passed,
        "remainder_grid": bounds.remainder_grid_check().passed,
        "tail_lemma_3_20": bounds.tail_lemma_check(range(3, 21)).passed,
        "fibonacci_300": bounds.fibonacci_identity_check(300).passed,
    }
    with mpmath.workprec(256):
        root = mpmath.sqrt(mpmath.pi / 2)
        parts["gaussian_moments_10"] = all(
            abs(gaussian_moment(k, 256).value - double_factorial(2 * k - 1) * root) <= mpmath.mpf("1e-20")
            for k in range(11)
        )
    ok = all(parts.values())
    criterion(ok, ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items()))
    assert ok


def test_c7_contour_constant(criterion):
    start = time.perf_counter()
    m = contour_mean(3)
    elapsed = time.perf_counter() - start
    ok = abs(float(m) - 9.733) <= 1e-3 and elapsed < 10
    criterion(ok, f"M = {m.to_decimal(10)}; {elapsed:.2f}s")
    assert ok


def test_c8_large_n_budget(criterion):
    rows = []
    ok = True
    for n in (400, 1000, 2000):
        b = bounds.error_budget(n)
        ok &= b.residual_ok and b.extension_ok
        rows.append(f"n={n}: residual {b.residual_terms.to_decimal(3)} <= {1e-5 / n**5:.3e}, "
                    f"extension {b.extension_tail.to_decimal(3)} < {n ** -11.5:.3e}")
    criterion(ok, "; ".join(rows))
    assert ok
