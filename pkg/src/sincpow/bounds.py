"""Evaluation of the explicit bounds and the effective error envelope.

All checks run in multiprecision floats of at least 128 bits.  A claimed
``a <= b`` is only accepted with a margin of two units in the last place, so
a pass can't be an artefact of rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exact_core import HighFloat, binomial, exact_sinc_integral, fibonacci, to_mpf
from .quadrature import quad_gaussian_tail, quad_sinc_pow
from .series import AsymptoticExpansion, SeriesCoeffs, asymptotic_coefficients, series_log_sinc

__all__ = [
    "ENVELOPE_CONSTANT",
    "ENVELOPE_CONSTANT_DISPLAY",
    "EXPECTED_EXCEPTIONS",
    "PRINTED_COEFFS",
    "CheckResult",
    "EnvelopeReport",
    "ErrorBudget",
    "certified_le",
    "coeff_bound_check",
    "compare_printed_coeffs",
    "envelope_residual",
    "error_budget",
    "fibonacci_identity_check",
    "gaussian_tail_bound",
    "log_sinc_upper_check",
    "prop2_envelope",
    "remainder_bound",
    "remainder_grid_check",
    "tail_bound",
    "tail_lemma_check",
]

PRECISION = 128

# Constants exactly as printed; converted to mpf once per use at working precision.
COEFF_CONSTANT = "0.517"
REMAINDER_CONSTANT = "1.09"
ENVELOPE_CONSTANT = "7.26e-3"
ENVELOPE_CONSTANT_DISPLAY = "7.25e-3"
TAYLOR_TAIL_CONSTANT = "11104"
EXTENSION_CONSTANT = "1.59e-9"
COMPOSITION_CONSTANT = "1.45"
COMPOSITION_BASE = "0.479"
SMALL_L_CONSTANT = "5.5e7"
BUDGET_CONSTANT = "1e-5"

EXPECTED_EXCEPTIONS = frozenset({2, 4, 6, 8, 10})

PRINTED_COEFFS = (
    Fraction(-3, 20),
    Fraction(-13, 1120),
    Fraction(27, 3200),
    Fraction(52791, 3942400),
    Fraction(482427, 66560000),
    Fraction(-124996631, 10035200000),
    Fraction(-5270328789, 136478720000),
    Fraction(-7479063506161, 268461670400000),
    Fraction(6921977624613, 56518246400000),
    Fraction(2631854096507395099467, 1028632084480000000),
)


@dataclass
class CheckResult:
    """Outcome of one verification; ``status`` is pass, fail or discrepancy."""

    name: str
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _hf(x) -> HighFloat:
    return HighFloat(+x, mpmath.mp.prec)


def certified_le(a, b, ulps: int = 2) -> bool:
    """``a <= b`` with ``ulps`` units of slack taken against the claim."""
    eps = mpmath.ldexp(1, 1 - mpmath.mp.prec)
    margin = ulps * eps * max(abs(a), abs(b))
    return a + margin <= b


def certified_lt(a, b, ulps: int = 2) -> bool:
    eps = mpmath.ldexp(1, 1 - mpmath.mp.prec)
    margin = ulps * eps * max(abs(a), abs(b))
    return a + margin < b


def tail_bound(n: int, precision: int = PRECISION) -> HighFloat:
    """Upper bound ``exp(-n/6)`` for the integral over ``[1, inf)``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    with mpmath.workprec(precision):
        return _hf(mpmath.exp(-mpmath.mpf(n) / 6))


def tail_lemma_check(n_values=range(3, 21), precision: int = 256) -> CheckResult:
    """Verify ``0 <= int_1^inf (sin x/x)**n <= exp(-n/6)`` by quadrature."""
    rows = {}
    ok = True
    for n in n_values:
        q = quad_sinc_pow(n, mpmath.mpf("1e-30"), precision=precision, lower=1)
        with mpmath.workprec(precision):
            v, e = q.value.value, q.certified_error.value
            bound = mpmath.exp(-mpmath.mpf(n) / 6)
            good = v - e >= 0 and certified_le(v + e, bound)
        ok &= good
        rows[n] = {"integral": mpmath.nstr(v, 20), "bound": mpmath.nstr(bound, 20), "ok": good}
    return CheckResult("tail_lemma", "pass" if ok else "fail", rows)


def coeff_bound_check(
    k_max: int, k_min: int = 2, coeffs: SeriesCoeffs | None = None
) -> CheckResult:
    """Test ``|a_k| < 0.517 * 3**-k`` exactly for ``k_min <= k <= k_max``.

    Every ``k`` is reported.  ``a_2 = -1/6`` fails the bound, so callers that
    want the tail statement pass ``k_min=4``.
    """
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    D = k_max + (k_max % 2)
    if coeffs is None or coeffs.D < D:
        coeffs = series_log_sinc(D)
    constant = Fraction(COEFF_CONSTANT)
    per_k = {}
    violations = []
    for k in range(k_min, k_max + 1):
        holds = abs(coeffs[k]) < constant / 3**k
        per_k[k] = holds
        if not holds:
            violations.append(k)
    detail = {
        "k_range": [k_min, k_max],
        "first_violation": violations[0] if violations else None,
        "violations": violations,
        "per_k": per_k,
    }
    return CheckResult("coeff_bound", "fail" if violations else "pass", detail)


def remainder_bound(x, K: int, precision: int = PRECISION) -> HighFloat:
    """``1.09 * (x/3)**(K+2)``, the remainder bound for the degree-``K`` Taylor polynomial."""
    if K % 2:
        raise ValueError(f"K must be even, got {K}")
    with mpmath.workprec(precision):
        x = mpmath.mpf(x.value if isinstance(x, HighFloat) else x)
        if not 0 < x < mpmath.pi / 2:
            raise ValueError(f"x must lie in (0, pi/2), got {x}")
        return _hf(mpmath.mpf(REMAINDER_CONSTANT) * (x / 3) ** (K + 2))


def true_remainder(x, K: int, coeffs: SeriesCoeffs, precision: int = 256) -> HighFloat:
    with mpmath.workprec(precision):
        x = mpmath.mpf(x)
        exact = mpmath.log(mpmath.sin(x) / x)
        return _hf(abs(exact - coeffs.partial_sum(x, K)))


def remainder_grid_check(
    n_x: int = 20, K_values=(2, 4, 6, 8, 10), precision: int = 256
) -> CheckResult:
    """Compare :func:`remainder_bound` with the true remainder on a grid in ``(0, pi/2)``."""
    coeffs = series_log_sinc(max(K_values))
    worst = None
    failures = []
    with mpmath.workprec(precision):
        xs = [mpmath.pi / 2 * i / (n_x + 1) for i in range(1, n_x + 1)]
        for K in K_values:
            for x in xs:
                actual = true_remainder(x, K, coeffs, precision).value
                bound = remainder_bound(x, K, precision).value
                ratio = actual / bound
                if worst is None or ratio > worst[0]:
                    worst = (ratio, float(x), K)
                if not certified_le(actual, bound):
                    failures.append((float(x), K))
    detail = {
        "points": n_x * len(K_values),
        "worst_ratio": mpmath.nstr(worst[0], 10),
        "worst_at": {"x": worst[1], "K": worst[2]},
        "failures": failures,
    }
    return CheckResult("remainder_bound", "fail" if failures else "pass", detail)


def log_sinc_upper_check(samples: int = 1000, precision: int = PRECISION) -> CheckResult:
    """``log(sin x / x) <= -x**2/6`` on ``samples`` equispaced points of ``(0, 1]``."""
    failures = []
    with mpmath.workprec(precision):
        for i in range(1, samples + 1):
            x = mpmath.mpf(i) / samples
            if not certified_le(mpmath.log(mpmath.sin(x) / x), -x * x / 6):
                failures.append(float(x))
    return CheckResult(
        "log_sinc_upper", "fail" if failures else "pass", {"samples": samples, "failures": failures}
    )


def gaussian_tail_bound(u0, k: int, precision: int = PRECISION) -> HighFloat:
    """``exp(-u0**2/2) u0**k / (1 - exp(-3/2))``, valid for ``u0 > 5`` and ``k <= 20``."""
    if not 0 <= k <= 20:
        raise ValueError(f"power must be in [0, 20], got {k}")
    with mpmath.workprec(precision):
        u0 = mpmath.mpf(u0.value if isinstance(u0, HighFloat) else u0)
        if u0 <= 5:
            raise ValueError(f"u0 must exceed 5, got {u0}")
        return _hf(mpmath.exp(-u0 * u0 / 2) * u0**k / (1 - mpmath.exp(mpmath.mpf(-3) / 2)))


def gaussian_tail_check(u0_values=(5.5, 6, 8), powers=range(0, 21), precision=256) -> CheckResult:
    failures = []
    for u0 in u0_values:
        for k in powers:
            q = quad_gaussian_tail(k, u0, precision)
            with mpmath.workprec(precision):
                bound = gaussian_tail_bound(u0, k, precision).value
                if not certified_le(q.value.value + q.certified_error.value, bound):
                    failures.append((u0, k))
    return CheckResult("gaussian_tail", "fail" if failures else "pass", {"failures": failures})


def fibonacci_identity_check(k_max: int) -> CheckResult:
    """``sum_{k/2 <= l <= k-1} C(l-1, k-l-1) == F_{k-1}`` for ``2 <= k <= k_max``."""
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    failures = []
    for k in range(2, k_max + 1):
        lhs = sum(binomial(ell - 1, k - ell - 1) for ell in range((k + 1) // 2, k))
        if lhs != fibonacci(k - 1):
            failures.append(k)
    return CheckResult(
        "fibonacci_identity",
        "fail" if failures else "pass",
        {"k_max": k_max, "failures": failures},
    )


@dataclass(frozen=True)
class ErrorBudget:
    n: int
    taylor_tail: HighFloat
    extension_tail: HighFloat
    residual_terms: HighFloat
    total: HighFloat
    residual_ok: bool
    extension_ok: bool


def error_budget(n: int, precision: int = PRECISION) -> ErrorBudget:
    """The three error contributions of the large-``n`` argument, valid for ``n >= 400``."""
    if n < 400:
        raise ValueError(f"the error budget only applies for n >= 400, got {n}")
    with mpmath.workprec(precision):
        N = mpmath.mpf(n)
        taylor = mpmath.mpf(TAYLOR_TAIL_CONSTANT) * N ** (mpmath.mpf(-23) / 2)
        extension = mpmath.mpf(EXTENSION_CONSTANT) * N**5 * mpmath.exp(-mpmath.pi * N / 12)
        residual = (
            mpmath.exp(-N / 6)
            + mpmath.mpf(COMPOSITION_CONSTANT)
            * mpmath.mpf(COMPOSITION_BASE) ** 35
            * (35 / N) ** (mpmath.mpf(35) / 2)
            + mpmath.mpf(SMALL_L_CONSTANT) / N**11
        )
        total = taylor + extension + residual
        residual_ok = certified_le(residual, mpmath.mpf(BUDGET_CONSTANT) / N**5)
        extension_ok = certified_lt(extension, N ** (mpmath.mpf(-23) / 2))
        return ErrorBudget(
            n, _hf(taylor), _hf(extension), _hf(residual), _hf(total), residual_ok, extension_ok
        )


@dataclass
class EnvelopeReport:
    """Scaled residuals ``n**5 |I(n)/sqrt(3 pi/(2n)) - S_4(n)|`` over a range of ``n``."""

    n_range: tuple[int, int]
    residuals: dict[int, HighFloat]
    threshold: str
    exceptions: list[int]
    expected_exceptions: frozenset[int] = EXPECTED_EXCEPTIONS

    @property
    def max_residual(self) -> tuple[int, HighFloat]:
        """Largest residual outside the expected exceptions."""
        pool = {n: v for n, v in self.residuals.items() if n not in self.expected_exceptions}
        if not pool:
            pool = self.residuals
        n = max(pool, key=lambda m: pool[m].value)
        return n, pool[n]

    @property
    def unexpected(self) -> list[int]:
        return [n for n in self.exceptions if n not in self.expected_exceptions]

    @property
    def missing(self) -> list[int]:
        lo, hi = self.n_range
        return sorted(
            n for n in self.expected_exceptions if lo <= n <= hi and n not in self.exceptions
        )

    @property
    def matches_paper(self) -> bool:
        return not self.unexpected and not self.missing


def envelope_residual(
    n: int, expansion: AsymptoticExpansion | None = None, precision: int = PRECISION, order: int = 4
) -> HighFloat:
    """``n**5 * |I(n) / sqrt(3 pi/(2n)) - S_order(n)|``.

    ``I(n) / sqrt(3 pi/(2n)) = r sqrt(2 pi n / 3)``; the truncated sum is exact
    so the square root is the only rounded quantity before the subtraction.
    """
    if expansion is None or expansion.L < order:
        expansion = asymptotic_coefficients(order)
    r = exact_sinc_integral(n).r
    bracket = expansion.bracket(n, order)
    with mpmath.workprec(precision):
        delta = to_mpf(r) * mpmath.sqrt(2 * mpmath.pi * n / 3) - to_mpf(bracket)
        return _hf(abs(delta) * mpmath.mpf(n) ** (order + 1))


def prop2_envelope(
    n_lo: int, n_hi: int, precision: int = PRECISION, threshold: str = ENVELOPE_CONSTANT
) -> EnvelopeReport:
    """Scaled residual of the 4-term expansion for every ``n`` in ``[n_lo, n_hi]``."""
    if not 1 <= n_lo <= n_hi:
        raise ValueError(f"need 1 <= n_lo <= n_hi, got ({n_lo}, {n_hi})")
    if precision < 128:
        raise ValueError("envelope residuals need at least 128 bits")
    expansion = asymptotic_coefficients(4)
    residuals = {}
    exceptions = []
    for n in range(n_lo, n_hi + 1):
        res = envelope_residual(n, expansion, precision)
        residuals[n] = res
        with mpmath.workprec(precision):
            if not certified_le(res.value, mpmath.mpf(threshold)):
                exceptions.append(n)
    return EnvelopeReport((n_lo, n_hi), residuals, threshold, exceptions)


def compare_printed_coeffs(expansion: AsymptoticExpansion) -> CheckResult:
    """Compare computed ``c_l`` with the printed values; mismatches are discrepancies."""
    rows = {}
    mismatched = []
    for ell in range(1, min(expansion.L, len(PRINTED_COEFFS)) + 1):
        ours, printed = expansion.c(ell), PRINTED_COEFFS[ell - 1]
        rows[ell] = {"computed": str(ours), "printed": str(printed), "match": ours == printed}
        if ours != printed:
            mismatched.append(ell)
    status = "discrepancy" if mismatched else "pass"
    return CheckResult("printed_coefficients", status, {"per_order": rows, "mismatched": mismatched})
