"""Exact arithmetic for the sinc-power integral.

The closed form

    I(n) = pi / (2**n (n-1)!) * sum_{j=0}^{n//2} (-1)**j C(n, j) (n-2j)**(n-1)

is an alternating sum with massive cancellation, so it is evaluated in
Python integers only.  The result is kept as the rational ``r`` with
``I(n) = r * pi``; :func:`to_float` renders it at a chosen binary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

__all__ = [
    "ExactValue",
    "HighFloat",
    "binomial",
    "double_factorial",
    "exact_sinc_integral",
    "fibonacci",
    "to_float",
    "to_mpf",
]

MIN_PRECISION = 64
GUARD_BITS = 32


@dataclass(frozen=True)
class HighFloat:
    """A multiprecision float that remembers the precision it was rounded to."""

    value: mpmath.mpf
    precision: int

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.to_decimal()

    def to_decimal(self, digits: int | None = None) -> str:
        if digits is None:
            digits = int(self.precision * math.log10(2))
        with mpmath.workprec(self.precision):
            return mpmath.nstr(self.value, digits, strip_zeros=False)


@dataclass(frozen=True)
class ExactValue:
    """The integral for a given ``n``, stored as ``r`` with ``I(n) = r * pi``."""

    n: int
    r: Fraction

    def to_float(self, precision: int = 128) -> HighFloat:
        return to_float(self.r, precision)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"binomial arguments must be nonnegative, got ({n}, {k})")
    return math.comb(n, k)


@lru_cache(maxsize=None)
def double_factorial(m: int) -> int:
    """Return ``m!! = m (m-2) (m-4) ...`` for odd ``m >= -1``.

    ``(-1)!! = 1`` so that the zeroth Gaussian moment comes out right.
    """
    if m < -1:
        raise ValueError(f"double factorial needs m >= -1, got {m}")
    if m % 2 == 0:
        raise ValueError(f"double factorial is only defined here for odd m, got {m}")
    return math.prod(range(1, m + 1, 2))


def fibonacci(k: int) -> int:
    """Fibonacci numbers with ``F_0 = 0`` and ``F_1 = F_2 = 1``."""
    if k < 0:
        raise ValueError(f"fibonacci index must be nonnegative, got {k}")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def _alternating_sum(n: int) -> int:
    # Binomials are updated in place; (n - 2j) ** (n - 1) is 0 for the middle
    # term of even n and 1 ** 0 = 1 for n = 1, neither needs special casing.
    total = 0
    c = 1
    for j in range(n // 2 + 1):
        term = c * (n - 2 * j) ** (n - 1)
        total += -term if j & 1 else term
        c = c * (n - j) // (j + 1)
    return total


def exact_sinc_integral(n: int) -> ExactValue:
    """Return the exact value of the integral of ``(sin x / x)**n`` over ``[0, inf)``.

    >>> exact_sinc_integral(3).r
    Fraction(3, 8)
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    r = Fraction(_alternating_sum(n), (1 << n) * math.factorial(n - 1))
    return ExactValue(n, r)


def to_mpf(q: Fraction) -> mpmath.mpf:
    """Round a rational to the current mpmath working precision."""
    return mpmath.mpf(q.numerator) / q.denominator


def to_float(r: Fraction, precision: int = 128) -> HighFloat:
    """Round ``r * pi`` to ``precision`` bits."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {precision}")
    r = Fraction(r)
    with mpmath.workprec(precision + GUARD_BITS):
        wide = mpmath.pi * r.numerator / r.denominator
    with mpmath.workprec(precision):
        return HighFloat(+wide, precision)
