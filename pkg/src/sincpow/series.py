"""Truncated power series over the rationals and the Laplace-method expansion.

Substituting ``x = u * sqrt(3/n)`` in ``exp(n * log(sin x / x))`` gives

    exp(-u**2/2) * exp( sum_{k>=2} a_{2k} (3 u**2)**k / n**(k-1) )

and the second factor is expanded as ``1 + sum b[k, l] u**(2k) / n**l``.
Integrating term by term against the Gaussian turns ``u**(2k)`` into
``(2k-1)!! sqrt(pi/2)``, which yields

    I(n) ~ sqrt(3 pi / (2 n)) * (1 + sum_l c_l / n**l),
    c_l  = sum_{k=l+1}^{2l} b[k, l] (2k-1)!!.

Everything here is exact; only :func:`asympt_eval` touches floating point.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact_core import HighFloat, double_factorial, to_mpf

__all__ = [
    "AsymptoticExpansion",
    "BTable",
    "SeriesCoeffs",
    "TruncatedSeries",
    "asympt_eval",
    "asymptotic_coefficients",
    "b_coefficients",
    "b_coefficients_by_compositions",
    "compositions",
    "series_log_sinc",
]

PREFACTOR = "sqrt(3*pi/(2*n))"


class TruncatedSeries:
    """Dense power series ``sum coeffs[k] x**k`` truncated after ``x**degree_bound``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence, degree_bound: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if degree_bound is None:
            degree_bound = len(coeffs) - 1
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        coeffs = coeffs[: degree_bound + 1]
        coeffs += [Fraction(0)] * (degree_bound + 1 - len(coeffs))
        self._coeffs = tuple(coeffs)

    @property
    def degree_bound(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs[k]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self._coeffs)
        return f"TruncatedSeries([{terms}])"

    def _common(self, other: TruncatedSeries) -> int:
        return min(self.degree_bound, other.degree_bound)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        d = self._common(other)
        return TruncatedSeries([self[k] + other[k] for k in range(d + 1)])

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        d = self._common(other)
        return TruncatedSeries([self[k] - other[k] for k in range(d + 1)])

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self._coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries([c * a for a in self._coeffs])
        d = self._common(other)
        out = [Fraction(0)] * (d + 1)
        for i in range(d + 1):
            if self[i]:
                for j in range(d + 1 - i):
                    out[i + j] += self[i] * other[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def derivative(self) -> TruncatedSeries:
        d = self.degree_bound
        if d == 0:
            return TruncatedSeries([0])
        return TruncatedSeries([k * self[k] for k in range(1, d + 1)])

    def log(self) -> TruncatedSeries:
        """Formal logarithm; needs constant term 1."""
        if self[0] != 1:
            raise ValueError("formal log requires constant term 1")
        d = self.degree_bound
        out = [Fraction(0)] * (d + 1)
        # From L' * S = S':  m L_m = m S_m - sum_{j<m} j L_j S_{m-j}
        for m in range(1, d + 1):
            acc = m * self[m]
            for j in range(1, m):
                if out[j] and self[m - j]:
                    acc -= j * out[j] * self[m - j]
            out[m] = acc / m
        return TruncatedSeries(out)

    def exp(self) -> TruncatedSeries:
        """Formal exponential; needs constant term 0."""
        if self[0] != 0:
            raise ValueError("formal exp requires constant term 0")
        d = self.degree_bound
        out = [Fraction(0)] * (d + 1)
        out[0] = Fraction(1)
        # From E' = G' E:  m E_m = sum_{j=1}^m j G_j E_{m-j}
        for m in range(1, d + 1):
            acc = Fraction(0)
            for j in range(1, m + 1):
                if self[j] and out[m - j]:
                    acc += j * self[j] * out[m - j]
            out[m] = acc / m
        return TruncatedSeries(out)


@dataclass(frozen=True)
class SeriesCoeffs:
    """Taylor coefficients of ``log(sin x / x)`` up to ``x**D`` (``a[k]`` for ``x**k``)."""

    D: int
    a: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.a[k]

    def partial_sum(self, x: mpmath.mpf, K: int) -> mpmath.mpf:
        """``sum_{k<=K} a[k] x**k`` at the current working precision."""
        if K > self.D:
            raise ValueError(f"K={K} exceeds the degree bound {self.D}")
        return mpmath.fsum(to_mpf(self.a[k]) * x**k for k in range(2, K + 1, 2))


def sinc_series(D: int) -> TruncatedSeries:
    """``sin x / x`` truncated after ``x**D``."""
    coeffs = [Fraction(0)] * (D + 1)
    for m in range(D // 2 + 1):
        coeffs[2 * m] = Fraction((-1) ** m, math.factorial(2 * m + 1))
    return TruncatedSeries(coeffs)


def series_log_sinc(D: int) -> SeriesCoeffs:
    """Exact Taylor coefficients of ``log(sin x / x)`` through ``x**D``.

    >>> series_log_sinc(6).a[2:7:2]
    (Fraction(-1, 6), Fraction(-1, 180), Fraction(-1, 2835))
    """
    if D < 2:
        raise ValueError(f"degree bound must be at least 2, got {D}")
    if D % 2:
        raise ValueError(f"degree bound must be even, got {D}")
    return SeriesCoeffs(D, sinc_series(D).log().coeffs)


@dataclass(frozen=True)
class BTable:
    """Coefficients ``b[k, l]`` of ``u**(2k) / n**l`` in the exponential factor.

    Keys cover ``2 <= k <= k_max`` and ``ceil(k/2) <= l <= k-1``;
    ``K`` is the number of Taylor terms ``a_4 .. a_{2K}`` that were used.
    """

    K: int
    k_max: int
    entries: dict[tuple[int, int], Fraction]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.entries[key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BTable):
            return NotImplemented
        return (self.K, self.k_max, self.entries) == (other.K, other.k_max, other.entries)

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()


def _index_range(k_max: int) -> Iterator[tuple[int, int]]:
    for k in range(2, k_max + 1):
        for ell in range((k + 1) // 2, k):
            yield k, ell


def _check_b_args(K: int, k_max: int, coeffs: SeriesCoeffs | None) -> SeriesCoeffs:
    if K < 2:
        raise ValueError(f"K must be at least 2, got {K}")
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    if coeffs is None:
        coeffs = series_log_sinc(2 * K)
    elif coeffs.D < 2 * K:
        raise ValueError(f"need Taylor coefficients through x**{2 * K}, got D={coeffs.D}")
    return coeffs


def b_coefficients(K: int, k_max: int, coeffs: SeriesCoeffs | None = None) -> BTable:
    """Expand ``exp(sum_{k=2}^K a_{2k} (3 t)**k s**(k-1))`` in ``t = u**2``, ``s = 1/n``.

    The exponent is graded by the power of ``t``; the exponential is formed by
    the recurrence ``k E_k = sum_j j G_j E_{k-j}`` where each ``E_k`` is a
    polynomial in ``s``.
    """
    coeffs = _check_b_args(K, k_max, coeffs)
    # G_j = a_{2j} 3**j s**(j-1): a single monomial for each t-degree j.
    g = {j: coeffs[2 * j] * 3**j for j in range(2, K + 1)}
    # E[k] maps the power of s to its coefficient.
    E: list[dict[int, Fraction]] = [{0: Fraction(1)}]
    for k in range(1, k_max + 1):
        acc: dict[int, Fraction] = {}
        for j in range(2, min(k, K) + 1):
            gj = j * g[j]
            for ell, v in E[k - j].items():
                acc[ell + j - 1] = acc.get(ell + j - 1, Fraction(0)) + gj * v
        E.append({ell: v / k for ell, v in acc.items()})
    entries = {(k, ell): E[k].get(ell, Fraction(0)) for k, ell in _index_range(k_max)}
    return BTable(K, k_max, entries)


def compositions(total: int, parts: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` integers in ``[lo, hi]`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, min(hi, total - lo * (parts - 1)) + 1):
        for rest in compositions(total - first, parts - 1, lo, hi):
            yield (first, *rest)


def b_coefficients_by_compositions(
    K: int, k_max: int, coeffs: SeriesCoeffs | None = None
) -> BTable:
    """Same table as :func:`b_coefficients`, summed over compositions directly.

    ``b[k, l] = 3**k / (k-l)! * sum over compositions k = kappa_1 + ... +
    kappa_{k-l} with 2 <= kappa_i <= K of prod a_{2 kappa_i}``.
    Exponential in ``k``; use only as a cross-check.
    """
    coeffs = _check_b_args(K, k_max, coeffs)
    entries = {}
    for k, ell in _index_range(k_max):
        m = k - ell
        total = Fraction(0)
        for parts in compositions(k, m, 2, K):
            term = Fraction(1)
            for kappa in parts:
                term *= coeffs[2 * kappa]
            total += term
        entries[k, ell] = total * 3**k / math.factorial(m)
    return BTable(K, k_max, entries)


@dataclass(frozen=True)
class AsymptoticExpansion:
    """``sqrt(3 pi / (2n)) * (1 + sum_{l=1}^L c_l / n**l)``; ``coeffs[l-1]`` is ``c_l``."""

    L: int
    coeffs: tuple[Fraction, ...]
    prefactor: str = PREFACTOR

    def c(self, ell: int) -> Fraction:
        if not 1 <= ell <= self.L:
            raise IndexError(f"coefficient index {ell} outside 1..{self.L}")
        return self.coeffs[ell - 1]

    def bracket(self, n: int, order: int | None = None) -> Fraction:
        """The exact bracketed sum ``1 + sum_{l<=order} c_l / n**l``."""
        if order is None:
            order = self.L
        if order > self.L:
            raise ValueError(f"order {order} exceeds the expansion order {self.L}")
        n = Fraction(n)
        return 1 + sum((self.coeffs[ell - 1] / n**ell for ell in range(1, order + 1)), Fraction(0))


def asymptotic_coefficients(L: int, K: int | None = None) -> AsymptoticExpansion:
    """Exact coefficients ``c_1 .. c_L`` of the expansion in ``1/n``.

    ``K`` defaults to ``max(2L, 4)``; any ``K >= L + 1`` gives the same result.
    """
    if L < 1:
        raise ValueError(f"order must be at least 1, got {L}")
    if K is None:
        K = max(2 * L, 4)
    table = b_coefficients(K, 2 * L)
    coeffs = tuple(
        sum(
            (table[k, ell] * double_factorial(2 * k - 1) for k in range(ell + 1, 2 * ell + 1)),
            Fraction(0),
        )
        for ell in range(1, L + 1)
    )
    return AsymptoticExpansion(L, coeffs)


def asympt_eval(
    n: int,
    L: int,
    precision: int = 128,
    expansion: AsymptoticExpansion | None = None,
) -> HighFloat:
    """Evaluate the truncated expansion at ``n`` to ``precision`` bits."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if L < 0:
        raise ValueError(f"order must be nonnegative, got {L}")
    if L == 0:
        bracket = Fraction(1)
    else:
        if expansion is None or expansion.L < L:
            expansion = asymptotic_coefficients(L)
        bracket = expansion.bracket(n, L)
    with mpmath.workprec(precision + 32):
        value = mpmath.sqrt(3 * mpmath.pi / (2 * n)) * to_mpf(bracket)
    with mpmath.workprec(precision):
        return HighFloat(+value, precision)
