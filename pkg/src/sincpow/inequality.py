"""Exact check of ``2**(1-n) n C(n-1, (n-1)//2) > (2/pi * I(n))**-1``.

Since ``I(n) = r(n) pi`` the right-hand side is the rational ``1 / (2 r(n))``,
so both sides are compared as fractions.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import binomial, exact_sinc_integral

__all__ = ["Relation", "Verdict", "schneider_check", "schneider_scan", "schneider_sides"]


class Relation(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class Verdict:
    n: int
    lhs: Fraction
    rhs: Fraction
    relation: Relation


def schneider_sides(n: int) -> tuple[Fraction, Fraction]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lhs = Fraction(n * binomial(n - 1, (n - 1) // 2), 1 << (n - 1))
    rhs = 1 / (2 * exact_sinc_integral(n).r)
    return lhs, rhs


def _relation(lhs: Fraction, rhs: Fraction) -> Relation:
    if lhs > rhs:
        return Relation.GT
    if lhs < rhs:
        return Relation.LT
    return Relation.EQ


def schneider_check(n: int) -> Verdict:
    """
    >>> schneider_check(4).relation
    <Relation.EQ: 'EQ'>
    """
    lhs, rhs = schneider_sides(n)
    return Verdict(n, lhs, rhs, _relation(lhs, rhs))


def schneider_scan(n_max: int, threads: int = 1, n_min: int = 1) -> list[Verdict]:
    """Every ``n`` in ``[n_min, n_max]`` where the strict inequality fails."""
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    ns = range(n_min, n_max + 1)
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            verdicts = list(pool.map(schneider_check, ns, chunksize=16))
    else:
        verdicts = map(schneider_check, ns)
    return [v for v in verdicts if v.relation is not Relation.GT]
