"""Exact values, asymptotic expansion and bound checks for the integral of (sin x / x)**n."""

from .exact_core import (
    ExactValue,
    HighFloat,
    binomial,
    double_factorial,
    exact_sinc_integral,
    fibonacci,
    to_float,
)
from .inequality import Relation, Verdict, schneider_check, schneider_scan
from .quadrature import QuadResult, contour_mean, gaussian_moment, quad_sinc_pow
from .series import (
    AsymptoticExpansion,
    BTable,
    SeriesCoeffs,
    TruncatedSeries,
    asympt_eval,
    asymptotic_coefficients,
    b_coefficients,
    series_log_sinc,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticExpansion",
    "BTable",
    "ExactValue",
    "HighFloat",
    "QuadResult",
    "Relation",
    "SeriesCoeffs",
    "TruncatedSeries",
    "Verdict",
    "asympt_eval",
    "asymptotic_coefficients",
    "b_coefficients",
    "binomial",
    "contour_mean",
    "double_factorial",
    "exact_sinc_integral",
    "fibonacci",
    "gaussian_moment",
    "quad_sinc_pow",
    "schneider_check",
    "schneider_scan",
    "series_log_sinc",
    "to_float",
]
