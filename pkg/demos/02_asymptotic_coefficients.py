"""Coefficients of the 1/n expansion from the Taylor series of log(sin x / x)."""

# %%
from fractions import Fraction

import mpmath

from sincpow import asymptotic_coefficients, exact_sinc_integral, series_log_sinc
from sincpow.bounds import PRINTED_COEFFS, compare_printed_coeffs
from sincpow.exact_core import to_mpf

a = series_log_sinc(12)
print("log(sin x/x) =", " + ".join(f"({a[k]}) x^{k}" for k in range(2, 13, 2)), "+ ...")

# %%
# I(n) ~ sqrt(3 pi / (2n)) * (1 + c_1/n + c_2/n^2 + ...)
expansion = asymptotic_coefficients(10)
for ell in range(1, 11):
    print(f"c_{ell:<2d} = {expansion.c(ell)}   ({float(expansion.c(ell)):+.6g})")

# %%
# Orders 1..9 agree with the printed table; order 10 does not.
check = compare_printed_coeffs(expansion)
print(check.status, check.detail["mismatched"])
print("printed c_10 =", PRINTED_COEFFS[9], f"({float(PRINTED_COEFFS[9]):.6g})")

# %%
# Numerical evidence: with the first nine coefficients removed, the exact
# value leaves n^10 * remainder ~ c_10 + c_11/n.
c9 = asymptotic_coefficients(9)
with mpmath.workprec(512):
    for n in (250, 500, 1000, 2000):
        r = exact_sinc_integral(n).r
        rem = to_mpf(r) * mpmath.sqrt(2 * mpmath.pi * n / 3) - to_mpf(c9.bracket(n))
        print(f"n={n:5d}  n^10 * remainder = {mpmath.nstr(rem * mpmath.mpf(n) ** 10, 8)}")
