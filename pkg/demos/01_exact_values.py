"""Exact values of the sinc-power integral and a quadrature cross-check."""

# %%
import mpmath

from sincpow import exact_sinc_integral, quad_sinc_pow, to_float

# I(n) = r(n) * pi with r(n) rational; the alternating sum is done in integers.
for n in range(1, 9):
    ev = exact_sinc_integral(n)
    print(f"n={n}:  r = {ev.r}  ->  I = {to_float(ev.r, 64).to_decimal(18)}")

# %%
# The denominators grow like 2^n (n-1)!, the numerators nearly as fast.
r = exact_sinc_integral(100).r
print("digits in numerator / denominator of r(100):", len(str(r.numerator)), len(str(r.denominator)))

# %%
# Numerical quadrature at 256 bits: Gauss-Legendre panels on [k pi, (k+1) pi]
# plus an integration-by-parts tail, with a certified error attached.
for n in (2, 3, 10, 50):
    q = quad_sinc_pow(n, mpmath.mpf("1e-25"))
    exact = to_float(exact_sinc_integral(n).r, 256)
    with mpmath.workprec(256):
        diff = abs(q.value.value - exact.value)
    print(f"n={n:3d}  |quad - exact| = {mpmath.nstr(diff, 3)}  certified <= {q.certified_error.to_decimal(3)}")
