"""The explicit constants: contour integral, coefficient bound, error budget."""

# %%
import math

from sincpow import bounds, contour_mean

M = contour_mean(3)
print("int_0^{2pi} |log(sin z/z)| dtheta on |z| = 3:", M.to_decimal(10))
print("M / (2 pi 3) =", float(M) / (2 * math.pi * 3))

# %%
# |a_k| < 0.517 * 3^-k fails for a_2 = -1/6, holds from k = 4 on.
print(bounds.coeff_bound_check(8).detail["per_k"])
print(bounds.coeff_bound_check(60, k_min=4).status)

# %%
print(bounds.remainder_grid_check().detail)
print(bounds.tail_lemma_check(range(3, 8)).detail)

# %%
for n in (400, 1000, 2000):
    b = bounds.error_budget(n)
    print(n, b.taylor_tail.to_decimal(4), b.extension_tail.to_decimal(4),
          b.residual_terms.to_decimal(4), b.residual_ok, b.extension_ok)
