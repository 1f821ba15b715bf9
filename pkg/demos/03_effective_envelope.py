"""Where does the four-term expansion stay within 7.26e-3 / n^5?"""

# %%
from sincpow import bounds

rep = bounds.prop2_envelope(1, 60)
for n in range(1, 21):
    mark = "*" if n in rep.exceptions else " "
    print(f"{mark} n={n:3d}  n^5 |delta| = {rep.residuals[n].to_decimal(6)}")

# %%
print("flagged:", rep.exceptions)
print("excluded in print:", sorted(rep.expected_exceptions))
print("flagged but not excluded:", rep.unexpected)

# %%
# For large n the scaled residual tends to c_5 = 482427/66560000 = 0.0072480...
big = bounds.prop2_envelope(390, 400)
print("n=400:", big.residuals[400].to_decimal(8))
