"""2^(1-n) n C(n-1, (n-1)//2) against (2/pi I(n))^(-1), compared exactly."""

# %%
from sincpow import schneider_check, schneider_scan

for n in range(1, 9):
    v = schneider_check(n)
    print(f"n={n}: lhs={v.lhs}  rhs={v.rhs}  {v.relation.value}")

# %%
# Everything that is not a strict ">" up to n = 500.
for v in schneider_scan(500):
    print(v.n, v.relation.value, v.lhs, v.rhs)
