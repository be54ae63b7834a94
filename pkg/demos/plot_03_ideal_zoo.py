"""
The ideals of Z_4 seen through parity
=====================================

The coarse probe admits more approximate ideals than the classical ring has,
and it separates notions that coincide classically: the zero ideal below is
1-absorbing primary without being primary.
"""

from approxring.harness import enumerate_ideals, fixture
from approxring.ideals import classify_ideal, quotient

z4p = fixture("F-Z4p")
print(f"{'W':>14s}  prime primary semi  1-abs radical")
for W in enumerate_ideals(z4p):
    rep = classify_ideal(z4p, W)
    v = rep.verdicts()
    print(f"{str(sorted(W)):>14s}  {v['prime']!s:5s} {v['primary']!s:7s} {v['semi_primary']!s:5s} "
          f"{v['one_absorbing']!s:5s} {sorted(rep.radical_members)}")

# %%
# Witnesses are the first violating pair in scan order.
rep = classify_ideal(z4p, {0})
print("W={0} prime witness", rep.witnesses["prime"], "primary witness", rep.witnesses["primary"])

# %%
# Quotients: Z_8 by {0, 4} has four cosets and 2+W squares to zero.
z8 = fixture("F-Z8i")
q = quotient(z8, {0, 4})
print("cosets", [sorted(c) for c in q.cosets])
for k in q.zero_divisors():
    r = q.representatives[k]
    print(f"{r}+W is a zero divisor, nilpotent of index {q.nilpotency_index(r)}")
