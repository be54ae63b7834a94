"""
An approximate ring that is not closed
======================================

Take Z_4 with the parity probe and keep only {0, 1, 3}.  The sum 1 + 1 = 2
leaves the carrier, but 2 looks like 0, so every axiom still holds up to
upper approximation.
"""

from approxring.harness import fixture
from approxring.structures import is_integral_domain, locate_identities, units

r013 = fixture("F-R013")
flags = r013.flags
for name, value in flags.as_dict().items():
    print(f"{name:18s} {value}")
print("op_closed witness:", flags.witnesses["op_closed"])

# %%
# Identities are searched in the upper approximation of the carrier.
ids = locate_identities(r013)
print("zero", ids.zero, "one", ids.one, "negatives", ids.neg)
print("units", sorted(units(r013)))

# %%
# Products of {1, 3} stay in {1, 3}, so nothing but 0 annihilates.
print("integral domain:", bool(is_integral_domain(r013)))
