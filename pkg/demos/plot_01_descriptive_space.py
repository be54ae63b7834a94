"""
Descriptive nearness on four points
===================================

Points of Z_4 are described only by their parity.  Sets are near when they
share a description, and the upper approximation of a set collects every
point that looks like one of its members.
"""

from approxring import DescriptiveSpace, check_dp_axioms

# %%
# A space is a probe: one feature vector per point.
space = DescriptiveSpace.from_function(4, lambda i: i % 2)
print("probe:", space.probe)

# %%
# {0} and {2} are disjoint but descriptively near, {0} and {1} are not.
print("{0} vs {2}:", sorted(space.descriptive_intersection({0}, {2})), space.near({0}, {2}))
print("{0} vs {1}:", sorted(space.descriptive_intersection({0}, {1})), space.near({0}, {1}))

# %%
# Upper approximations grow a set to whole feature classes.
for N in ({0}, {1}, {0, 1}, set()):
    print(f"upper({sorted(N)}) = {sorted(space.upper_approx(N))}")

# %%
# The probe-derived relation satisfies the four nearness axioms.  The
# checker walks all 16 x 16 subset pairs (and triples for the union axiom).
report = check_dp_axioms(space.relation())
for axiom, result in report.results.items():
    print(axiom, "pass" if result.passed else f"fail {result.witness}")
