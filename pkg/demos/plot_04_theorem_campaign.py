"""
Hunting counterexamples
=======================

Run every theorem check over a seeded sweep of Z_n instances with coarsened
probes, then split the findings by stratum.  On injective, closed instances
everything is classical and nothing should break.
"""

from collections import Counter

from approxring.harness import (
    COUNTEREXAMPLE,
    GenParams,
    generate_instances,
    is_classical,
    replay,
    run_theorem_suite,
)

stream = generate_instances(GenParams("modular", (2, 8), samples=500, seed=3))
findings = run_theorem_suite(stream)
print(stream.stats())

# %%
# Counterexamples by theorem and stratum.
tally = Counter(
    (f.theorem_id, "classical" if is_classical(f.instance) else "approximate")
    for f in findings if f.status == COUNTEREXAMPLE
)
for (tid, stratum), count in sorted(tally.items()):
    print(f"{tid:10s} {stratum:12s} {count}")

# %%
# Every counterexample is re-checked on an instance rebuilt from its text.
ce = [f for f in findings if f.status == COUNTEREXAMPLE]
print(f"{sum(map(replay, ce))} of {len(ce)} counterexamples replay")
first = next(f for f in ce if f.theorem_id == "THM-L")
print("first THM-L counterexample:", first.witness)
print(first.instance.space.probe)
