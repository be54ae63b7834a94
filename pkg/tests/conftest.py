import os
import sys

from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from approxring.space import DescriptiveSpace
from approxring.structures import AlgebraInstance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def spaces(draw, max_points=6, alphabet=3, arity=1):
    n = draw(st.integers(1, max_points))
    probe = draw(st.lists(st.tuples(*[st.integers(0, alphabet - 1)] * arity), min_size=n, max_size=n))
    return DescriptiveSpace(tuple(probe))


@st.composite
def subsets(draw, n):
    return frozenset(draw(st.sets(st.integers(0, n - 1))))


@st.composite
def random_instances(draw, max_points=4, alphabet=3):
    """Arbitrary tables on a small space; rarely a ring."""
    space = draw(spaces(max_points, alphabet))
    n = space.n_points
    cell = st.integers(0, n - 1)
    row = st.tuples(*[cell] * n)
    add = draw(st.tuples(*[row] * n))
    mul = draw(st.tuples(*[row] * n))
    carrier = draw(st.sets(cell, min_size=1))
    return AlgebraInstance(space, add, mul, frozenset(carrier))


@st.composite
def zn_instances(draw, max_n=8):
    """Z_n tables with an arbitrary probe and a carrier containing 0, closed under negation."""
    from approxring.harness.fixtures import zn

    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    picks = draw(st.sets(st.integers(1, max(1, n // 2))))
    carrier = {0} | {i % n for i in picks if i < n} | {(n - i) % n for i in picks if i < n}
    return zn(n, lambda i: labels[i], carrier)


@st.composite
def closed_instances(draw, max_points=4):
    """Injective probe, tables that never leave the carrier on carrier inputs."""
    n = draw(st.integers(1, max_points))
    carrier = sorted(draw(st.sets(st.integers(0, n - 1), min_size=1)))
    space = DescriptiveSpace(tuple((i,) for i in range(n)))

    def table():
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                pool = carrier if a in carrier and b in carrier else list(range(n))
                row.append(draw(st.sampled_from(pool)))
            rows.append(tuple(row))
        return tuple(rows)

    return AlgebraInstance(space, table(), table(), frozenset(carrier))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
