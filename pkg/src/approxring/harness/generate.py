"""Seeded instance streams and ideal enumeration.

Three families:

``exhaustive``
    Every instance with ``n_points <= 3``.  Probes are enumerated up to a
    renaming of feature values (only feature equality matters).  In ``full``
    mode every pair of tables is produced; ``pointed`` mode keeps only
    commutative tables where point 0 is additively neutral and
    multiplicatively absorbing.  ``auto`` uses ``full`` up to two points and
    ``pointed`` at three, where the full table space has ~4e8 pairs.
``modular``
    Z_n with the probe ``i mod k`` for a divisor ``k`` of ``n`` and carriers
    drawn among subgroups and negation-closed subsets containing 0.
``random``
    Rejection sampling of tables that pass the ring, commutativity and unity
    flags.  Half the draws are fully random tables on at most three points,
    the rest embed Z_a x Z_b on a random carrier and fill the remaining cells
    at random.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from ..errors import (
    AmbiguousIdentity,
    InfeasibleParams,
    InputError,
    MissingInverse,
    NoAdditiveIdentity,
    TooLarge,
)
from ..ideals import is_approx_ideal
from ..space import DescriptiveSpace, Subset
from ..structures import AlgebraInstance, locate_identities

EXHAUSTIVE_MAX = 3
IDEAL_SCAN_LIMIT = 16
FAMILIES = ("exhaustive", "modular", "random")


@dataclass(frozen=True)
class GenParams:
    family: str = "modular"
    n_points: tuple[int, int] = (2, 6)
    alphabet: int = 2
    samples: int = 100
    seed: int = 0
    exhaustive_mode: str = "auto"

    def __post_init__(self):
        n = self.n_points
        if isinstance(n, int):
            n = (1 if self.family == "exhaustive" else 2, n)
        n = (int(n[0]), int(n[1]))
        object.__setattr__(self, "n_points", n)
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if not 1 <= n[0] <= n[1]:
            raise InputError(f"bad n_points range {n}")
        if self.alphabet < 1 or self.samples < 0:
            raise InputError("alphabet must be >= 1 and samples >= 0")
        if self.exhaustive_mode not in ("auto", "full", "pointed"):
            raise InputError(f"unknown exhaustive mode {self.exhaustive_mode!r}")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")


class InstanceStream:
    """Iterable over generated instances; counts attempts for rejection sampling."""

    def __init__(self, params: GenParams):
        self.params = params
        self.attempts = 0
        self.accepted = 0
        if params.family == "exhaustive" and params.n_points[1] > EXHAUSTIVE_MAX:
            raise InfeasibleParams(
                f"exhaustive family supports at most {EXHAUSTIVE_MAX} points, got {params.n_points[1]}"
            )

    def __iter__(self) -> Iterator[AlgebraInstance]:
        gen = {"exhaustive": self._exhaustive, "modular": self._modular, "random": self._random}
        for inst in gen[self.params.family]():
            self.accepted += 1
            yield inst

    def stats(self) -> dict[str, int]:
        return {"attempts": self.attempts, "accepted": self.accepted}

    def _exhaustive(self):
        p = self.params
        for n in range(p.n_points[0], p.n_points[1] + 1):
            mode = p.exhaustive_mode
            if mode == "auto":
                mode = "full" if n <= 2 else "pointed"
            names = tuple(str(i) for i in range(n))
            masks = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1, 1 << n)]
            for probe in canonical_probes(n, p.alphabet):
                space = DescriptiveSpace(tuple((v,) for v in probe), names)
                for add in _tables(n, mode, "add"):
                    for mul in _tables(n, mode, "mul"):
                        for carrier in masks:
                            self.attempts += 1
                            yield AlgebraInstance(space, add, mul, carrier)

    def _modular(self):
        p = self.params
        rng = random.Random(p.seed)
        lo, hi = p.n_points
        base = [(n, k) for n in range(lo, hi + 1) for k in divisors(n)]
        for i in range(p.samples):
            self.attempts += 1
            if i < len(base):
                n, k = base[i]
                carrier = frozenset(range(n))
            else:
                n = rng.randint(lo, hi)
                k = rng.choice(divisors(n))
                carrier = _modular_carrier(rng, n)
            yield modular_instance(n, k, carrier)

    def _random(self):
        p = self.params
        rng = random.Random(p.seed)
        budget = max(1, p.samples) * 500
        produced = 0
        while produced < p.samples:
            if self.attempts >= budget:
                raise InfeasibleParams(
                    f"rejection sampling accepted {produced} of {p.samples} after {budget} draws"
                )
            self.attempts += 1
            inst = _random_candidate(rng, p)
            f = inst.flags
            if not (f.ring and f.commutative and f.has_unity):
                continue
            try:
                locate_identities(inst)
            except (AmbiguousIdentity, MissingInverse, NoAdditiveIdentity):
                continue
            produced += 1
            yield inst


def generate_instances(params: GenParams) -> InstanceStream:
    return InstanceStream(params)


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def modular_instance(n: int, k: int, carrier=None) -> AlgebraInstance:
    names = tuple(str(i) for i in range(n))
    space = DescriptiveSpace(tuple((i % k,) for i in range(n)), names)
    return AlgebraInstance.from_functions(
        space, lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, carrier
    )


def _modular_carrier(rng: random.Random, n: int) -> frozenset[int]:
    kind = rng.randrange(3)
    if kind == 0:
        return frozenset(range(n))
    if kind == 1:
        d = rng.choice(divisors(n))
        return frozenset(range(0, n, d))
    out = {0}
    for i in range(1, n // 2 + 1):
        if rng.random() < 0.5:
            out |= {i, (n - i) % n}
    return frozenset(out)


def canonical_probes(n: int, alphabet: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` using at most ``alphabet`` values."""

    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(min(top + 2, alphabet)):
            yield from grow(prefix + [v], max(top, v))

    yield from grow([], -1)


def _tables(n: int, mode: str, op: str):
    if mode == "full":
        for cells in product(range(n), repeat=n * n):
            yield tuple(cells[i * n:(i + 1) * n] for i in range(n))
        return
    free = [(i, j) for i in range(1, n) for j in range(i, n)]
    for vals in product(range(n), repeat=len(free)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            if op == "add":
                t[0][i] = t[i][0] = i
        for (i, j), v in zip(free, vals):
            t[i][j] = t[j][i] = v
        yield tuple(tuple(r) for r in t)


def exhaustive_count(n: int, alphabet: int, mode: str) -> int:
    """Closed-form size of the exhaustive stream at exactly ``n`` points."""
    from math import comb

    def stirling2(n, k):
        return sum((-1) ** i * comb(k, i) * (k - i) ** n for i in range(k + 1)) // _fact(k)

    probes = sum(stirling2(n, k) for k in range(1, min(n, alphabet) + 1))
    if mode == "full":
        tables = n ** (n * n)
    else:
        tables = n ** (n * (n - 1) // 2)
    return probes * tables * tables * (2**n - 1)


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _random_candidate(rng: random.Random, p: GenParams) -> AlgebraInstance:
    lo, hi = p.n_points
    n = rng.randint(lo, hi)
    probe = tuple((rng.randrange(p.alphabet),) for _ in range(n))
    names = tuple(str(i) for i in range(n))
    space = DescriptiveSpace(probe, names)
    if n <= 3 and rng.random() < 0.5:
        add = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
        mul = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
        carrier = frozenset(i for i in range(n) if rng.random() < 0.5) or frozenset({0})
        return AlgebraInstance(space, add, mul, carrier)

    m = rng.randint(1, n)
    shapes = [(a, m // a) for a in divisors(m) if a <= m // a]
    a, b = rng.choice(shapes)
    pts = rng.sample(range(n), m)
    # element (x, y) of Z_a x Z_b sits at pts[x * b + y]
    where = {pts[x * b + y]: (x, y) for x in range(a) for y in range(b)}

    def cell(i, j, op):
        if i in where and j in where:
            (x1, y1), (x2, y2) = where[i], where[j]
            if op == "add":
                x, y = (x1 + x2) % a, (y1 + y2) % b
            else:
                x, y = (x1 * x2) % a, (y1 * y2) % b
            return pts[x * b + y]
        return rng.randrange(n)

    add = tuple(tuple(cell(i, j, "add") for j in range(n)) for i in range(n))
    mul = tuple(tuple(cell(i, j, "mul") for j in range(n)) for i in range(n))
    return AlgebraInstance(space, add, mul, frozenset(pts))


def enumerate_ideals(inst: AlgebraInstance, limit: int = IDEAL_SCAN_LIMIT) -> list[Subset]:
    """All nonempty approximate ideals, ordered by size then members.

    Subsets containing an element without an additive inverse are skipped.
    Raises ``NoAdditiveIdentity``/``AmbiguousIdentity`` when negation is undefined.
    """
    key = ("ideals",)
    hit = inst._memo.get(key)
    if hit is not None:
        return list(hit)
    elems = inst.elements
    if len(elems) > limit:
        raise TooLarge(f"carrier has {len(elems)} elements, ideal scan limit is {limit}")
    out = []
    for size in range(1, len(elems) + 1):
        for combo in combinations(elems, size):
            try:
                if is_approx_ideal(inst, combo):
                    out.append(frozenset(combo))
            except MissingInverse:
                continue
    inst._memo[key] = tuple(out)
    return out
