"""Finite descriptive relator spaces.

A space is a dense range of point indices ``0..n-1`` together with a probe
that assigns every point an integer feature vector.  Two sets are
descriptively near when some feature occurs in both of them; the upper
approximation of a set collects every point whose feature occurs in the set.

Subsets are plain ``frozenset`` objects of point indices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, MismatchedSpace, TooLarge, ValidationError

FeatureVector = tuple[int, ...]
Subset = frozenset[int]

DP_AXIOMS = ("DP.0", "DP.1", "DP.2", "DP.3")
EXHAUSTIVE_BOUND = 6


@dataclass(frozen=True, eq=False)
class DescriptiveSpace:
    probe: tuple[FeatureVector, ...]
    names: tuple[str, ...] | None = None
    _upper: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        probe = tuple(tuple(int(v) for v in f) for f in self.probe)
        object.__setattr__(self, "probe", probe)
        if not probe:
            raise ValidationError("a space needs at least one point")
        arity = len(probe[0])
        for i, f in enumerate(probe):
            if len(f) != arity:
                raise ValidationError(f"point {i} has feature arity {len(f)}, expected {arity}")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(probe):
                raise ValidationError("one name per point required")
            if len(set(names)) != len(names):
                raise ValidationError("point names must be distinct")
            object.__setattr__(self, "names", names)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], Sequence[int] | int], names=None):
        probe = []
        for i in range(n):
            v = fn(i)
            probe.append((v,) if isinstance(v, (int, np.integer)) else tuple(v))
        return cls(tuple(probe), names)

    @property
    def n_points(self) -> int:
        return len(self.probe)

    @property
    def arity(self) -> int:
        return len(self.probe[0])

    @cached_property
    def classes(self) -> tuple[int, ...]:
        """Feature-class id per point, numbered by first occurrence."""
        ids: dict[FeatureVector, int] = {}
        return tuple(ids.setdefault(f, len(ids)) for f in self.probe)

    @cached_property
    def class_members(self) -> tuple[Subset, ...]:
        out: list[set[int]] = [set() for _ in range(max(self.classes) + 1)]
        for i, c in enumerate(self.classes):
            out[c].add(i)
        return tuple(frozenset(s) for s in out)

    @property
    def points(self) -> Subset:
        return frozenset(range(self.n_points))

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else str(i)

    def is_injective(self) -> bool:
        return len(set(self.probe)) == self.n_points

    def is_constant(self) -> bool:
        return len(set(self.probe)) == 1

    def check(self, A: Iterable[int]) -> Subset:
        A = frozenset(A)
        bad = [a for a in A if not (0 <= a < self.n_points)]
        if bad:
            raise MismatchedSpace(f"indices {sorted(bad)} do not belong to a {self.n_points}-point space")
        return A

    def features(self, A: Iterable[int]) -> set[FeatureVector]:
        return {self.probe[a] for a in A}

    def upper_approx(self, N: Iterable[int]) -> Subset:
        N = frozenset(N)
        hit = self._upper.get(N)
        if hit is None:
            self.check(N)
            hit = frozenset().union(*(self.class_members[self.classes[x]] for x in N))
            self._upper[N] = hit
        return hit

    def descriptive_intersection(self, A: Iterable[int], B: Iterable[int]) -> Subset:
        A, B = self.check(A), self.check(B)
        shared = {self.classes[a] for a in A} & {self.classes[b] for b in B}
        return frozenset(s for s in A | B if self.classes[s] in shared)

    def near(self, A: Iterable[int], B: Iterable[int]) -> bool:
        return bool(self.descriptive_intersection(A, B))

    def project(self, coords: Sequence[int]) -> "DescriptiveSpace":
        """Space whose probe keeps only the selected feature coordinates."""
        coords = tuple(coords)
        if not coords or any(not 0 <= c < self.arity for c in coords):
            raise InputError(f"bad coordinate selection {coords} for arity {self.arity}")
        return DescriptiveSpace(tuple(tuple(f[c] for c in coords) for f in self.probe), self.names)

    def relation(self, coords: Sequence[int] | None = None) -> "ProximityRelation":
        """The probe-derived proximity, optionally over a coordinate subset."""
        ref = self if coords is None else self.project(coords)
        return ProximityRelation(self, ref.near, "derived", ref)


@dataclass(frozen=True)
class ProximityRelation:
    """A binary relation on subsets of ``space``.

    ``reference`` is the space whose probe the relation is meant to describe;
    the DP.2 check compares the relation against nearness in that space.
    """

    space: DescriptiveSpace
    predicate: Callable[[Subset, Subset], bool]
    origin: str = "user"
    reference: DescriptiveSpace | None = None

    @classmethod
    def user(cls, space, predicate, reference=None):
        return cls(space, predicate, "user", reference)

    def __call__(self, A, B) -> bool:
        return bool(self.predicate(frozenset(A), frozenset(B)))

    @property
    def reference_space(self) -> DescriptiveSpace:
        return self.reference if self.reference is not None else self.space


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class DPReport:
    results: dict[str, AxiomResult]
    exhaustive: bool
    checked: int

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(a for a in DP_AXIOMS if not self.results[a].passed)

    @property
    def all_passed(self) -> bool:
        return not self.failed


def _mask_set(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def check_dp_axioms(rel: ProximityRelation, exhaustive_bound: int = EXHAUSTIVE_BOUND,
                    samples: int | None = None, seed: int = 0) -> DPReport:
    """Check DP.0-DP.3 for ``rel``.

    Exhaustive over all subset pairs and triples when the space has at most
    ``exhaustive_bound`` points. Larger spaces need ``samples``; otherwise
    ``TooLarge`` is raised.
    """
    n = rel.space.n_points
    if n <= exhaustive_bound:
        return _check_exhaustive(rel)
    if samples is None:
        raise TooLarge(f"{n} points exceeds the exhaustive bound {exhaustive_bound}; pass samples")
    return _check_sampled(rel, samples, seed)


def _check_exhaustive(rel: ProximityRelation) -> DPReport:
    n = rel.space.n_points
    size = 1 << n
    subsets = [frozenset(_mask_set(m)) for m in range(size)]
    near = np.array([[rel(a, b) for b in subsets] for a in subsets], dtype=bool)
    ref = rel.reference_space
    fmask = [0] * size
    for m in range(1, size):
        low = m & -m
        fmask[m] = fmask[m ^ low] | 1 << ref.classes[low.bit_length() - 1]
    desc = np.array([[bool(fa & fb) for fb in fmask] for fa in fmask], dtype=bool)

    def first(mask):
        hits = np.argwhere(mask)
        return tuple(int(v) for v in hits[0]) if len(hits) else None

    def as_sets(idx):
        return tuple(tuple(sorted(subsets[i])) for i in idx)

    results = {}
    k = first(near[:, 0])
    w0 = None if k is None else as_sets((k[0], 0))
    if w0 is None:
        k = first(near[0, :])
        w0 = None if k is None else as_sets((0, k[0]))
    results["DP.0"] = AxiomResult(w0 is None, w0)

    hit = first(near != near.T)
    results["DP.1"] = AxiomResult(hit is None, None if hit is None else as_sets(hit))

    hit = first(near != desc)
    results["DP.2"] = AxiomResult(hit is None, None if hit is None else as_sets(hit))

    union = np.bitwise_or.outer(np.arange(size), np.arange(size))
    lhs = near[:, union]
    rhs = near[:, :, None] | near[:, None, :]
    hit = first(lhs != rhs)
    results["DP.3"] = AxiomResult(hit is None, None if hit is None else as_sets(hit))
    return DPReport(results, True, size * size * size)


def _check_sampled(rel: ProximityRelation, samples: int, seed: int) -> DPReport:
    n = rel.space.n_points
    ref = rel.reference_space
    rng = random.Random(seed)

    def draw():
        return frozenset(i for i in range(n) if rng.random() < 0.5)

    found: dict[str, tuple | None] = {a: None for a in DP_AXIOMS}
    empty = frozenset()
    for _ in range(samples):
        K, S, L = draw(), draw(), draw()
        ks = rel(K, S)
        if found["DP.0"] is None and (rel(K, empty) or rel(empty, K)):
            found["DP.0"] = (tuple(sorted(K)), ())
        if found["DP.1"] is None and ks != rel(S, K):
            found["DP.1"] = (tuple(sorted(K)), tuple(sorted(S)))
        if found["DP.2"] is None and ks != ref.near(K, S):
            found["DP.2"] = (tuple(sorted(K)), tuple(sorted(S)))
        if found["DP.3"] is None and rel(K, S | L) != (ks or rel(K, L)):
            found["DP.3"] = tuple(tuple(sorted(x)) for x in (K, S, L))
    results = {a: AxiomResult(w is None, w) for a, w in found.items()}
    return DPReport(results, False, samples)
