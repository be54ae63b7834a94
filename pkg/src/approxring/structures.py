"""Operation tables and the approximate group/ring axioms.

An :class:`AlgebraInstance` is a descriptive space with two total operation
tables on its points and a carrier subset.  The approximate axioms only ask
that results land in the upper approximation of the carrier, so identities
and products may live outside the carrier itself.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    AmbiguousIdentity,
    MissingInverse,
    NoAdditiveIdentity,
    NotARing,
    NoUnity,
    ValidationError,
)
from .space import DescriptiveSpace, Subset

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate; ``witness`` is a counterexample when it fails."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _as_table(rows, n: int, label: str) -> Table:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    if len(table) != n or any(len(row) != n for row in table):
        raise ValidationError(f"{label} table must be {n}x{n}")
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise ValidationError(f"{label}[{i}][{j}] = {v} is not a point index")
    return table


@dataclass(frozen=True, eq=False)
class AlgebraInstance:
    space: DescriptiveSpace
    add: Table
    mul: Table
    carrier: Subset
    name: str | None = None
    named_subsets: tuple[tuple[str, Subset], ...] = ()
    _memo: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        n = self.space.n_points
        object.__setattr__(self, "add", _as_table(self.add, n, "add"))
        object.__setattr__(self, "mul", _as_table(self.mul, n, "mul"))
        carrier = frozenset(int(c) for c in self.carrier)
        if not carrier:
            raise ValidationError("carrier must be nonempty")
        self.space.check(carrier)
        object.__setattr__(self, "carrier", carrier)
        named = tuple((str(k), self.space.check(v)) for k, v in self.named_subsets)
        object.__setattr__(self, "named_subsets", named)

    @classmethod
    def from_functions(cls, space: DescriptiveSpace, add, mul, carrier=None, name=None):
        n = space.n_points
        return cls(
            space,
            tuple(tuple(add(a, b) for b in range(n)) for a in range(n)),
            tuple(tuple(mul(a, b) for b in range(n)) for a in range(n)),
            frozenset(range(n)) if carrier is None else frozenset(carrier),
            name,
        )

    def with_carrier(self, carrier: Iterable[int], name=None) -> "AlgebraInstance":
        return AlgebraInstance(self.space, self.add, self.mul, frozenset(carrier), name)

    @property
    def n_points(self) -> int:
        return self.space.n_points

    @cached_property
    def elements(self) -> tuple[int, ...]:
        """Carrier in ascending order, the canonical scan order."""
        return tuple(sorted(self.carrier))

    @cached_property
    def upper(self) -> Subset:
        return self.space.upper_approx(self.carrier)

    def upper_approx(self, N: Iterable[int]) -> Subset:
        return self.space.upper_approx(N)

    def table(self, op: str) -> Table:
        if op == "add":
            return self.add
        if op == "mul":
            return self.mul
        raise ValueError(f"unknown table {op!r}")

    @cached_property
    def flags(self) -> "StructureFlags":
        return analyze_structure(self)

    @cached_property
    def fingerprint(self) -> str:
        payload = json.dumps(
            [self.space.probe, self.add, self.mul, sorted(self.carrier)], separators=(",", ":")
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    @cached_property
    def associative_on_space(self) -> bool:
        """Both tables associative on every triple of points."""
        r = range(self.n_points)
        for t in (self.add, self.mul):
            for a, b, c in product(r, r, r):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return False
        return True

    def orbit(self, s: int) -> tuple[int, ...]:
        """Left-normed powers ``s^1 .. s^n`` with ``n = n_points``."""
        key = ("orbit", s)
        hit = self._memo.get(key)
        if hit is None:
            out, p = [s], s
            for _ in range(self.n_points - 1):
                p = self.mul[p][s]
                out.append(p)
            hit = self._memo[key] = tuple(out)
        return hit

    def name_of(self, i: int) -> str:
        return self.space.name(i)

    def __repr__(self):
        label = self.name or self.fingerprint
        return f"AlgebraInstance({label}, n_points={self.n_points}, carrier={sorted(self.carrier)})"


@dataclass(frozen=True)
class StructureFlags:
    groupoid_add: bool
    semigroup_add: bool
    group_add: bool
    abelian_add: bool
    groupoid_mul: bool
    semigroup_mul: bool
    distributive: bool
    ring: bool
    commutative: bool
    has_unity: bool
    op_closed: bool
    upper_closed_add: bool
    upper_closed_mul: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    def as_dict(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in FLAG_NAMES}


FLAG_NAMES = (
    "groupoid_add", "semigroup_add", "group_add", "abelian_add", "groupoid_mul",
    "semigroup_mul", "distributive", "ring", "commutative", "has_unity", "op_closed",
    "upper_closed_add", "upper_closed_mul",
)


def _closure(t: Table, elems: Sequence[int], target: Subset):
    for a in elems:
        row = t[a]
        for b in elems:
            if row[b] not in target:
                return (a, b, row[b])
    return None


def _assoc(t: Table, elems: Sequence[int], target: Subset):
    for a, b, c in product(elems, elems, elems):
        left = t[t[a][b]][c]
        if left != t[a][t[b][c]] or left not in target:
            return (a, b, c)
    return None


def _commute(t: Table, elems: Sequence[int]):
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            if t[a][b] != t[b][a]:
                return (a, b)
    return None


def identity_candidates(inst: AlgebraInstance, op: str) -> tuple[int, ...]:
    """Points of the upper approximation acting as two-sided identity on the carrier."""
    key = ("identity", op)
    hit = inst._memo.get(key)
    if hit is None:
        t = inst.table(op)
        hit = tuple(
            e for e in sorted(inst.upper)
            if all(t[a][e] == a and t[e][a] == a for a in inst.elements)
        )
        inst._memo[key] = hit
    return hit


def _inverse_gap(inst: AlgebraInstance, e: int):
    t = inst.add
    for a in inst.elements:
        if not any(t[a][b] == e and t[b][a] == e for b in inst.elements):
            return a
    return None


def analyze_structure(inst: AlgebraInstance) -> StructureFlags:
    """Decide every structure flag by exhaustive scans over the carrier."""
    elems, U = inst.elements, inst.upper
    w: dict[str, tuple] = {}

    def record(flag, witness):
        if witness is not None:
            w[flag] = witness
        return witness is None

    groupoid_add = record("groupoid_add", _closure(inst.add, elems, U))
    semigroup_add = groupoid_add and record("semigroup_add", _assoc(inst.add, elems, U))
    if not groupoid_add:
        w["semigroup_add"] = ("closure",) + w["groupoid_add"]
    elif not semigroup_add:
        w["semigroup_add"] = ("assoc",) + w["semigroup_add"]

    group_add = semigroup_add
    if not semigroup_add:
        w["group_add"] = w["semigroup_add"]
    else:
        cands = identity_candidates(inst, "add")
        if not cands:
            group_add, w["group_add"] = False, ("no-identity",)
        else:
            gaps = [_inverse_gap(inst, e) for e in cands]
            if all(g is not None for g in gaps):
                group_add, w["group_add"] = False, ("no-inverse", gaps[0])

    abelian_add = record("abelian_add", _commute(inst.add, elems))
    groupoid_mul = record("groupoid_mul", _closure(inst.mul, elems, U))
    semigroup_mul = groupoid_mul and record("semigroup_mul", _assoc(inst.mul, elems, U))
    if not groupoid_mul:
        w["semigroup_mul"] = ("closure",) + w["groupoid_mul"]
    elif not semigroup_mul:
        w["semigroup_mul"] = ("assoc",) + w["semigroup_mul"]

    distributive = record("distributive", _distrib(inst, elems, U))

    ring = group_add and abelian_add and semigroup_mul and distributive
    if not ring:
        for part in ("group_add", "abelian_add", "semigroup_mul", "distributive"):
            if part in w:
                w["ring"] = (part,) + w[part]
                break

    commutative = record("commutative", _commute(inst.mul, elems))
    has_unity = bool(identity_candidates(inst, "mul"))
    if not has_unity:
        w["has_unity"] = ("no-unity",)

    closed = _closure(inst.add, elems, inst.carrier)
    if closed is not None:
        w["op_closed"] = ("add",) + closed
    else:
        closed = _closure(inst.mul, elems, inst.carrier)
        if closed is not None:
            w["op_closed"] = ("mul",) + closed
    op_closed = "op_closed" not in w

    upper_elems = tuple(sorted(U))
    upper_closed_add = record("upper_closed_add", _closure(inst.add, upper_elems, U))
    upper_closed_mul = record("upper_closed_mul", _closure(inst.mul, upper_elems, U))

    return StructureFlags(
        groupoid_add, semigroup_add, group_add, abelian_add, groupoid_mul, semigroup_mul,
        distributive, ring, commutative, has_unity, op_closed, upper_closed_add,
        upper_closed_mul, w,
    )


def _distrib(inst: AlgebraInstance, elems, U):
    A, M = inst.add, inst.mul
    for a, b, c in product(elems, elems, elems):
        left = M[a][A[b][c]]
        if left != A[M[a][b]][M[a][c]] or left not in U:
            return ("left", a, b, c)
        right = M[A[a][b]][c]
        if right != A[M[a][c]][M[b][c]] or right not in U:
            return ("right", a, b, c)
    return None


def upper_closed(inst: AlgebraInstance, op: str) -> Verdict:
    """Closure of the carrier's upper approximation under one table."""
    U = inst.upper
    hit = _closure(inst.table(op), tuple(sorted(U)), U)
    return Verdict(hit is None, hit)


@dataclass(frozen=True)
class IdentityInfo:
    zero: int
    one: int | None
    neg: dict[int, int]


def zero(inst: AlgebraInstance) -> int:
    cands = identity_candidates(inst, "add")
    if not cands:
        raise NoAdditiveIdentity("no additive identity in the upper approximation of the carrier")
    if len(cands) > 1:
        raise AmbiguousIdentity("add", cands)
    return cands[0]


def unity(inst: AlgebraInstance) -> int | None:
    cands = identity_candidates(inst, "mul")
    if len(cands) > 1:
        raise AmbiguousIdentity("mul", cands)
    return cands[0] if cands else None


def neg(inst: AlgebraInstance, a: int) -> int:
    """Least carrier element that is a two-sided additive inverse of ``a``."""
    key = ("neg", a)
    hit = inst._memo.get(key)
    if hit is None:
        z, t = zero(inst), inst.add
        for b in inst.elements:
            if t[a][b] == z and t[b][a] == z:
                hit = inst._memo[key] = b
                break
        else:
            raise MissingInverse(a)
    return hit


def locate_identities(inst: AlgebraInstance) -> IdentityInfo:
    z = zero(inst)
    return IdentityInfo(z, unity(inst), {a: neg(inst, a) for a in inst.elements})


def power(inst: AlgebraInstance, s: int, n: int) -> int:
    """Left-normed power ``s^n`` evaluated in the whole space."""
    if n < 1:
        raise ValueError("exponent must be positive")
    if n <= inst.n_points:
        return inst.orbit(s)[n - 1]
    p = s
    for _ in range(n - 1):
        p = inst.mul[p][s]
    return p


def units(inst: AlgebraInstance) -> Subset:
    key = ("units",)
    hit = inst._memo.get(key)
    if hit is None:
        one = unity(inst)
        if one is None:
            raise NoUnity("no multiplicative unity in the upper approximation of the carrier")
        M = inst.mul
        hit = frozenset(
            u for u in inst.elements
            if any(M[u][v] == one and M[v][u] == one for v in inst.elements)
        )
        inst._memo[key] = hit
    return hit


def non_units(inst: AlgebraInstance) -> tuple[int, ...]:
    u = units(inst)
    return tuple(x for x in inst.elements if x not in u)


def nilpotency_index(inst: AlgebraInstance, s: int) -> int | None:
    """Least ``m <= n_points`` with ``s^m`` equal to zero, or None.

    Left-normed powers follow ``p -> p*s``, so the orbit has at most
    ``n_points`` distinct values and all of them occur among the first
    ``n_points`` powers; the bound is therefore complete.
    """
    z = zero(inst)
    U = inst.upper
    for m, p in enumerate(inst.orbit(s), start=1):
        if p == z and p in U:
            return m
    return None


def is_nilpotent(inst: AlgebraInstance, s: int) -> bool:
    return nilpotency_index(inst, s) is not None


def is_irreducible(inst: AlgebraInstance, x: int) -> Verdict:
    u = units(inst)
    if x in u:
        return Verdict(False, ("unit", x))
    M, U = inst.mul, inst.upper
    for y in inst.elements:
        for z in inst.elements:
            if M[y][z] == x and x in U and y not in u and z not in u:
                return Verdict(False, (y, z))
    return Verdict(True)


def is_integral_domain(inst: AlgebraInstance) -> Verdict:
    f = inst.flags
    if not (f.ring and f.commutative):
        raise NotARing("integral domain test needs an approximate commutative ring")
    z, M, U = zero(inst), inst.mul, inst.upper
    for m in inst.elements:
        for n in inst.elements:
            p = M[m][n]
            if p in U and p == z and m != z and n != z:
                return Verdict(False, (m, n))
    return Verdict(True)
