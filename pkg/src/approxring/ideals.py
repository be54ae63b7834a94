"""Approximate ideals and the constructions built on them.

All predicates scan the carrier in ascending order and report the first
violating tuple, so witnesses are reproducible.  Predicates that are only
defined on ideals raise :class:`NotAnIdeal` when handed something else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    EmptyList,
    EmptySet,
    InputError,
    MissingInverse,
    NoUnity,
    NotAnIdeal,
    NotWellDefined,
    RadicalNotIdeal,
    SizeOverflow,
    ValidationError,
)
from .space import DescriptiveSpace, Subset
from .structures import AlgebraInstance, Verdict, neg, non_units

MAX_PRODUCT_POINTS = 256


def _within_carrier(inst: AlgebraInstance, W: Iterable[int]) -> Subset:
    W = frozenset(W)
    if not W <= inst.carrier:
        raise ValidationError(f"{sorted(W - inst.carrier)} lie outside the carrier")
    return W


def is_approx_ideal(inst: AlgebraInstance, Q: Iterable[int]) -> Verdict:
    """Negation-closed subset whose sums and carrier multiples land in its upper approximation."""
    Q = _within_carrier(inst, Q)
    if not Q:
        raise EmptySet("an approximate ideal is non-void")
    key = ("ideal", Q)
    hit = inst._memo.get(key)
    if hit is not None:
        return hit
    elems = sorted(Q)
    UQ = inst.upper_approx(Q)
    A, M = inst.add, inst.mul
    verdict = Verdict(True)
    for a in elems:
        b = neg(inst, a)
        if b not in Q:
            verdict = Verdict(False, ("neg", a, b))
            break
    else:
        for a, b in product(elems, elems):
            if A[a][b] not in UQ:
                verdict = Verdict(False, ("sum", a, b, A[a][b]))
                break
        else:
            for r, a in product(inst.elements, elems):
                if M[r][a] not in UQ:
                    verdict = Verdict(False, ("mul", r, a, M[r][a]))
                    break
    inst._memo[key] = verdict
    return verdict


def _ideal_or_witness(inst, W) -> Verdict:
    try:
        return is_approx_ideal(inst, W)
    except MissingInverse as exc:
        return Verdict(False, ("no-inverse", exc.element))


def _require_ideal(inst: AlgebraInstance, W: Iterable[int]) -> Subset:
    W = frozenset(W)
    if not W:
        raise NotAnIdeal(W, ("empty",))
    v = _ideal_or_witness(inst, _within_carrier(inst, W))
    if not v:
        raise NotAnIdeal(W, v.witness)
    return W


def radical(inst: AlgebraInstance, W: Iterable[int]) -> Subset:
    """Carrier elements having some power ``s^n`` (``n <= n_points``) inside ``W``."""
    W = _within_carrier(inst, W)
    return frozenset(s for s in inst.elements if any(p in W for p in inst.orbit(s)))


def is_prime(inst: AlgebraInstance, W: Iterable[int]) -> Verdict:
    W = _require_ideal(inst, W)
    UW, M = inst.upper_approx(W), inst.mul
    for a in inst.elements:
        if a in W:
            continue
        for b in inst.elements:
            if M[a][b] in UW and b not in W:
                return Verdict(False, (a, b))
    return Verdict(True)


def is_primary(inst: AlgebraInstance, W: Iterable[int]) -> Verdict:
    W = _require_ideal(inst, W)
    UW, M = inst.upper_approx(W), inst.mul
    rad = radical(inst, W)
    for a in inst.elements:
        if a in W:
            continue
        for b in inst.elements:
            if M[a][b] in UW and b not in rad:
                return Verdict(False, (a, b))
    return Verdict(True)


def is_p_primary(inst: AlgebraInstance, W: Iterable[int], P: Iterable[int]) -> Verdict:
    W, P = frozenset(W), frozenset(P)
    v = is_primary(inst, W)
    if not v:
        return Verdict(False, ("not-primary",) + v.witness)
    v = is_prime(inst, P)
    if not v:
        return Verdict(False, ("not-prime",) + v.witness)
    rad = radical(inst, W)
    if rad != P:
        return Verdict(False, ("radical", tuple(sorted(rad))))
    return Verdict(True)


def is_semi_primary(inst: AlgebraInstance, O: Iterable[int]) -> Verdict:
    """Ideal whose radical is an approximate prime ideal.

    The radical is re-validated as an ideal first; if that fails
    :class:`RadicalNotIdeal` is raised with the ideal-check witness.
    """
    O = _require_ideal(inst, O)
    rad = radical(inst, O)
    v = _ideal_or_witness(inst, rad)
    if not v:
        raise RadicalNotIdeal(rad, v.witness)
    return is_prime(inst, rad)


def is_one_absorbing_primary(inst: AlgebraInstance, Q: Iterable[int]) -> Verdict:
    Q = _require_ideal(inst, Q)
    nu = non_units(inst)
    UQ, M = inst.upper_approx(Q), inst.mul
    rad = radical(inst, Q)
    for a, b in product(nu, nu):
        ab = M[a][b]
        if ab in Q:
            continue
        for c in nu:
            if M[ab][c] in UQ and c not in rad:
                return Verdict(False, (a, b, c))
    return Verdict(True)


def colon(inst: AlgebraInstance, W: Iterable[int], s: int) -> Subset:
    W = frozenset(W)
    row = inst.mul[s]
    return frozenset(l for l in inst.elements if row[l] in W)


def intersect_ideals(inst: AlgebraInstance, ideals: Sequence[Iterable[int]]) -> Subset:
    if not ideals:
        raise EmptyList("need at least one ideal")
    out = frozenset(ideals[0])
    for W in ideals[1:]:
        out &= frozenset(W)
    return out


@dataclass(frozen=True)
class ClassificationReport:
    members: Subset
    ideal: bool
    prime: bool | None = None
    primary: bool | None = None
    semi_primary: bool | None = None
    one_absorbing: bool | None = None
    radical_members: Subset = frozenset()
    p_primary_target: Subset | None = None
    witnesses: dict[str, tuple] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def verdicts(self) -> dict[str, bool | None]:
        return {k: getattr(self, k) for k in VERDICTS}


VERDICTS = ("ideal", "prime", "primary", "semi_primary", "one_absorbing")


def classify_ideal(inst: AlgebraInstance, W: Iterable[int]) -> ClassificationReport:
    """Run every ideal predicate on ``W``; dependent verdicts are None when W is not an ideal."""
    W = _within_carrier(inst, W)
    rad = radical(inst, W)
    if not W:
        return ClassificationReport(W, False, radical_members=rad,
                                    witnesses={"ideal": ("empty",)},
                                    notes={"ideal": "empty set"})
    iv = _ideal_or_witness(inst, W)
    if not iv:
        return ClassificationReport(W, False, radical_members=rad,
                                    witnesses={"ideal": iv.witness},
                                    notes={v: "not applicable" for v in VERDICTS[1:]})
    witnesses: dict[str, tuple] = {}
    notes: dict[str, str] = {}
    prime = is_prime(inst, W)
    primary = is_primary(inst, W)
    if prime and not primary:
        raise AssertionError(f"prime but not primary: {sorted(W)}")
    for label, v in (("prime", prime), ("primary", primary)):
        if not v:
            witnesses[label] = v.witness

    semi: bool | None
    rad_prime = False
    try:
        sv = is_semi_primary(inst, W)
        semi = sv.holds
        rad_prime = sv.holds
        if not sv:
            witnesses["semi_primary"] = sv.witness
    except RadicalNotIdeal as exc:
        semi = False
        witnesses["semi_primary"] = ("radical-not-ideal",) + tuple(exc.witness)

    one: bool | None
    try:
        ov = is_one_absorbing_primary(inst, W)
        one = ov.holds
        if not ov:
            witnesses["one_absorbing"] = ov.witness
    except NoUnity:
        one = None
        notes["one_absorbing"] = "no unity, non-units undefined"

    target = rad if primary and rad_prime else None
    return ClassificationReport(W, True, prime.holds, primary.holds, semi, one, rad, target,
                                witnesses, notes)


def violates(inst: AlgebraInstance, W: Iterable[int], predicate: str, witness: Sequence) -> bool:
    """True iff ``witness`` is a genuine counterexample to ``predicate`` for ``W``.

    Re-evaluates the witness directly instead of rerunning the full scan.
    """
    W = frozenset(W)
    C, A, M = inst.carrier, inst.add, inst.mul
    UW = inst.upper_approx(W)
    w = tuple(witness)
    try:
        if predicate == "ideal":
            tag = w[0]
            if tag == "empty":
                return not W
            if tag == "no-inverse":
                try:
                    neg(inst, w[1])
                except MissingInverse:
                    return w[1] in W
                return False
            if tag == "neg":
                return w[1] in W and neg(inst, w[1]) == w[2] and w[2] not in W
            if tag == "sum":
                return w[1] in W and w[2] in W and A[w[1]][w[2]] == w[3] and w[3] not in UW
            if tag == "mul":
                return w[1] in C and w[2] in W and M[w[1]][w[2]] == w[3] and w[3] not in UW
            return False
        if predicate == "prime":
            a, b = w
            return a in C and b in C and M[a][b] in UW and a not in W and b not in W
        if predicate == "primary":
            a, b = w
            return (a in C and b in C and M[a][b] in UW and a not in W
                    and not any(p in W for p in inst.orbit(b)))
        if predicate == "semi_primary":
            rad = radical(inst, W)
            if w and w[0] == "radical-not-ideal":
                return violates(inst, rad, "ideal", w[1:])
            return violates(inst, rad, "prime", w)
        if predicate == "one_absorbing":
            a, b, c = w
            nu = set(non_units(inst))
            return (
                {a, b, c} <= nu and M[M[a][b]][c] in UW and M[a][b] not in W
                and c not in radical(inst, W)
            )
    except (IndexError, ValueError, TypeError):
        return False
    raise InputError(f"unknown predicate {predicate!r}")


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """Cosets of the carrier under ``a ~ b  iff  a + neg(b) in W``.

    Coset tables are filled from representatives; ``None`` marks a product
    that falls in no coset (possible when sums leave the carrier).  Zero
    tests on points use membership in ``W`` (strict) or in its upper
    approximation (descriptive).
    """

    instance: AlgebraInstance
    ideal: Subset
    mode: str
    cosets: tuple[Subset, ...]
    zero_coset: int
    coset_add: tuple[tuple[int | None, ...], ...]
    coset_mul: tuple[tuple[int | None, ...], ...]
    well_defined: bool
    witness: tuple | None
    _index: dict = field(repr=False, default_factory=dict)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(min(k) for k in self.cosets)

    def related(self, a: int, b: int) -> bool:
        return self.instance.add[a][neg(self.instance, b)] in self.ideal

    def class_of(self, x: int) -> int | None:
        if x in self._index:
            return self._index[x]
        hits = [k for k, r in enumerate(self.representatives) if self.related(x, r)]
        return hits[0] if len(hits) == 1 else None

    def is_zero(self, x: int) -> bool:
        if self.mode == "strict":
            return x in self.ideal
        return x in self.instance.upper_approx(self.ideal)

    def zero_cosets(self) -> tuple[int, ...]:
        return tuple(k for k, r in enumerate(self.representatives) if self.is_zero(r))

    def zero_divisor_partner(self, s: int) -> int | None:
        """Least non-zero ``l`` with ``s*l`` zero, or None."""
        row = self.instance.mul[s]
        for l in self.instance.elements:
            if not self.is_zero(l) and self.is_zero(row[l]):
                return l
        return None

    def nilpotency_index(self, s: int) -> int | None:
        for m, p in enumerate(self.instance.orbit(s), start=1):
            if self.is_zero(p):
                return m
        return None

    def zero_divisors(self) -> tuple[int, ...]:
        """Cosets (by index) whose representative is a non-zero zero divisor."""
        return tuple(
            k for k, r in enumerate(self.representatives)
            if not self.is_zero(r) and self.zero_divisor_partner(r) is not None
        )

    def ideal_image(self, I: Iterable[int]) -> frozenset:
        return frozenset(self.class_of(x) for x in I)

    def check(self) -> "QuotientStructure":
        if not self.well_defined:
            raise NotWellDefined(self.witness)
        return self

    def as_instance(self) -> AlgebraInstance:
        """The quotient as an instance with an injective probe over cosets."""
        self.check()
        k = len(self.cosets)
        inst = self.instance
        names = tuple(f"{inst.name_of(r)}+W" for r in self.representatives)
        space = DescriptiveSpace(tuple((i,) for i in range(k)), names)
        return AlgebraInstance(space, self.coset_add, self.coset_mul, frozenset(range(k)),
                               f"{inst.name or inst.fingerprint}/W")


def quotient(inst: AlgebraInstance, W: Iterable[int], mode: str = "descriptive") -> QuotientStructure:
    """Build ``R/W``; a structure that fails well-definedness is returned flagged."""
    if mode not in ("strict", "descriptive"):
        raise InputError(f"unknown quotient mode {mode!r}")
    W = _require_ideal(inst, W)
    elems = inst.elements
    A = inst.add
    negs = {b: neg(inst, b) for b in elems}
    rel = {(a, b): A[a][negs[b]] in W for a in elems for b in elems}

    witness = None
    for a in elems:
        if not rel[a, a]:
            witness = ("reflexive", a)
            break
    if witness is None:
        for a, b in product(elems, elems):
            if rel[a, b] != rel[b, a]:
                witness = ("symmetric", a, b)
                break
    if witness is None:
        for a, b, c in product(elems, elems, elems):
            if rel[a, b] and rel[b, c] and not rel[a, c]:
                witness = ("transitive", a, b, c)
                break

    parent = {a: a for a in elems}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), r in rel.items():
        if r:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set[int]] = {}
    for a in elems:
        groups.setdefault(find(a), set()).add(a)
    cosets = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    index = {a: k for k, g in enumerate(cosets) for a in g}

    q = QuotientStructure(inst, W, mode, cosets, index[min(W)], (), (), True, None, index)
    k = len(cosets)
    tables = {}
    for op in ("add", "mul"):
        t = inst.table(op)
        cells: list[list[int | None]] = [[None] * k for _ in range(k)]
        seen: dict[tuple[int, int], tuple[int, int, int | None]] = {}
        for a, b in product(elems, elems):
            x = t[a][b]
            cx = q.class_of(x)
            if cx is None and witness is None:
                witness = ("unclassified", op, a, b, x)
            key = (index[a], index[b])
            if key not in seen:
                seen[key] = (a, b, cx)
                cells[key[0]][key[1]] = cx
            elif seen[key][2] != cx and witness is None:
                a0, b0, _ = seen[key]
                witness = (op, a0, b0, a, b)
        tables[op] = tuple(tuple(row) for row in cells)

    return QuotientStructure(inst, W, mode, cosets, index[min(W)], tables["add"], tables["mul"],
                             witness is None, witness, index)


def product_instance(inst1: AlgebraInstance, inst2: AlgebraInstance,
                     max_points: int = MAX_PRODUCT_POINTS) -> AlgebraInstance:
    """Componentwise product; point ``(p, q)`` has index ``p * n2 + q``.

    Feature vectors are concatenated, so the upper approximation of a
    product set is the product of the upper approximations.
    """
    n1, n2 = inst1.n_points, inst2.n_points
    if n1 * n2 > max_points:
        raise SizeOverflow(f"product has {n1 * n2} points, limit is {max_points}")
    s1, s2 = inst1.space, inst2.space
    probe = tuple(s1.probe[p] + s2.probe[q] for p in range(n1) for q in range(n2))
    names = tuple(f"{s1.name(p)}.{s2.name(q)}" for p in range(n1) for q in range(n2))

    def combine(t1, t2):
        return tuple(
            tuple(t1[p][r] * n2 + t2[q][s] for r in range(n1) for s in range(n2))
            for p in range(n1) for q in range(n2)
        )

    carrier = frozenset(p * n2 + q for p in inst1.carrier for q in inst2.carrier)
    label = f"{inst1.name or inst1.fingerprint}x{inst2.name or inst2.fingerprint}"
    return AlgebraInstance(DescriptiveSpace(probe, names), combine(inst1.add, inst2.add),
                           combine(inst1.mul, inst2.mul), carrier, label)


def product_set(inst2: AlgebraInstance, A: Iterable[int], B: Iterable[int]) -> Subset:
    """Index set of ``A x B`` inside a product whose second factor is ``inst2``."""
    n2 = inst2.n_points
    return frozenset(p * n2 + q for p in A for q in B)
