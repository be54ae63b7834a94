"""Theorem-falsification suite.

Each check evaluates one claim about approximate ideals on one instance and
returns a :class:`TheoremFinding`: ``CONFIRMED`` when the hypotheses were met
at least once and the conclusion always held, ``COUNTEREXAMPLE`` with the
first violating tuple in scan order, or ``HYPOTHESIS-NOT-MET``.

Ideals inside witnesses are sorted tuples of point indices.  Every
counterexample carries enough to be re-checked by :func:`replay` against a
fresh copy of the instance.

Checks marked universal (``THM-A``, ``THM-I``, ``LEM-F-FWD``, ``RAD-SUP``)
only need negation to be defined.  All others assume the standing setting of
an approximate commutative ring with unity and uniquely located identities,
plus whatever side condition the individual claim states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from ..errors import (
    AmbiguousIdentity,
    ApproxError,
    FeasibilityError,
    MissingInverse,
    NoAdditiveIdentity,
    RadicalNotIdeal,
)
from ..ideals import (
    _ideal_or_witness,
    colon,
    is_approx_ideal,
    is_one_absorbing_primary,
    is_p_primary,
    is_prime,
    is_primary,
    is_semi_primary,
    product_instance,
    product_set,
    quotient,
    radical,
    violates,
)
from ..instance_io import parse_instance, serialize_instance
from ..structures import AlgebraInstance, is_irreducible, locate_identities, non_units
from .fixtures import fixture
from .generate import enumerate_ideals

CONFIRMED = "CONFIRMED"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
HYPOTHESIS_NOT_MET = "HYPOTHESIS-NOT-MET"

CATALOG = (
    "THM-A", "THM-B", "THM-C", "PROP-D", "COR-E", "LEM-F", "THM-G", "PROP-H", "THM-I",
    "PROP-J1", "PROP-J2", "THM-K", "THM-L", "THM-M", "THM-N",
)
UNIVERSAL = ("THM-A", "THM-I", "LEM-F-FWD", "RAD-SUP")
EXPLORATORY = ("CONV-K",)
ALL_THEOREMS = CATALOG + ("LEM-F-FWD", "RAD-SUP") + EXPLORATORY

DEFAULT_PARTNERS = ("F-Z2",)


@dataclass(frozen=True)
class TheoremFinding:
    theorem_id: str
    fingerprint: str
    status: str
    witness: tuple
    strata: dict[str, bool] = field(default_factory=dict)
    instance: AlgebraInstance | None = field(default=None, compare=False, repr=False)


def T(W: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(W))


def strata(inst: AlgebraInstance) -> dict[str, bool]:
    f = inst.flags
    return {
        "op_closed": f.op_closed,
        "associative": inst.associative_on_space,
        "injective_probe": inst.space.is_injective(),
        "upper_closed": f.upper_closed_add and f.upper_closed_mul,
    }


def is_classical(inst: AlgebraInstance) -> bool:
    return inst.space.is_injective() and inst.flags.op_closed


class Context:
    """Per-instance caches shared by all checks."""

    def __init__(self, inst: AlgebraInstance, partners: Sequence[str] = DEFAULT_PARTNERS):
        self.inst = inst
        self.partners = tuple(partners)
        self._cache: dict = {}

    @cached_property
    def ideals(self) -> list[frozenset] | None:
        try:
            return enumerate_ideals(self.inst)
        except (NoAdditiveIdentity, AmbiguousIdentity, FeasibilityError):
            return None

    @cached_property
    def standing(self) -> str | None:
        """Reason the standing hypotheses fail, or None when they hold."""
        return standing_failure(self.inst)

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def prime(self, W) -> bool:
        return self._memo(("prime", W), lambda: is_prime(self.inst, W).holds)

    def primary(self, W) -> bool:
        return self._memo(("primary", W), lambda: is_primary(self.inst, W).holds)

    def one_abs(self, W) -> bool:
        return self._memo(("1abs", W), lambda: is_one_absorbing_primary(self.inst, W).holds)

    def rad(self, W) -> frozenset:
        return self._memo(("rad", W), lambda: radical(self.inst, W))

    def semi(self, W) -> bool:
        def compute():
            try:
                return is_semi_primary(self.inst, W).holds
            except RadicalNotIdeal:
                return False
        return self._memo(("semi", W), compute)

    def primes(self) -> list[frozenset]:
        return [P for P in self.ideals if self.prime(P)]

    def pairs(self):
        ids = self.ideals
        for i in range(len(ids)):
            for j in range(i, len(ids)):
                yield ids[i], ids[j]


def standing_failure(inst: AlgebraInstance) -> str | None:
    f = inst.flags
    if not f.ring:
        return "not an approximate ring"
    if not f.commutative:
        return "not commutative"
    if not f.has_unity:
        return "no unity"
    try:
        locate_identities(inst)
    except ApproxError as exc:
        return f"identities: {exc}"
    return None


def semi_implies_primary(ctx: Context) -> frozenset | None:
    """First ideal that is semi-primary but not primary, or None if the property holds."""
    for O in ctx.ideals:
        if ctx.semi(O) and not ctx.primary(O):
            return O
    return None


class _Outcome(Exception):
    def __init__(self, witness):
        self.witness = witness


def _ce(*witness):
    raise _Outcome(tuple(witness))


# Each check returns True (hypotheses met), False (never met) or raises _Outcome.
# Each verifier returns True when the witness re-demonstrates the violation.


def _needs_ideals(ctx):
    if ctx.ideals is None:
        return "negation undefined"
    return None


def _needs_standing(ctx):
    return ctx.standing or _needs_ideals(ctx)


def _needs_upper_closed(ctx):
    reason = _needs_standing(ctx)
    if reason:
        return reason
    f = ctx.inst.flags
    if not (f.upper_closed_add and f.upper_closed_mul):
        return "upper approximation of the carrier not closed under both tables"
    return None


def check_thm_a(ctx):
    met = False
    for W in ctx.ideals:
        if ctx.prime(W):
            met = True
            if not ctx.primary(W):
                _ce(T(W))
    return met


def verify_thm_a(inst, w, partners):
    W = frozenset(w[0])
    return bool(is_approx_ideal(inst, W)) and bool(is_prime(inst, W)) and not is_primary(inst, W)


def check_thm_b(ctx):
    inst, met = ctx.inst, False
    for W in ctx.ideals:
        if W == inst.carrier or not ctx.primary(W):
            continue
        q = quotient(inst, W, "descriptive")
        if not q.well_defined:
            continue
        met = True
        for s in inst.elements:
            if q.is_zero(s):
                continue
            l = q.zero_divisor_partner(s)
            if l is not None and q.nilpotency_index(s) is None:
                _ce(T(W), s, l)
    return met


def verify_thm_b(inst, w, partners):
    W, s, l = frozenset(w[0]), w[1], w[2]
    if W == inst.carrier or not is_primary(inst, W):
        return False
    q = quotient(inst, W, "descriptive")
    return (q.well_defined and not q.is_zero(s) and not q.is_zero(l)
            and q.is_zero(inst.mul[s][l]) and q.nilpotency_index(s) is None)


def check_thm_c(ctx):
    for W in ctx.ideals:
        v = _ideal_or_witness(ctx.inst, ctx.rad(W))
        if not v:
            _ce(T(W)) if v.witness is None else _ce(T(W), *v.witness)
    return bool(ctx.ideals)


def verify_thm_c(inst, w, partners):
    W = frozenset(w[0])
    return bool(is_approx_ideal(inst, W)) and violates(inst, radical(inst, W), "ideal", w[1:])


def check_prop_d(ctx):
    inst, met = ctx.inst, False
    primes = ctx.primes()
    for W in ctx.ideals:
        if not ctx.primary(W):
            continue
        met = True
        r = ctx.rad(W)
        v = _ideal_or_witness(inst, r)
        if not v:
            _ce(T(W), "not-ideal", *v.witness)
        v = is_prime(inst, r)
        if not v:
            _ce(T(W), "not-prime", *v.witness)
        for P in primes:
            if W <= P and not r <= P:
                _ce(T(W), "not-smallest", T(P))
    return met


def verify_prop_d(inst, w, partners):
    W, kind = frozenset(w[0]), w[1]
    if not is_primary(inst, W):
        return False
    r = radical(inst, W)
    if kind == "not-ideal":
        return violates(inst, r, "ideal", w[2:])
    if kind == "not-prime":
        return bool(is_approx_ideal(inst, r)) and violates(inst, r, "prime", w[2:])
    if kind == "not-smallest":
        P = frozenset(w[2])
        return bool(is_prime(inst, P)) and W <= P and not r <= P
    return False


def check_cor_e(ctx):
    met = False
    for W in ctx.ideals:
        if ctx.prime(W):
            met = True
            extra = ctx.rad(W) - W
            if extra:
                _ce(T(W), min(extra))
    return met


def verify_cor_e(inst, w, partners):
    W, s = frozenset(w[0]), w[1]
    return bool(is_prime(inst, W)) and s in radical(inst, W) and s not in W


def _lem_f(ctx, forward_only):
    for W1, W2 in ctx.pairs():
        W = W1 & W2
        r = ctx.rad(W) if W else frozenset()
        both = ctx.rad(W1) & ctx.rad(W2)
        fwd = r - both
        if fwd:
            _ce(T(W1), T(W2), min(fwd), "forward")
        if not forward_only and both - r:
            _ce(T(W1), T(W2), min(both - r), "reverse")
    return bool(ctx.ideals)


def check_lem_f(ctx):
    return _lem_f(ctx, False)


def check_lem_f_fwd(ctx):
    return _lem_f(ctx, True)


def verify_lem_f(inst, w, partners):
    W1, W2, s, direction = frozenset(w[0]), frozenset(w[1]), w[2], w[3]
    if not (is_approx_ideal(inst, W1) and is_approx_ideal(inst, W2)):
        return False
    r = radical(inst, W1 & W2)
    both = radical(inst, W1) & radical(inst, W2)
    return (s in r and s not in both) if direction == "forward" else (s in both and s not in r)


def check_rad_sup(ctx):
    for W in ctx.ideals:
        missing = W - ctx.rad(W)
        if missing:
            _ce(T(W), min(missing))
    return bool(ctx.ideals)


def verify_rad_sup(inst, w, partners):
    W = frozenset(w[0])
    return w[1] in W and w[1] not in radical(inst, W)


def check_thm_g(ctx):
    inst, met = ctx.inst, False
    up = inst.upper_approx
    for P in ctx.primes():
        family = [W for W in ctx.ideals if is_p_primary(inst, W, P)]
        for i, W1 in enumerate(family):
            for W2 in family[i:]:
                W = W1 & W2
                if up(W) != up(W1) & up(W2):
                    continue
                met = True
                if not W or not _ideal_or_witness(inst, W) or not is_p_primary(inst, W, P):
                    _ce(T(P), T(W1), T(W2))
    return met


def verify_thm_g(inst, w, partners):
    P, W1, W2 = (frozenset(x) for x in w)
    up = inst.upper_approx
    if not (is_prime(inst, P) and is_p_primary(inst, W1, P) and is_p_primary(inst, W2, P)):
        return False
    W = W1 & W2
    if up(W) != up(W1) & up(W2):
        return False
    return not W or not _ideal_or_witness(inst, W) or not is_p_primary(inst, W, P)


def check_prop_h(ctx):
    inst = ctx.inst
    for W in ctx.ideals:
        for s in inst.elements:
            c = colon(inst, W, s)
            if not c:
                _ce(T(W), s, "empty")
            v = _ideal_or_witness(inst, c)
            if not v:
                _ce(T(W), s, *v.witness)
    return bool(ctx.ideals)


def verify_prop_h(inst, w, partners):
    W, s = frozenset(w[0]), w[1]
    if not is_approx_ideal(inst, W):
        return False
    c = colon(inst, W, s)
    if w[2] == "empty":
        return not c
    return bool(c) and violates(inst, c, "ideal", w[2:])


def check_thm_i(ctx):
    inst = ctx.inst
    for W1, W2 in ctx.pairs():
        for s in inst.elements:
            if colon(inst, W1 & W2, s) != colon(inst, W1, s) & colon(inst, W2, s):
                _ce(T(W1), T(W2), s)
    return bool(ctx.ideals)


def verify_thm_i(inst, w, partners):
    W1, W2, s = frozenset(w[0]), frozenset(w[1]), w[2]
    return colon(inst, W1 & W2, s) != colon(inst, W1, s) & colon(inst, W2, s)


def _quotient_instance(inst, O):
    q = quotient(inst, O, "strict")
    if not q.well_defined:
        return q, None
    qi = q.as_instance()
    if standing_failure(qi) is not None:
        return q, None
    return q, qi


def check_prop_j1(ctx):
    if semi_implies_primary(ctx) is not None:
        return False
    inst, met = ctx.inst, False
    for O in ctx.ideals:
        if O == inst.carrier:
            continue
        q, qi = _quotient_instance(inst, O)
        if qi is None:
            continue
        met = True
        sub = Context(qi)
        if sub.ideals is None:
            continue
        bad = semi_implies_primary(sub)
        if bad is not None:
            _ce(T(O), tuple(q.representatives[k] for k in sorted(bad)))
    return met


def verify_prop_j1(inst, w, partners):
    O, reps = frozenset(w[0]), w[1]
    if semi_implies_primary(Context(inst)) is not None or O == inst.carrier:
        return False
    q, qi = _quotient_instance(inst, O)
    if qi is None:
        return False
    I = frozenset(q.class_of(r) for r in reps)
    if not is_approx_ideal(qi, I):
        return False
    try:
        semi = is_semi_primary(qi, I).holds
    except RadicalNotIdeal:
        semi = False
    return semi and not is_primary(qi, I)


def _r_primary(inst, Q):
    """Q is r(Q)-primary: primary with a radical that is a prime ideal."""
    r = radical(inst, Q)
    return bool(is_primary(inst, Q)) and bool(_ideal_or_witness(inst, r)) and bool(is_prime(inst, r))


def check_prop_j2(ctx):
    if semi_implies_primary(ctx) is not None:
        return False
    inst, met = ctx.inst, False
    for Q in ctx.ideals:
        if not _r_primary(inst, Q):
            continue
        r = ctx.rad(Q)
        for W in ctx.ideals:
            if Q <= W <= r:
                met = True
                if not is_p_primary(inst, W, r):
                    _ce(T(Q), T(W))
    return met


def verify_prop_j2(inst, w, partners):
    Q, W = frozenset(w[0]), frozenset(w[1])
    if semi_implies_primary(Context(inst)) is not None or not _r_primary(inst, Q):
        return False
    r = radical(inst, Q)
    return bool(is_approx_ideal(inst, W)) and Q <= W <= r and not is_p_primary(inst, W, r)


def check_thm_k(ctx):
    met = False
    for Q in ctx.ideals:
        if ctx.primary(Q):
            met = True
            v = is_one_absorbing_primary(ctx.inst, Q)
            if not v:
                _ce(T(Q), *v.witness)
    return met


def verify_thm_k(inst, w, partners):
    Q = frozenset(w[0])
    return bool(is_primary(inst, Q)) and violates(inst, Q, "one_absorbing", w[1:])


def check_conv_k(ctx):
    met = False
    for Q in ctx.ideals:
        if ctx.one_abs(Q):
            met = True
            v = is_primary(ctx.inst, Q)
            if not v:
                _ce(T(Q), *v.witness)
    return met


def verify_conv_k(inst, w, partners):
    Q = frozenset(w[0])
    return bool(is_one_absorbing_primary(inst, Q)) and violates(inst, Q, "primary", w[1:])


def check_thm_l(ctx):
    inst, met = ctx.inst, False
    for Q in ctx.ideals:
        if not ctx.one_abs(Q):
            continue
        met = True
        r = ctx.rad(Q)
        v = _ideal_or_witness(inst, r)
        if not v:
            _ce(T(Q), "not-ideal", *v.witness)
        v = is_prime(inst, r)
        if not v:
            _ce(T(Q), "not-prime", *v.witness)
    return met


def verify_thm_l(inst, w, partners):
    Q, kind = frozenset(w[0]), w[1]
    if not is_one_absorbing_primary(inst, Q):
        return False
    r = radical(inst, Q)
    if kind == "not-ideal":
        return violates(inst, r, "ideal", w[2:])
    return bool(is_approx_ideal(inst, r)) and violates(inst, r, "prime", w[2:])


def check_thm_m(ctx):
    inst, met = ctx.inst, False
    nu = non_units(inst)
    M = inst.mul
    for W in ctx.ideals:
        if not ctx.one_abs(W) or ctx.primary(W):
            continue
        met = True
        UW, r = inst.upper_approx(W), ctx.rad(W)
        for a in nu:
            if a in W:
                continue
            for b in nu:
                if M[a][b] in UW and b not in r:
                    v = is_irreducible(inst, a)
                    if not v:
                        _ce(T(W), a, b, *v.witness)
    return met


def verify_thm_m(inst, w, partners):
    W, a, b = frozenset(w[0]), w[1], w[2]
    if not is_one_absorbing_primary(inst, W) or is_primary(inst, W):
        return False
    nu = set(non_units(inst))
    return (a in nu and b in nu and inst.mul[a][b] in inst.upper_approx(W) and a not in W
            and b not in radical(inst, W) and not is_irreducible(inst, a))


def _product_setup(inst, partner_name):
    partner = fixture(partner_name)
    if standing_failure(partner) is not None:
        return None
    try:
        prod = product_instance(inst, partner)
    except FeasibilityError:
        return None
    literal = product_set(partner, inst.upper, partner.upper)
    if prod.upper != literal or standing_failure(prod) is not None:
        return None
    return partner, prod


def _product_primary(prod, M):
    try:
        return bool(is_approx_ideal(prod, M)) and bool(is_primary(prod, M))
    except MissingInverse:
        return False


def check_thm_n(ctx):
    inst, met = ctx.inst, False
    for name in ctx.partners:
        setup = _product_setup(inst, name)
        if setup is None:
            continue
        partner, prod = setup
        for N in ctx.ideals:
            M = product_set(partner, N, partner.carrier)
            if _product_primary(prod, M):
                met = True
                if not ctx.primary(N):
                    _ce(T(N), name)
    return met


def verify_thm_n(inst, w, partners):
    N, name = frozenset(w[0]), w[1]
    setup = _product_setup(inst, name)
    if setup is None:
        return False
    partner, prod = setup
    M = product_set(partner, N, partner.carrier)
    return (bool(is_approx_ideal(inst, N)) and _product_primary(prod, M)
            and not is_primary(inst, N))


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    precondition: Callable
    check: Callable
    verify: Callable
    summary: str


CHECKS = {c.theorem_id: c for c in (
    TheoremCheck("THM-A", _needs_ideals, check_thm_a, verify_thm_a,
                 "prime ideal => primary ideal"),
    TheoremCheck("THM-B", _needs_standing, check_thm_b, verify_thm_b,
                 "W primary => zero divisors of R/W are nilpotent"),
    TheoremCheck("THM-C", _needs_upper_closed, check_thm_c, verify_thm_c,
                 "radical of an ideal is an ideal (upper approximation closed)"),
    TheoremCheck("PROP-D", _needs_standing, check_prop_d, verify_prop_d,
                 "W primary => r(W) is the smallest prime ideal containing W"),
    TheoremCheck("COR-E", _needs_standing, check_cor_e, verify_cor_e,
                 "W prime => r(W) = W"),
    TheoremCheck("LEM-F", _needs_standing, check_lem_f, verify_lem_f,
                 "r(W1 & W2) = r(W1) & r(W2)"),
    TheoremCheck("LEM-F-FWD", _needs_ideals, check_lem_f_fwd, verify_lem_f,
                 "r(W1 & W2) is contained in r(W1) & r(W2)"),
    TheoremCheck("RAD-SUP", _needs_ideals, check_rad_sup, verify_rad_sup,
                 "W is contained in r(W)"),
    TheoremCheck("THM-G", _needs_standing, check_thm_g, verify_thm_g,
                 "intersection of P-primary ideals with matching upper approximation is P-primary"),
    TheoremCheck("PROP-H", _needs_upper_closed, check_prop_h, verify_prop_h,
                 "colon W:s is an ideal (upper approximation closed)"),
    TheoremCheck("THM-I", _needs_ideals, check_thm_i, verify_thm_i,
                 "(W1 & W2):s = (W1:s) & (W2:s)"),
    TheoremCheck("PROP-J1", _needs_standing, check_prop_j1, verify_prop_j1,
                 "semi-primary => primary passes to quotients by proper ideals"),
    TheoremCheck("PROP-J2", _needs_standing, check_prop_j2, verify_prop_j2,
                 "Q <= W <= r(Q), Q r(Q)-primary => W r(Q)-primary"),
    TheoremCheck("THM-K", _needs_standing, check_thm_k, verify_thm_k,
                 "primary => 1-absorbing primary"),
    TheoremCheck("CONV-K", _needs_standing, check_conv_k, verify_conv_k,
                 "exploration: 1-absorbing primary => primary (converse, expected to fail)"),
    TheoremCheck("THM-L", _needs_standing, check_thm_l, verify_thm_l,
                 "Q 1-absorbing primary => r(Q) prime"),
    TheoremCheck("THM-M", _needs_standing, check_thm_m, verify_thm_m,
                 "1-absorbing non-primary W: ab near W, a not in W, b not in r(W) => a irreducible"),
    TheoremCheck("THM-N", _needs_standing, check_thm_n, verify_thm_n,
                 "N x R2 primary in R1 x R2 => N primary in R1"),
)}


def check_theorem(ctx: Context, theorem_id: str) -> TheoremFinding:
    entry = CHECKS[theorem_id]
    inst = ctx.inst
    reason = entry.precondition(ctx)
    if reason:
        status, witness = HYPOTHESIS_NOT_MET, (reason,)
    else:
        try:
            met = entry.check(ctx)
            status, witness = (CONFIRMED, ()) if met else (HYPOTHESIS_NOT_MET, ("no applicable ideals",))
        except _Outcome as out:
            status, witness = COUNTEREXAMPLE, out.witness
    return TheoremFinding(theorem_id, inst.fingerprint, status, witness, strata(inst), inst)


def run_theorem_suite(instances: Iterable[AlgebraInstance], theorems: Sequence[str] | None = None,
                      partners: Sequence[str] = DEFAULT_PARTNERS) -> list[TheoremFinding]:
    """Findings for every instance x theorem, in stream order.

    Instances sharing a fingerprint are evaluated once.
    """
    theorems = tuple(theorems) if theorems is not None else ALL_THEOREMS
    unknown = [t for t in theorems if t not in CHECKS]
    if unknown:
        raise KeyError(f"unknown theorem ids {unknown}")
    seen: dict[str, list[TheoremFinding]] = {}
    out: list[TheoremFinding] = []
    for inst in instances:
        fp = inst.fingerprint
        if fp not in seen:
            ctx = Context(inst, partners)
            seen[fp] = [check_theorem(ctx, t) for t in theorems]
        out.extend(seen[fp])
    return out


def replay(finding: TheoremFinding, partners: Sequence[str] = DEFAULT_PARTNERS) -> bool:
    """Re-check a counterexample on an instance rebuilt from its serialized form."""
    if finding.status != COUNTEREXAMPLE:
        raise ValueError("only counterexamples can be replayed")
    fresh = parse_instance(serialize_instance(finding.instance))
    if fresh.fingerprint != finding.fingerprint:
        return False
    try:
        return bool(CHECKS[finding.theorem_id].verify(fresh, finding.witness, partners))
    except ApproxError:
        return False
