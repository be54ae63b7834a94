"""Classical differential oracle.

Textbook ring-theoretic definitions evaluated with array operations over the
carrier, with no reference to feature vectors.  On instances whose probe is
injective and whose tables are closed on the carrier the approximate
predicates must agree with these, witnesses included.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import NotClassical
from ..ideals import VERDICTS, ClassificationReport


class ClassicalRing:
    """Carrier-restricted tables reindexed to 0..m-1."""

    def __init__(self, inst):
        if not inst.space.is_injective():
            raise NotClassical("probe is not injective; upper approximation is not the identity")
        if not inst.flags.op_closed:
            raise NotClassical(f"tables leave the carrier: {inst.flags.witnesses.get('op_closed')}")
        self.inst = inst
        self.elems = np.array(inst.elements)
        pos = np.full(inst.n_points, -1)
        pos[self.elems] = np.arange(len(self.elems))
        sub = np.ix_(self.elems, self.elems)
        self.add = pos[np.array(inst.add)[sub]]
        self.mul = pos[np.array(inst.mul)[sub]]
        m = len(self.elems)
        idx = np.arange(m)
        zeros = [z for z in range(m) if (self.add[z] == idx).all() and (self.add[:, z] == idx).all()]
        ones = [u for u in range(m) if (self.mul[u] == idx).all() and (self.mul[:, u] == idx).all()]
        self.zero = zeros[0] if len(zeros) == 1 else None
        self.one = ones[0] if len(ones) == 1 else None
        # powers[k, s] = s^(k+1), left-normed, k < n_points
        powers = [idx]
        for _ in range(inst.n_points - 1):
            powers.append(self.mul[powers[-1], idx])
        self.powers = np.array(powers)

    def mask(self, W) -> np.ndarray:
        out = np.zeros(len(self.elems), dtype=bool)
        out[np.searchsorted(self.elems, sorted(W))] = True
        return out

    def names(self, *local):
        return tuple(int(self.elems[i]) for i in local)

    def neg(self):
        if self.zero is None:
            return None
        hits = (self.add == self.zero) & (self.add.T == self.zero)
        return np.where(hits.any(axis=1), hits.argmax(axis=1), -1)

    def ideal_witness(self, w: np.ndarray):
        neg = self.neg()
        if neg is None:
            return ("no-identity",)
        for a in np.flatnonzero(w):
            if neg[a] < 0:
                return ("no-inverse",) + self.names(a)
            if not w[neg[a]]:
                return ("neg",) + self.names(a, neg[a])
        sub = w[:, None] & w[None, :] & ~w[self.add]
        if sub.any():
            a, b = np.argwhere(sub)[0]
            return ("sum",) + self.names(a, b, self.add[a, b])
        prod = w[None, :] & ~w[self.mul]
        if prod.any():
            r, a = np.argwhere(prod)[0]
            return ("mul",) + self.names(r, a, self.mul[r, a])
        return None

    def radical(self, w: np.ndarray) -> np.ndarray:
        return w[self.powers].any(axis=0)

    def prime_witness(self, w, target):
        bad = ~w[:, None] & w[self.mul] & ~target[None, :]
        if bad.any():
            return self.names(*np.argwhere(bad)[0])
        return None

    def units(self) -> np.ndarray:
        if self.one is None:
            return None
        return (self.mul == self.one).any(axis=1)

    def one_absorbing_witness(self, w, rad):
        nu = np.flatnonzero(~self.units())
        ab = self.mul[np.ix_(nu, nu)]
        abc = self.mul[ab][:, :, nu]
        bad = ~w[ab][:, :, None] & w[abc] & ~rad[nu][None, None, :]
        if bad.any():
            i, j, k = np.argwhere(bad)[0]
            return self.names(nu[i], nu[j], nu[k])
        return None


def classical_report(ring: ClassicalRing, W) -> ClassificationReport:
    W = frozenset(W)
    w = ring.mask(W)
    rad = ring.radical(w)
    rad_members = frozenset(int(x) for x in ring.elems[rad])
    iw = ring.ideal_witness(w) if W else ("empty",)
    if iw is not None:
        notes = {"ideal": "empty set"} if not W else {v: "not applicable" for v in VERDICTS[1:]}
        return ClassificationReport(W, False, radical_members=rad_members,
                                    witnesses={"ideal": iw}, notes=notes)
    witnesses, notes = {}, {}
    pw = ring.prime_witness(w, w)
    qw = ring.prime_witness(w, rad)
    for label, wit in (("prime", pw), ("primary", qw)):
        if wit is not None:
            witnesses[label] = wit
    rw = ring.ideal_witness(rad)
    if rw is not None:
        semi = False
        witnesses["semi_primary"] = ("radical-not-ideal",) + rw
    else:
        sw = ring.prime_witness(rad, rad)
        semi = sw is None
        if sw is not None:
            witnesses["semi_primary"] = sw
    if ring.one is None:
        one = None
        notes["one_absorbing"] = "no unity, non-units undefined"
    else:
        ow = ring.one_absorbing_witness(w, rad)
        one = ow is None
        if ow is not None:
            witnesses["one_absorbing"] = ow
    target = rad_members if qw is None and semi else None
    return ClassificationReport(W, True, pw is None, qw is None, semi, one, rad_members, target,
                                witnesses, notes)


def classical_ideals(ring: ClassicalRing) -> list[frozenset]:
    """Nonempty subsets passing the textbook ideal test, by size then members."""
    out = []
    elems = [int(x) for x in ring.elems]
    for size in range(1, len(elems) + 1):
        for combo in combinations(elems, size):
            if ring.ideal_witness(ring.mask(combo)) is None:
                out.append(frozenset(combo))
    return out


def classical_oracle(inst, ideals=None) -> dict[frozenset, ClassificationReport]:
    """Classical classification of every ideal (or of the given subsets).

    Raises NotClassical unless the probe is injective and the carrier is closed.
    """
    ring = ClassicalRing(inst)
    subsets = classical_ideals(ring) if ideals is None else [frozenset(W) for W in ideals]
    return {W: classical_report(ring, W) for W in subsets}
