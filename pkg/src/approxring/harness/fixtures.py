"""Built-in fixtures: small Z_n rings with chosen probes."""

from __future__ import annotations

from ..ideals import product_instance
from ..space import DescriptiveSpace
from ..structures import AlgebraInstance


def zn(n: int, probe=None, carrier=None, name=None) -> AlgebraInstance:
    """Z_n with modular tables; ``probe`` maps a point to its feature (default: injective)."""
    probe = probe or (lambda i: i)
    space = DescriptiveSpace.from_function(n, probe, tuple(str(i) for i in range(n)))
    return AlgebraInstance.from_functions(
        space, lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, carrier, name
    )


def _parity(i):
    return i % 2


def _build(name: str) -> AlgebraInstance:
    if name == "F-Z2":
        return zn(2, name=name)
    if name == "F-Z4p":
        return zn(4, _parity, name=name)
    if name == "F-Z6i":
        return zn(6, name=name)
    if name == "F-Z8i":
        return zn(8, name=name)
    if name == "F-R013":
        return zn(4, _parity, carrier={0, 1, 3}, name=name)
    if name == "F-Z2xZ2":
        z2 = zn(2, name="F-Z2")
        p = product_instance(z2, z2)
        return AlgebraInstance(p.space, p.add, p.mul, p.carrier, name)
    raise KeyError(name)


FIXTURE_NAMES = ("F-Z2", "F-Z4p", "F-Z6i", "F-Z8i", "F-R013", "F-Z2xZ2")


def fixture(name: str) -> AlgebraInstance:
    """Fresh instance of a built-in fixture (instances carry caches, so none are shared)."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return _build(name)


def all_fixtures() -> list[AlgebraInstance]:
    return [fixture(n) for n in FIXTURE_NAMES]


def with_named_ideals(inst: AlgebraInstance, extra=()) -> AlgebraInstance:
    """Attach every enumerated ideal (plus ``extra`` name/subset pairs) as named subsets."""
    from .generate import enumerate_ideals

    named = []
    for W in enumerate_ideals(inst):
        labels = [inst.name_of(i) for i in sorted(W)]
        sep = "" if all(len(x) == 1 for x in labels) else "_"
        named.append(("W" + sep + sep.join(labels), W))
    named.extend((k, frozenset(v)) for k, v in extra)
    return AlgebraInstance(inst.space, inst.add, inst.mul, inst.carrier, inst.name, tuple(named))


FIXTURE_EXTRAS = {"F-Z6i": (("S01", {0, 1}),)}


def fixture_document_instance(name: str) -> AlgebraInstance:
    return with_named_ideals(fixture(name), FIXTURE_EXTRAS.get(name, ()))
