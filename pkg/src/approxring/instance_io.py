"""Reading and writing instance files.

The format is line oriented; ``#`` starts a comment.  See
``docs/instance-format.md`` for the grammar.  Example::

    name F-Z4p
    points 0 1 2 3
    feature 0 0
    feature 1 1
    feature 2 0
    feature 3 1
    table add
      0 1 2 3
      1 2 3 0
      2 3 0 1
      3 0 1 2
    table mul
      ...
    carrier 0 1 2 3
    ideal W0 0
"""

from __future__ import annotations

from .errors import ParseError, ValidationError
from .space import DescriptiveSpace
from .structures import AlgebraInstance

KEYWORDS = ("name", "points", "feature", "table", "carrier", "ideal")


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError("expected an integer", lineno, tok) from None


def parse_instance(text: str) -> AlgebraInstance:
    """Parse and validate an instance document."""
    lines = list(_tokens(text))
    name = None
    points: list[str] | None = None
    features: dict[str, tuple[int, ...]] = {}
    tables: dict[str, list[list[int]]] = {}
    carrier: list[str] | None = None
    ideals: list[tuple[str, list[str], int]] = []

    i = 0
    while i < len(lines):
        lineno, toks = lines[i]
        i += 1
        kw, args = toks[0], toks[1:]
        if kw not in KEYWORDS:
            raise ParseError(f"unknown statement (expected one of {', '.join(KEYWORDS)})", lineno, kw)
        if kw != "name" and kw != "points" and points is None:
            raise ParseError("'points' must come before this statement", lineno, kw)
        if kw == "name":
            if len(args) != 1:
                raise ParseError("'name' takes exactly one token", lineno, kw)
            if name is not None:
                raise ParseError("duplicate 'name'", lineno, kw)
            name = args[0]
        elif kw == "points":
            if points is not None:
                raise ParseError("duplicate 'points'", lineno, kw)
            if not args:
                raise ParseError("'points' needs at least one name", lineno, kw)
            if len(set(args)) != len(args):
                dup = next(a for a in args if args.count(a) > 1)
                raise ParseError("duplicate point name", lineno, dup)
            if any(a in KEYWORDS for a in args):
                bad = next(a for a in args if a in KEYWORDS)
                raise ParseError("point names may not be keywords", lineno, bad)
            points = args
        elif kw == "feature":
            if len(args) < 2:
                raise ParseError("'feature' needs a point name and at least one integer", lineno, kw)
            if args[0] not in points:
                raise ParseError("undeclared point", lineno, args[0])
            if args[0] in features:
                raise ParseError("duplicate feature for point", lineno, args[0])
            features[args[0]] = tuple(_int(t, lineno) for t in args[1:])
        elif kw == "table":
            if len(args) != 1 or args[0] not in ("add", "mul"):
                raise ParseError("expected 'table add' or 'table mul'",
                                 lineno, args[0] if args else kw)
            if args[0] in tables:
                raise ParseError("duplicate table", lineno, args[0])
            n = len(points)
            rows = []
            for _ in range(n):
                if i >= len(lines):
                    raise ParseError(f"table {args[0]} has {len(rows)} rows, expected {n}", lineno, args[0])
                rlineno, rtoks = lines[i]
                if rtoks[0] in KEYWORDS:
                    raise ParseError(f"table {args[0]} has {len(rows)} rows, expected {n}",
                                     rlineno, rtoks[0])
                i += 1
                if len(rtoks) != n:
                    tok = rtoks[n] if len(rtoks) > n else rtoks[-1]
                    raise ParseError(f"table row has {len(rtoks)} entries, expected {n}", rlineno, tok)
                row = [_int(t, rlineno) for t in rtoks]
                for t, v in zip(rtoks, row):
                    if not 0 <= v < n:
                        raise ParseError(f"entry out of range 0..{n - 1}", rlineno, t)
                rows.append(row)
            tables[args[0]] = rows
        elif kw == "carrier":
            if carrier is not None:
                raise ParseError("duplicate 'carrier'", lineno, kw)
            carrier = _names(args, points, lineno)
        elif kw == "ideal":
            if len(args) < 2:
                raise ParseError("'ideal' needs a name and at least one member", lineno, kw)
            if any(args[0] == other for other, _, _ in ideals):
                raise ParseError("duplicate ideal name", lineno, args[0])
            ideals.append((args[0], _names(args[1:], points, lineno), lineno))

    if points is None:
        raise ValidationError("document declares no points")
    missing = [p for p in points if p not in features]
    if missing:
        raise ValidationError(f"no feature declared for point(s) {', '.join(missing)}")
    arities = {len(f) for f in features.values()}
    if len(arities) > 1:
        first = len(features[points[0]])
        bad = next(p for p in points if len(features[p]) != first)
        raise ValidationError(
            f"feature arity mismatch: point {bad} has {len(features[bad])}, expected {first}"
        )
    for t in ("add", "mul"):
        if t not in tables:
            raise ValidationError(f"missing 'table {t}'")
    index = {p: k for k, p in enumerate(points)}
    members = (lambda names: frozenset(index[x] for x in names))
    space = DescriptiveSpace(tuple(features[p] for p in points), tuple(points))
    cset = members(carrier) if carrier is not None else frozenset(range(len(points)))
    named = []
    for nm, mem, lineno in ideals:
        sub = members(mem)
        if not sub <= cset:
            raise ValidationError(f"line {lineno}: ideal {nm} has members outside the carrier")
        named.append((nm, sub))
    return AlgebraInstance(space, tuple(map(tuple, tables["add"])), tuple(map(tuple, tables["mul"])),
                           cset, name, tuple(named))


def _names(args, points, lineno):
    if not args:
        raise ParseError("expected at least one point name", lineno)
    for a in args:
        if a not in points:
            raise ParseError("undeclared point", lineno, a)
    if len(set(args)) != len(args):
        raise ParseError("point listed twice", lineno, next(a for a in args if args.count(a) > 1))
    return args


def serialize_instance(inst: AlgebraInstance) -> str:
    """Normalized document: fixed statement order, members in index order."""
    sp = inst.space
    names = [sp.name(i) for i in range(sp.n_points)]
    width = max(len(str(sp.n_points - 1)), 1)
    out = []
    if inst.name:
        out.append(f"name {inst.name}")
    out.append("points " + " ".join(names))
    for nm, f in zip(names, sp.probe):
        out.append(f"feature {nm} " + " ".join(str(v) for v in f))
    for label, t in (("add", inst.add), ("mul", inst.mul)):
        out.append(f"table {label}")
        for row in t:
            out.append("  " + " ".join(str(v).rjust(width) for v in row))
    out.append("carrier " + " ".join(names[i] for i in sorted(inst.carrier)))
    for nm, sub in inst.named_subsets:
        out.append(f"ideal {nm} " + " ".join(names[i] for i in sorted(sub)))
    return "\n".join(out) + "\n"


def load_instance(path) -> AlgebraInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def named_subset(inst: AlgebraInstance, name: str):
    for nm, sub in inst.named_subsets:
        if nm == name:
            return sub
    known = ", ".join(nm for nm, _ in inst.named_subsets) or "none"
    raise ValidationError(f"no ideal named {name!r} (declared: {known})")


def point_index(inst: AlgebraInstance, name: str) -> int:
    for i in range(inst.n_points):
        if inst.name_of(i) == name:
            return i
    raise ValidationError(f"no point named {name!r}")
