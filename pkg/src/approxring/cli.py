"""Command-line front end (``approxring``).

Exit codes: 0 when the command ran (verdicts may be negative), 1 for input
or validation problems, 2 when a request is too large to evaluate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .errors import FeasibilityError, InputError, TooLarge
from .ideals import (
    classify_ideal,
    colon,
    is_approx_ideal,
    quotient,
    radical,
    violates,
)
from .instance_io import load_instance, named_subset, point_index, serialize_instance
from .structures import FLAG_NAMES, locate_identities, units
from .harness.fixtures import FIXTURE_NAMES, fixture_document_instance
from .harness.generate import GenParams, enumerate_ideals, generate_instances
from .harness.suite import ALL_THEOREMS, CHECKS, COUNTEREXAMPLE, replay, run_theorem_suite

MAX_POINTS_ENV = "APPROXRING_MAX_POINTS"
DEFAULT_MAX_POINTS = 64
PREDICATES = ("ideal", "prime", "primary", "semi_primary", "one_absorbing")


class UsageError(InputError):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def default_max_points() -> int:
    raw = os.environ.get(MAX_POINTS_ENV)
    if raw is None:
        return DEFAULT_MAX_POINTS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_POINTS_ENV} must be an integer, got {raw!r}") from None


# ---- rendering


def names_of(inst, x):
    """Replace point indices by point names inside a witness or member set."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return inst.name_of(x)
    if isinstance(x, (frozenset, set)):
        return [inst.name_of(i) for i in sorted(x)]
    return tuple(names_of(inst, y) for y in x)


def render_human(doc, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    for key, val in doc.items():
        if isinstance(val, dict):
            out.append(f"{pad}{key}:")
            out.extend(render_human(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            out.append(f"{pad}{key}:")
            for item in val:
                lines = render_human(item, indent + 2)
                out.append(f"{pad}  - {lines[0].strip()}")
                out.extend(lines[1:])
        else:
            out.append(f"{pad}{key}: {fmt(val)}")
    return out


def fmt(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    if v is None:
        return "n/a"
    if isinstance(v, tuple):
        return "(" + ", ".join(fmt(x) for x in v) + ")"
    if isinstance(v, list):
        return "{" + ", ".join(fmt(x) for x in v) + "}"
    return str(v)


def emit(doc: dict, machine: bool, out=None) -> None:
    out = out or sys.stdout
    if machine:
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(render_human(doc)) + "\n")


def header(kind: str, inst=None) -> dict:
    doc = {"report": kind, "version": __version__}
    if inst is not None:
        doc["instance"] = inst.name or inst.fingerprint
        doc["fingerprint"] = inst.fingerprint
    return doc


# ---- commands


def _load(args):
    inst = load_instance(args.file)
    if inst.n_points > args.max_points:
        raise TooLarge(f"instance has {inst.n_points} points, --max-points is {args.max_points}")
    return inst


def cmd_check_structure(args):
    inst = _load(args)
    f = inst.flags
    doc = header("check-structure", inst)
    doc["flags"] = {k: getattr(f, k) for k in FLAG_NAMES}
    doc["witnesses"] = {k: names_of(inst, w) for k, w in sorted(f.witnesses.items())}
    try:
        ids = locate_identities(inst)
        doc["zero"] = inst.name_of(ids.zero)
        doc["unity"] = names_of(inst, ids.one)
        if ids.one is not None:
            doc["units"] = names_of(inst, units(inst))
    except InputError as exc:
        doc["identities"] = str(exc)
    doc["upper_approx_carrier"] = names_of(inst, inst.upper)
    return doc


def cmd_classify(args):
    inst = _load(args)
    W = named_subset(inst, args.ideal)
    rep = classify_ideal(inst, W)
    doc = header("classify", inst)
    doc["ideal"] = args.ideal
    doc["members"] = names_of(inst, rep.members)
    doc["verdicts"] = rep.verdicts()
    doc["witnesses"] = {k: names_of(inst, w) for k, w in sorted(rep.witnesses.items())}
    doc["radical"] = names_of(inst, rep.radical_members)
    doc["p_primary_target"] = names_of(inst, rep.p_primary_target)
    if rep.notes:
        doc["notes"] = dict(sorted(rep.notes.items()))
    return doc


def cmd_radical(args):
    inst = _load(args)
    W = named_subset(inst, args.ideal)
    r = radical(inst, W)
    doc = header("radical", inst)
    doc["ideal"] = args.ideal
    doc["members"] = names_of(inst, W)
    doc["radical"] = names_of(inst, r)
    v = is_approx_ideal(inst, r)
    doc["radical_is_ideal"] = v.holds
    if not v:
        doc["witness"] = names_of(inst, v.witness)
    return doc


def cmd_colon(args):
    inst = _load(args)
    W = named_subset(inst, args.ideal)
    s = point_index(inst, args.element)
    if s not in inst.carrier:
        raise InputError(f"element {args.element!r} is not in the carrier")
    c = colon(inst, W, s)
    doc = header("colon", inst)
    doc["ideal"] = args.ideal
    doc["element"] = args.element
    doc["colon"] = names_of(inst, c)
    return doc


def cmd_quotient(args):
    inst = _load(args)
    W = named_subset(inst, args.ideal)
    q = quotient(inst, W, "strict" if args.strict else "descriptive")
    label = [f"{inst.name_of(r)}+W" for r in q.representatives]
    doc = header("quotient", inst)
    doc["ideal"] = args.ideal
    doc["mode"] = q.mode
    doc["well_defined"] = q.well_defined
    if q.witness is not None:
        doc["witness"] = names_of(inst, q.witness)
    doc["cosets"] = [{"coset": label[k], "members": names_of(inst, c)} for k, c in enumerate(q.cosets)]
    doc["zero_cosets"] = [label[k] for k in q.zero_cosets()]
    zd = []
    for k in q.zero_divisors():
        r = q.representatives[k]
        zd.append({
            "coset": label[k],
            "partner": inst.name_of(q.zero_divisor_partner(r)),
            "nilpotency_index": q.nilpotency_index(r),
        })
    doc["zero_divisors"] = zd
    return doc


def cmd_ideals(args):
    inst = _load(args)
    found = enumerate_ideals(inst)
    doc = header("ideals", inst)
    doc["count"] = len(found)
    doc["ideals"] = [names_of(inst, W) for W in found]
    return doc


def _n_points(text: str):
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return int(lo), int(hi)
        return int(text)
    except ValueError:
        raise UsageError(f"--n-points expects N or LO-HI, got {text!r}") from None


def cmd_suite(args):
    theorems = ALL_THEOREMS if not args.theorems else tuple(t.strip() for t in args.theorems.split(","))
    unknown = [t for t in theorems if t not in CHECKS]
    if unknown:
        raise UsageError(f"unknown theorem ids: {', '.join(unknown)}")
    params = GenParams(args.family, _n_points(args.n_points), args.alphabet, args.samples, args.seed)
    if params.n_points[1] > args.max_points:
        raise TooLarge(f"--n-points {params.n_points[1]} exceeds --max-points {args.max_points}")
    stream = generate_instances(params)
    instances = list(stream)
    findings = run_theorem_suite(instances, theorems)

    summary = {t: {"CONFIRMED": 0, "COUNTEREXAMPLE": 0, "HYPOTHESIS-NOT-MET": 0} for t in theorems}
    for f in findings:
        summary[f.theorem_id][f.status] += 1
    reported, seen = [], set()
    for f in findings:
        if f.status != COUNTEREXAMPLE or (f.theorem_id, f.fingerprint) in seen:
            continue
        seen.add((f.theorem_id, f.fingerprint))
        reported.append({
            "theorem": f.theorem_id,
            "fingerprint": f.fingerprint,
            "witness": names_of(f.instance, f.witness),
            "strata": dict(sorted(f.strata.items())),
            "replayed": replay(f),
        })
    doc = header("suite")
    doc["params"] = {
        "family": params.family, "n_points": tuple(params.n_points), "alphabet": params.alphabet,
        "samples": params.samples, "seed": params.seed, "theorems": list(theorems),
    }
    doc["stream"] = {**stream.stats(), "distinct": len({i.fingerprint for i in instances})}
    doc["summary"] = summary
    doc["counterexamples"] = reported
    if args.show_instances:
        by_fp = {f.fingerprint: f.instance for f in findings}
        doc["instances"] = {fp: serialize_instance(by_fp[fp]) for fp in sorted({r["fingerprint"] for r in reported})}
    return doc


def cmd_fixtures(args):
    names = [args.name] if args.name else list(FIXTURE_NAMES)
    if args.name and args.name not in FIXTURE_NAMES:
        raise UsageError(f"unknown fixture {args.name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    docs = {n: serialize_instance(fixture_document_instance(n)) for n in names}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for n, text in docs.items():
            path = out / f"{n}.inst"
            path.write_text(text, encoding="utf-8")
            written.append(str(path))
        return {"report": "fixtures", "version": __version__, "written": written}
    if args.name:
        sys.stdout.write(docs[args.name])
    else:
        sys.stdout.write("\n".join(f"# file: {n}.inst\n{t}" for n, t in docs.items()))
    return None


def _witness_arg(inst, text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            out.append(point_index(inst, tok))
        except InputError:
            out.append(tok)
    return out


def cmd_verify(args):
    inst = _load(args)
    W = named_subset(inst, args.ideal)
    wit = _witness_arg(inst, args.witness)
    doc = header("verify", inst)
    doc["ideal"] = args.ideal
    doc["predicate"] = args.predicate
    doc["witness"] = names_of(inst, wit)
    doc["violates"] = violates(inst, W, args.predicate, wit)
    return doc


# ---- parser


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--machine", action="store_true", help="emit JSON with stable key order")
    common.add_argument("--max-points", type=int, default=None,
                        help=f"refuse larger instances (default ${MAX_POINTS_ENV} or {DEFAULT_MAX_POINTS})")

    p = Parser(prog="approxring", description="Approximate rings and ideals on descriptive spaces.")
    p.add_argument("--version", action="version", version=f"approxring {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def add(name, fn, help, file=True, ideal=False):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file", help="instance file")
        if ideal:
            sp.add_argument("--ideal", required=True, help="name of an ideal declared in the file")
        sp.set_defaults(func=fn)
        return sp

    add("check-structure", cmd_check_structure, "structure flags with witnesses")
    add("classify", cmd_classify, "classify a named ideal", ideal=True)
    add("radical", cmd_radical, "radical of a named ideal", ideal=True)
    sp = add("colon", cmd_colon, "colon W:s", ideal=True)
    sp.add_argument("--element", required=True, help="point name s")
    sp = add("quotient", cmd_quotient, "cosets of a named ideal", ideal=True)
    sp.add_argument("--strict", action="store_true", help="zero test by membership in W itself")
    add("ideals", cmd_ideals, "enumerate all approximate ideals")
    sp = add("suite", cmd_suite, "run the theorem-falsification suite", file=False)
    sp.add_argument("--family", default="modular", choices=("exhaustive", "modular", "random"))
    sp.add_argument("--n-points", default="6", help="N or LO-HI")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--alphabet", type=int, default=2, help="feature alphabet (exhaustive/random)")
    sp.add_argument("--theorems", default=None, help="comma-separated ids (default: all)")
    sp.add_argument("--show-instances", action="store_true",
                    help="include instance documents for counterexamples")
    sp = add("fixtures", cmd_fixtures, "emit built-in fixtures as instance files", file=False)
    sp.add_argument("--out", help="directory to write NAME.inst files into")
    sp.add_argument("--name", help="only this fixture")
    sp = add("verify", cmd_verify, "re-check one witness against one predicate", ideal=True)
    sp.add_argument("--predicate", required=True, choices=PREDICATES)
    sp.add_argument("--witness", required=True, help="comma-separated point names and tags")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.max_points is None:
            args.max_points = default_max_points()
        doc = args.func(args)
        if doc is not None:
            emit(doc, args.machine)
        return 0
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
