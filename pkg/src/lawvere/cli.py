"""Command-line front end.

Subcommands: enumerate, compose, factorize, check-law, check-yb,
check-fs, check-coend, roundtrip, correspond.  Exit status 0 means every
check passed, 1 means a checker reported failures, 2 means the request
itself was invalid.  JSON output is deterministic for a fixed request and
seed; the default sample count can be set with LAWVERE_SAMPLES.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .builtin import ABELIAN_GROUP, BASE_THEORIES, MONOID, SEMIGROUP
from .correspondence import composite_correspondence_check, roundtrip_check
from .distlaw import (BUILTIN_LAWS, BUILTIN_SERIES, check_law_axioms,
                      check_yang_baxter, ps_monoid_theory, ring_theory)
from .factorization import check_fs_over_base, factorize
from .fincat import FiniteCategory, Morphism
from .fragments import (FRAGMENTS, FREE_MONOID_MONAD, FREE_RING_MONAD)
from .parser import ParseError, format_term, parse_term
from .profunctor import FiniteProfunctor, compose_prof
from .report import SCHEMA_VERSION
from .sampling import Sampler
from .terms import StructuralError
from .theory import compose, morphism, morphism_to_json

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _theories() -> dict:
    out = dict(BASE_THEORIES)
    out["ring"] = ring_theory()
    out["ps-monoid"] = ps_monoid_theory()
    return out


_COMPOSITE_PARTS = {
    "ring": (MONOID, ABELIAN_GROUP),
    "ps-monoid": (SEMIGROUP, None),
}

_CORRESPOND = {
    "ring": (lambda: (BUILTIN_LAWS["ring"], FREE_RING_MONAD, ring_theory())),
    "pointed-semigroup": (lambda: (BUILTIN_LAWS["pointed-semigroup"],
                                   FREE_MONOID_MONAD, ps_monoid_theory())),
}


def default_samples(fallback: int) -> int:
    try:
        return int(os.environ.get("LAWVERE_SAMPLES", fallback))
    except ValueError:
        return fallback


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        rendered = json.dumps(payload, sort_keys=True, indent=2)
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(rendered + "\n")
        else:
            print(rendered)
    else:
        print(text)


def _report_exit(rep) -> int:
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_enumerate(args) -> int:
    theories = _theories()
    if args.theory not in theories:
        print(f"unknown theory {args.theory!r}", file=sys.stderr)
        return EXIT_USAGE
    spec = theories[args.theory]
    terms = spec.enumerate_normal(args.arity, args.size)
    payload = {"schemaVersion": SCHEMA_VERSION, "theory": args.theory,
               "arity": args.arity, "sizeBound": args.size,
               "count": len(terms),
               "terms": [format_term(t) for t in terms]}
    _emit(args, payload,
          f"{len(terms)} normal forms: " +
          ", ".join(format_term(t) for t in terms))
    return EXIT_PASS


def cmd_compose(args) -> int:
    theories = _theories()
    if args.theory not in theories:
        print(f"unknown theory {args.theory!r}", file=sys.stderr)
        return EXIT_USAGE
    spec = theories[args.theory]
    first = [parse_term(s, spec, args.source)
             for s in args.first.split(",")]
    f = morphism(spec, args.source, first)
    second = [parse_term(s, spec, f.target)
              for s in args.second.split(",")]
    g = morphism(spec, f.target, second)
    composite = compose(g, f)
    payload = {"schemaVersion": SCHEMA_VERSION,
               "composite": morphism_to_json(composite)}
    _emit(args, payload,
          f"{composite.source} -> {composite.target}: " +
          ", ".join(format_term(c) for c in composite.components))
    return EXIT_PASS


def cmd_factorize(args) -> int:
    theories = _theories()
    if args.theory not in _COMPOSITE_PARTS:
        print(f"theory {args.theory!r} is not a composite theory",
              file=sys.stderr)
        return EXIT_USAGE
    spec = theories[args.theory]
    inner, outer = _composite_split(args.theory)
    comps = [parse_term(s, spec, args.arity)
             for s in args.morphism.split(",")]
    f = morphism(spec, args.arity, comps)
    pair = factorize(spec, inner, outer, f)
    payload = {
        "schemaVersion": SCHEMA_VERSION,
        "theory": args.theory,
        "middle": pair.middle,
        "left": morphism_to_json(pair.left),
        "right": morphism_to_json(pair.right),
    }
    _emit(args, payload,
          f"middle {pair.middle}; left [" +
          ",".join(format_term(c) for c in pair.left.components) +
          "]; right [" +
          ",".join(format_term(c) for c in pair.right.components) + "]")
    return EXIT_PASS


def _composite_split(name: str):
    if name == "ring":
        return MONOID, ABELIAN_GROUP
    if name == "ps-monoid":
        from .builtin import POINTED
        return SEMIGROUP, POINTED
    raise StructuralError(f"no composite split for {name!r}")


def cmd_check_law(args) -> int:
    if args.law not in BUILTIN_LAWS:
        print(f"unknown law {args.law!r}", file=sys.stderr)
        return EXIT_USAGE
    sampler = Sampler(seed=args.seed,
                      samples=default_samples(args.samples))
    t0 = time.perf_counter()
    rep = check_law_axioms(BUILTIN_LAWS[args.law], sampler)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    _emit(args, rep.to_json_dict(), rep.summary())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_check_yb(args) -> int:
    if args.series not in BUILTIN_SERIES:
        print(f"unknown series {args.series!r}", file=sys.stderr)
        return EXIT_USAGE
    sampler = Sampler(seed=args.seed,
                      samples=default_samples(args.samples))
    t0 = time.perf_counter()
    rep = check_yang_baxter(BUILTIN_SERIES[args.series](), sampler)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    _emit(args, rep.to_json_dict(), rep.summary())
    return _report_exit(rep)


def cmd_check_fs(args) -> int:
    theories = _theories()
    if args.theory not in _COMPOSITE_PARTS:
        print(f"theory {args.theory!r} is not a composite theory",
              file=sys.stderr)
        return EXIT_USAGE
    spec = theories[args.theory]
    inner, outer = _composite_split(args.theory)
    t0 = time.perf_counter()
    rep = check_fs_over_base(spec, inner, outer, args.arity, args.size)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    _emit(args, rep.to_json_dict(), rep.summary())
    return _report_exit(rep)


def cmd_check_coend(args) -> int:
    try:
        with open(args.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read {args.file!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        cats = {name: _category_from_json(name, cdata)
                for name, cdata in data.get("categories", {}).items()}
        profs = {name: _profunctor_from_json(name, pdata, cats)
                 for name, pdata in data.get("profunctors", {}).items()}
        payload = {"schemaVersion": SCHEMA_VERSION,
                   "categories": {n: len(c.morphisms)
                                  for n, c in cats.items()},
                   "profunctors": {n: p.total_size()
                                   for n, p in profs.items()}}
        if "compose" in data:
            gname, fname = data["compose"]
            composite = compose_prof(profs[gname], profs[fname])
            payload["composite"] = {
                "of": [gname, fname],
                "size": composite.total_size(),
                "table": {f"{d}|{c}": len(es) for (d, c), es
                          in sorted(composite.table.items(),
                                    key=lambda kv: str(kv[0]))},
            }
    except (KeyError, StructuralError) as exc:
        print(f"invalid tables: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, payload, json.dumps(payload, sort_keys=True))
    return EXIT_PASS


def _category_from_json(name: str, data: dict) -> FiniteCategory:
    morphisms = [Morphism(m["name"], m["src"], m["tgt"])
                 for m in data["morphisms"]]
    comp = {(g, f): h for g, f, h in data["composition"]}
    return FiniteCategory(name, data["objects"], morphisms,
                          data["identities"], comp)


def _profunctor_from_json(name: str, data: dict,
                          cats: dict) -> FiniteProfunctor:
    src, tgt = cats[data["src"]], cats[data["tgt"]]
    table = {}
    for entry in data["table"]:
        table[(entry["d"], entry["c"])] = entry["elements"]
    c_action = {(a["morphism"], a["d"], a["element"]): a["to"]
                for a in data["cAction"]}
    d_action = {(a["morphism"], a["c"], a["element"]): a["to"]
                for a in data["dAction"]}
    return FiniteProfunctor(name, src, tgt, table, c_action, d_action)


def cmd_roundtrip(args) -> int:
    if args.monad not in FRAGMENTS:
        print(f"unknown monad {args.monad!r}", file=sys.stderr)
        return EXIT_USAGE
    frag = FRAGMENTS[args.monad]
    kwargs = {}
    if not frag.finite:
        kwargs["size_bound"] = args.size
    t0 = time.perf_counter()
    rep = roundtrip_check(frag, args.bound, **kwargs)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    _emit(args, rep.to_json_dict(), rep.summary())
    return _report_exit(rep)


def cmd_correspond(args) -> int:
    if args.law not in _CORRESPOND:
        print(f"no correspondence fixture for law {args.law!r}",
              file=sys.stderr)
        return EXIT_USAGE
    law, fragment, spec = _CORRESPOND[args.law]()
    sampler = Sampler(seed=args.seed,
                      samples=default_samples(args.samples))
    t0 = time.perf_counter()
    rep = composite_correspondence_check(
        law, fragment, size_bound=args.size, sampler=sampler, spec=spec)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1000
    _emit(args, rep.to_json_dict(), rep.summary())
    return _report_exit(rep)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lawvere",
        description="algebraic theories, distributive laws, factorisation "
                    "systems and the finitary-monad dictionary, at desk "
                    "scale")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples: int = 500):
        sp.add_argument("--json", action="store_true",
                        help="emit a JSON report")
        sp.add_argument("--out", help="write the JSON report to this path")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=samples,
                        help="sample count (default via LAWVERE_SAMPLES)")

    sp = sub.add_parser("enumerate", help="list bounded normal forms")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--arity", type=int, required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("compose", help="compose two tuple morphisms")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--source", type=int, required=True)
    sp.add_argument("--first", required=True,
                    help="comma-separated components of the first morphism")
    sp.add_argument("--second", required=True,
                    help="components of the morphism applied after")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("factorize",
                        help="split a composite-theory morphism")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--morphism", required=True)
    sp.add_argument("--arity", type=int, default=3)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("check-law", help="compatibility diagrams of a law")
    sp.add_argument("--law", required=True)
    common(sp)
    sp.set_defaults(func=cmd_check_law)

    sp = sub.add_parser("check-yb", help="hexagons and bracketing agreement")
    sp.add_argument("--series", required=True)
    common(sp, samples=300)
    sp.set_defaults(func=cmd_check_yb)

    sp = sub.add_parser("check-fs",
                        help="factorization sweep over a composite theory")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--arity", type=int, default=2)
    sp.add_argument("--size", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check_fs)

    sp = sub.add_parser("check-coend",
                        help="validate category/profunctor tables and "
                             "compose by coend")
    sp.add_argument("--file", required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check_coend)

    sp = sub.add_parser("roundtrip",
                        help="rebuild a monad from its theory of arities")
    sp.add_argument("--monad", required=True)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--size", type=int, default=3,
                    help="enumeration bound for infinite carriers")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_roundtrip)

    sp = sub.add_parser("correspond",
                        help="composite theory against the composite monad")
    sp.add_argument("--law", required=True)
    sp.add_argument("--size", type=int, default=5)
    common(sp, samples=150)
    sp.set_defaults(func=cmd_correspond)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except (ParseError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
