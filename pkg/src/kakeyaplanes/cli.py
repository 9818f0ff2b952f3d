"""Command line entry point: ``kakeya <subcommand>``.

Exit status is 0 on success, 1 on a domain error (the error class name is
printed) or a failed verification, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bounds as bnd
from .constructions import FAMILIES, ConstructionSpec, applicable, expected_size
from .errors import KakeyaError
from .gf import field_of_order
from .kakeya import analyze, read_selection, write_selection
from .plane import (
    affine_from_projective,
    desarguesian_affine,
    desarguesian_projective,
    dump_plane,
    load_plane,
    verify_affine_axioms,
)
from .search import budget_from_env, enumerate_selections, search_space, verify_theorem


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _dumps(obj, pretty=False) -> str:
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, default=_json_default) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plane_from_args(args):
    if getattr(args, "plane", None):
        with open(args.plane) as fh:
            return load_plane(fh)
    return desarguesian_affine(field_of_order(args.q))


def cmd_plane(args) -> int:
    fld = field_of_order(args.q)
    if args.remove_line is not None:
        plane = affine_from_projective(desarguesian_projective(fld), args.remove_line)
    else:
        plane = desarguesian_affine(fld)
    if args.verify:
        report = verify_affine_axioms(plane)
        _emit(_dumps({"q": args.q, "ok": report.ok, "axioms": report.as_dict()}, args.pretty), args.out)
        return 0 if report.ok else 1
    _emit(dump_plane(plane), args.out)
    return 0


def cmd_analyze(args) -> int:
    plane = _plane_from_args(args)
    with open(args.selection) as fh:
        sel = read_selection(plane, fh)
    _emit(_dumps(analyze(sel), args.pretty), args.out)
    return 0


def cmd_bounds(args) -> int:
    if args.table:
        buf = io.StringIO()
        rows = bnd.bounds_table(args.q)
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: str(v) for k, v in row.items()})
        _emit(buf.getvalue(), args.out)
        return 0
    _emit(_dumps(bnd.theorem_threshold(args.q).as_dict(), args.pretty), args.out)
    return 0


def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.family, args.q, point=args.point, m_choice=args.m_choice)
    sel = spec.build()
    if args.plane_out:
        with open(args.plane_out, "w") as fh:
            dump_plane(sel.plane, fh)
    if args.emit_json:
        record = analyze(sel) | {"family": args.family}
        if args.out:
            with open(args.out, "w") as fh:
                write_selection(sel, fh)
        sys.stdout.write(_dumps(record, args.pretty))
    else:
        _emit(write_selection(sel), args.out)
    return 0


def cmd_search(args) -> int:
    plane = _plane_from_args(args)
    report = enumerate_selections(plane, args.mode, n=args.n, seed=args.seed, reduce=args.reduce,
                                  jobs=args.jobs, big=args.big)
    _emit(report.to_json(), args.out)
    return 0


def verify_order(q: int, jobs: int = 1, big: bool = False) -> dict:
    """Build, check, construct, search and classify at order q."""
    fld = field_of_order(q)
    plane = desarguesian_affine(fld)
    axioms = verify_affine_axioms(plane)
    lemma = bnd.lemma_checks(q)
    profile = bnd.theorem_threshold(q)

    constructions = {}
    for family in FAMILIES:
        if not applicable(family, q):
            continue
        rec = analyze(ConstructionSpec(family, q).build())
        rec["expected_size"] = expected_size(family, q)
        rec["ok"] = rec["size"] == rec["expected_size"] and all(rec["identities"].values())
        rec["verdict"] = bnd.classify(q, rec["size"], rec["k"], profile).as_dict()
        constructions[family] = rec

    space = search_space(plane, reduce=True)
    if space.size <= budget_from_env() and (q < 9 or big):
        report = enumerate_selections(plane, "exhaustive", reduce=True, jobs=jobs, big=big)
    else:
        report = enumerate_selections(plane, "sample", n=1000, seed=0, reduce=True, jobs=jobs)
    summary = verify_theorem(report, profile)

    ok = (axioms.ok and lemma.ok and summary.ok and all(c["ok"] for c in constructions.values())
          and all(c["verdict"]["status"] != "violates" for c in constructions.values()))
    return {
        "q": q,
        "ok": ok,
        "axioms": axioms.as_dict(),
        "lemma_checks": lemma.items,
        "bounds": profile.as_dict(),
        "constructions": constructions,
        "search": {"mode": report.mode, "reduced": report.reduced, "evaluated": report.evaluated,
                   "attained": {str(s): c for s, c in sorted(report.attained.items())},
                   "gaps": report.gaps, "conformance": report.conformance},
        "theorem": summary.as_dict(),
    }


def cmd_verify(args) -> int:
    result = verify_order(args.q, jobs=args.jobs, big=args.big)
    _emit(_dumps(result, args.pretty), args.out)
    return 0 if result["ok"] else 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kakeya", description="Kakeya sets in finite affine planes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, q_required=True):
        p.add_argument("--q", type=int, required=q_required, help="order of the plane")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--json", action="store_true", help="JSON output (the default)")
        p.add_argument("--pretty", action="store_true", help="indent JSON")

    p = sub.add_parser("plane", help="dump or verify a Desarguesian affine plane")
    common(p)
    p.add_argument("--remove-line", type=int, help="build from PG(2,q) minus this line")
    p.add_argument("--verify", action="store_true", help="print the axiom report instead")
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("analyze", help="size and knot spectrum of a selection")
    common(p, q_required=False)
    p.add_argument("--plane", help="plane file (default: AG(2,q))")
    p.add_argument("--selection", required=True, help="selection file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="thresholds and admissible intervals")
    common(p)
    p.add_argument("--table", action="store_true", help="CSV of f, g, h per integer k")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="write a named selection")
    common(p)
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--m-choice", type=int, default=0)
    p.add_argument("--point", type=int, default=0)
    p.add_argument("--plane-out", help="also dump the plane the selection lives in")
    p.add_argument("--emit-json", action="store_true", help="print the analysis record")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="enumerate or sample selections")
    common(p, q_required=False)
    p.add_argument("--plane", help="plane file (default: AG(2,q))")
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--n", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--reduce", action="store_true", help="one selection per translation orbit")
    p.add_argument("--big", action="store_true", help="allow q >= 9 exhaustive")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="end-to-end checks at one order")
    common(p)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--big", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("analyze", "search") and not (args.q or args.plane):
        parser.error(f"{args.command}: one of --q or --plane is required")
    if args.command in ("analyze", "search") and args.q and args.plane:
        parser.error(f"{args.command}: --q and --plane are mutually exclusive")
    try:
        return args.func(args)
    except KakeyaError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
