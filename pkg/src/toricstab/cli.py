"""Command-line front end.

Subcommands:
  check    decide tangent-bundle stability for a fan + divisor (or a polytope)
  rank2    closed-form engine for projectivized split bundles over P^s
  surface  classify a smooth toric surface and its stability profile
  region   scan a two-parameter slice of divisors and emit CSV
  examples list or re-run the built-in example corpus

Exit codes: 0 = Stable / successful query, 2 = Unstable,
3 = SemistableNotStable, 1 = error.  All numbers are printed as exact
fractions, never floats.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus, kleinschmidt
from .fan import (
    divisor_from_json,
    fan_from_json,
    normal_fan_from_vertices,
    polytope_vertices_from_json,
)
from .stability import (
    RegionSlice,
    StabilityStatus,
    StabilityVerdict,
    check_tangent,
    region_scan,
)
from .surfaces import classify_surface, surface_fan

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSTABLE = 2
EXIT_SEMISTABLE = 3

_STATUS_EXIT = {
    StabilityStatus.STABLE: EXIT_OK,
    StabilityStatus.UNSTABLE: EXIT_UNSTABLE,
    StabilityStatus.SEMISTABLE_NOT_STABLE: EXIT_SEMISTABLE,
}


def _print_verdict(verdict: StabilityVerdict, out) -> None:
    print(f"status: {verdict.status.value}", file=out)
    margin = "" if verdict.margin is None else str(verdict.margin)
    print(f"margin: {margin}", file=out)
    for w in verdict.witnesses:
        rays = "+".join(str(i) for i in w.rays_in)
        print(f"witness: rays {rays}  lhs {w.lhs}  rhs {w.rhs}", file=out)


def _cmd_check(args, out) -> int:
    if args.polytope:
        verts = polytope_vertices_from_json(Path(args.polytope).read_text())
        fan, divisor = normal_fan_from_vertices(verts)
    else:
        if not (args.fan and args.divisor):
            print("check needs --fan and --divisor, or --polytope", file=sys.stderr)
            return EXIT_ERROR
        fan = fan_from_json(Path(args.fan).read_text())
        divisor = divisor_from_json(Path(args.divisor).read_text())
    verdict = check_tangent(fan, divisor)
    _print_verdict(verdict, out)
    if args.semistable:
        semi = verdict.margin is None or verdict.margin >= 0
        return EXIT_OK if semi else EXIT_UNSTABLE
    return _STATUS_EXIT[verdict.status]


def _cmd_rank2(args, out) -> int:
    twists = tuple(int(x) for x in args.a.split(",")) if args.a else ()
    variety = kleinschmidt.rank2(args.r, args.s, twists)
    if args.gamma:
        lo, hi = kleinschmidt.gamma(args.r, args.s, tol=Fraction(args.tol))
        if lo == hi:
            print(f"gamma = {lo} (exact)", file=out)
        else:
            print(f"gamma in [{lo}, {hi}]", file=out)
        return EXIT_OK
    if args.lam is None or args.mu is None:
        print("rank2 needs --lambda and --mu, or --gamma", file=sys.stderr)
        return EXIT_ERROR
    status = kleinschmidt.classify(variety, Fraction(args.lam), Fraction(args.mu))
    print(f"status: {status.value}", file=out)
    return _STATUS_EXIT[status]


def _cmd_surface(args, out) -> int:
    fan = fan_from_json(Path(args.fan).read_text())
    sf = surface_fan(fan)
    cls = classify_surface(sf)
    print(f"class: {cls.kind.value}", file=out)
    print(f"stab_profile: {cls.stab_profile.value}", file=out)
    if cls.lemma32_data is not None:
        a, c, e, _ = cls.lemma32_data
        print(f"wedge_normal_form: a={a} c={c} e={e}", file=out)
    return EXIT_OK


def emit_region_csv(rows, path: str) -> None:
    """Write scan rows as UTF-8 CSV with LF endings, byte-deterministic."""
    lines = ["t1,t2,status,margin,witness"]
    for row in rows:
        margin = "" if row.margin is None else str(row.margin)
        lines.append(f"{row.t1},{row.t2},{row.status},{margin},{row.witness}")
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


def _parse_slice(text: str) -> RegionSlice:
    import json

    data = json.loads(text)
    from .fan import make_divisor

    return RegionSlice(
        base=make_divisor(data["base"]),
        dir1=make_divisor(data["dir1"]),
        dir2=make_divisor(data["dir2"]),
    )


def _cmd_region(args, out) -> int:
    fan = fan_from_json(Path(args.fan).read_text())
    slc = _parse_slice(Path(args.slice).read_text())
    box = tuple(Fraction(x) for x in args.box.split(","))
    if len(box) != 4:
        print("--box needs x0,x1,y0,y1", file=sys.stderr)
        return EXIT_ERROR
    steps = tuple(int(x) for x in args.grid.split(","))
    if len(steps) != 2:
        print("--grid needs N,M", file=sys.stderr)
        return EXIT_ERROR
    rows = region_scan(fan, slc, box, steps)
    emit_region_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}", file=out)
    return EXIT_OK


def _cmd_examples(args, out) -> int:
    if args.action == "list":
        for record in corpus.all_records():
            print(f"{record.name:28s} {record.expected.value:20s} {record.note}", file=out)
        return EXIT_OK
    record, verdict = corpus.run_example(args.name)
    print(f"name: {record.name}", file=out)
    print(f"note: {record.note}", file=out)
    print(f"expected: {record.expected.value}", file=out)
    _print_verdict(verdict, out)
    if verdict.status != record.expected:
        print("MISMATCH with expected verdict", file=sys.stderr)
        return EXIT_ERROR
    return _STATUS_EXIT[verdict.status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricstab",
        description="Exact slope-stability checks for tangent bundles on toric varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide stability for a fan + divisor")
    check.add_argument("--fan", help="fan JSON file")
    check.add_argument("--divisor", help="divisor JSON file")
    check.add_argument("--polytope", help="polytope JSON file (V-representation)")
    check.add_argument(
        "--semistable",
        action="store_true",
        help="exit 0 when semistable (margin >= 0) instead of only when stable",
    )

    rank2 = sub.add_parser("rank2", help="Picard-rank-2 closed-form engine")
    rank2.add_argument("--r", type=int, required=True)
    rank2.add_argument("--s", type=int, required=True)
    rank2.add_argument("--a", required=True, help="comma-separated twists a1,...,ar")
    rank2.add_argument("--lambda", dest="lam", help="fiber class coefficient")
    rank2.add_argument("--mu", help="base class coefficient")
    rank2.add_argument("--gamma", action="store_true", help="report the threshold root")
    rank2.add_argument("--tol", default="1/1000000000", help="bracket width for --gamma")

    surface = sub.add_parser("surface", help="classify a smooth toric surface")
    surface.add_argument("--fan", required=True)

    region = sub.add_parser("region", help="scan a 2-parameter divisor slice to CSV")
    region.add_argument("--fan", required=True)
    region.add_argument("--slice", required=True, help="slice JSON: base/dir1/dir2")
    region.add_argument("--box", required=True, help="x0,x1,y0,y1 (exact fractions)")
    region.add_argument("--grid", required=True, help="N,M grid steps")
    region.add_argument("--out", required=True, help="output CSV path")

    examples = sub.add_parser("examples", help="built-in example corpus")
    ex_sub = examples.add_subparsers(dest="action", required=True)
    ex_sub.add_parser("list")
    run = ex_sub.add_parser("run")
    run.add_argument("name")

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "rank2": _cmd_rank2,
        "surface": _cmd_surface,
        "region": _cmd_region,
        "examples": _cmd_examples,
    }
    try:
        return handlers[args.command](args, out)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
