"""Command-line interface: descent, sweep and explain subcommands.

Exit codes: 0 all comparisons matched (or nothing to compare), 2 at least one
mismatch against the expected tables, 3 an undecided local verdict surfaced,
4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from .descent import CurveSpec, IsogenyDirection, UndecidedError, selmer_group
from .localfield import SearchPolicy
from .qfield import QFieldError, quad_field
from .sharank import build_report, point_search
from .verify import (
    classify_condition,
    expected_outcome,
    explain,
    parse_eps,
    parse_fields,
    sweep,
)

EXIT_OK, EXIT_MISMATCH, EXIT_UNDECIDED, EXIT_USAGE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; keep 2 for mismatches
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _policy(args) -> SearchPolicy:
    return SearchPolicy(depth=args.depth, precision=args.prec)


def _add_policy_args(sp) -> None:
    sp.add_argument("--depth", type=int, default=None, help="residue-disc depth bound override")
    sp.add_argument("--prec", type=int, default=None, help="working precision override")


def build_parser() -> _Parser:
    parser = _Parser(prog="iqdescent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("descent", help="descend one curve pair")
    d.add_argument("--field", type=int, required=True, help="radicand or discriminant, e.g. -7")
    d.add_argument("--p", type=int, required=True, help="the smaller twin prime")
    d.add_argument("--eps", default="+1", help="+1 or -1")
    d.add_argument("--dir", default="both", choices=["phi", "phihat", "both"])
    d.add_argument("--format", default="text", choices=["text", "json"])
    d.add_argument("--height", type=int, default=10_000, help="naive point search bound")
    _add_policy_args(d)

    s = sub.add_parser("sweep", help="twin-prime conformance sweep")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--fields", default="all", help="'all' or comma-separated radicands")
    s.add_argument("--eps", default="both", help="both, +1 or -1")
    s.add_argument("--format", default="json", choices=["json", "tsv"])
    s.add_argument("--out", default=None, help="output path (default stdout)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--rank-height", type=int, default=100, dest="rank_height",
                   help="point-search bound used for the per-record rank lower bound")
    _add_policy_args(s)

    e = sub.add_parser("explain", help="certificate dump for one class")
    e.add_argument("--field", type=int, required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--eps", default="+1")
    e.add_argument("--d", required=True, help="class expression, e.g. --d=-1*pi2 or --d=mu")
    e.add_argument("--dir", default="phi", choices=["phi", "phihat"])
    e.add_argument("--format", default="text", choices=["text", "json"])
    _add_policy_args(e)
    return parser


def _eps_value(text: str) -> int:
    values = parse_eps(text)
    if len(values) != 1:
        raise QFieldError("this command needs a single eps value")
    return values[0]


def _cmd_descent(args) -> int:
    K = quad_field(args.field)
    eps = _eps_value(args.eps)
    curve = CurveSpec(eps, args.p, args.p + 2, K)
    policy = _policy(args)
    directions = {
        "phi": (IsogenyDirection.PHI,),
        "phihat": (IsogenyDirection.PHI_HAT,),
        "both": (IsogenyDirection.PHI, IsogenyDirection.PHI_HAT),
    }[args.dir]
    groups = {d: selmer_group(curve, d, policy) for d in directions}
    tag = classify_condition(K, args.p)
    out: dict = {
        "curve": curve.label(),
        "condition": tag.tag,
        "subcase": tag.subcase,
        "groups": {
            d.value: {
                "dim": g.dim,
                "basis": [c.name for c in g.basis()],
                "members": [c.name for c in g.members()],
            }
            for d, g in groups.items()
        },
    }
    match: Optional[bool] = None
    if len(groups) == 2:
        dphi = groups[IsogenyDirection.PHI].dim
        dhat = groups[IsogenyDirection.PHI_HAT].dim
        search = point_search(curve, args.height)
        report = build_report(curve, dphi, dhat, search)
        out["identity_value"] = report.identity_value
        out["rank_interval"] = list(report.rank_interval)
        out["sha_clause"] = report.sha_clause.text
        out["points_found"] = len(search.points)
        if tag.tag != "none":
            exp = expected_outcome(tag, eps)
            match = (dphi, dhat) == (exp.dim_phi, exp.dim_phihat)
            out["expected"] = {
                "dim_phi": exp.dim_phi,
                "dim_phihat": exp.dim_phihat,
                "identity_value": exp.identity_value,
                "row": exp.row_key,
            }
            out["match"] = match
    if args.format == "json":
        print(json.dumps(out, indent=1, sort_keys=True))
    else:
        print(f"{out['curve']}   condition {out['condition']}"
              + (f" (subcase {out['subcase']})" if out["subcase"] is not None else ""))
        for name, g in out["groups"].items():
            print(f"  S^{name}: dim {g['dim']}, basis {{{', '.join(g['basis']) or '-'}}}")
            print(f"    members: {', '.join(g['members'])}")
        if "identity_value" in out:
            print(f"  identity value: {out['identity_value']}")
            print(f"  rank interval: {out['rank_interval']}  ({out['points_found']} points found)")
            print(f"  {out['sha_clause']}")
        if "expected" in out:
            print(f"  expected row {out['expected']['row']}: dims "
                  f"({out['expected']['dim_phi']}, {out['expected']['dim_phihat']})"
                  f" -> match: {out['match']}")
    if match is False:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_sweep(args) -> int:
    policy = _policy(args)
    t0 = time.monotonic()
    report = sweep(
        args.pmax,
        fields=parse_fields(args.fields),
        eps=parse_eps(args.eps),
        policy=policy,
        jobs=args.jobs,
        rank_height=args.rank_height,
    )
    elapsed = time.monotonic() - t0
    text = report.to_json() if args.format == "json" else report.to_tsv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    s = report.summary
    sys.stderr.write(
        f"sweep: {s['curves']} curves, {s['condition_rows']} classified, "
        f"{s['mismatches']} mismatches, {s['undecided']} undecided, "
        f"{s['certificate_failures']} certificate failures, {elapsed:.1f}s\n"
    )
    if s["undecided"]:
        return EXIT_UNDECIDED
    if s["mismatches"] or s["certificate_failures"]:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_explain(args) -> int:
    direction = IsogenyDirection.PHI if args.dir == "phi" else IsogenyDirection.PHI_HAT
    info = explain(args.field, args.p, _eps_value(args.eps), args.d, direction, _policy(args))
    if args.format == "json":
        print(json.dumps(info, indent=1, sort_keys=True))
        return EXIT_OK
    print(f"{info['curve']}  {info['kind']} for d = {info['class']} (= {info['representative']})")
    print(f"  equation: {info['equation']}")
    print(f"  generators: {', '.join(info['generators'])}")
    print(f"  member of S^{info['direction']}: {info['member']}")
    for pl in info["places"]:
        line = f"    {pl['place']:8s} {pl['status']:10s}"
        if pl["status"] == "insolvable":
            line += f" exhausted residue discs to depth {pl['depth']}"
        cert = pl.get("certificate")
        if cert:
            line += (f" witness z={cert['z']}, w={cert['w']} ({cert['axis']}-lift,"
                     f" fval={cert['fval']}, dval={cert['dval']},"
                     f" reverified={cert['reverify']})")
        print(line)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "descent":
            return _cmd_descent(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_explain(args)
    except UndecidedError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_UNDECIDED
    except (QFieldError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
