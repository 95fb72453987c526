#!/usr/bin/env python3
"""Run the twin-prime conformance sweep and write both report formats.

Example:
    python scripts/run_sweep.py --pmax 500 --jobs 8 --outdir reports/
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

from iqdescent.verify import parse_eps, parse_fields, sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=500)
    ap.add_argument("--fields", default="all")
    ap.add_argument("--eps", default="both")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--rank-height", type=int, default=100, dest="rank_height")
    ap.add_argument("--outdir", default="reports")
    args = ap.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.monotonic()
    report = sweep(
        args.pmax,
        fields=parse_fields(args.fields),
        eps=parse_eps(args.eps),
        jobs=args.jobs,
        rank_height=args.rank_height,
    )
    elapsed = time.monotonic() - t0
    stem = f"sweep_p{args.pmax}"
    (outdir / f"{stem}.json").write_text(report.to_json())
    (outdir / f"{stem}.tsv").write_text(report.to_tsv())
    s = report.summary
    print(f"{s['curves']} curves ({s['condition_rows']} classified) in {elapsed:.1f}s")
    print(f"mismatches={s['mismatches']} undecided={s['undecided']} "
          f"certificate_failures={s['certificate_failures']}")
    print(f"wrote {outdir / (stem + '.json')} and {outdir / (stem + '.tsv')}")
    if s["mismatches"] or s["certificate_failures"]:
        return 2
    if s["undecided"]:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
