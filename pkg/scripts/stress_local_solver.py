#!/usr/bin/env python3
"""Stress the certified local solver against the unpruned brute-force oracle.

Random diagonal quartics d*w^2 = c0 + c2 z^2 + c4 z^4 with bounded coefficient
norms are decided independently by both procedures at a random place of small
residue characteristic; any disagreement or undecided verdict is a bug.

Example:
    python scripts/stress_local_solver.py --trials 1000 --seed 7
"""

from __future__ import annotations

import argparse
import pathlib
import random
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

from bruteforce import brute_locally_solvable
from conftest import random_place, random_qint
from iqdescent.localfield import QuarticModel, depth_bound, quartic_locally_solvable, verify_verdict


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--norm-bound", type=int, default=10_000)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    t0 = time.monotonic()
    done = solvable = 0
    while done < args.trials:
        place = random_place(rng)
        K = place.field
        d = random_qint(rng, K, args.norm_bound)
        if not d or (place.val(d) or 0) > 1:
            continue
        c0, c2, c4 = (random_qint(rng, K, args.norm_bound) for _ in range(3))
        if not c0 or not c4:
            continue
        model = QuarticModel(d, c0, c2, c4)
        if not model.disc_z():
            continue
        verdict = quartic_locally_solvable(model, place)
        oracle = brute_locally_solvable(model, place, depth_bound(model, place))
        if verdict.status != oracle or verdict.status == "undecided":
            print(f"DISAGREEMENT at D={K.D} ell={place.ell} {place.kind}: "
                  f"engine={verdict.status} oracle={oracle}")
            print(f"  d={d!r} c0={c0!r} c2={c2!r} c4={c4!r}")
            return 1
        if verdict.is_solvable:
            assert verify_verdict(model, place, verdict)
            solvable += 1
        done += 1
        if done % 100 == 0:
            print(f"  {done}/{args.trials} agree ({time.monotonic()-t0:.0f}s)")
    print(f"{args.trials} trials agree, {solvable} solvable, "
          f"{time.monotonic()-t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
