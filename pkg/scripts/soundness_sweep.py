"""Check the explicit bound on many random instances and summarize how tight it is.

    python scripts/soundness_sweep.py --n 10 30 100 --off-max 1 2 5 --seeds 200
"""
import argparse
import itertools
import sys
from collections import defaultdict

import numpy as np

from ddinv.approx import error_report
from ddinv.matrix import random_ddp


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[10, 30, 100])
    ap.add_argument("--off-max", type=float, nargs="+", default=[1.0, 2.0, 5.0])
    ap.add_argument("--slack", type=float, default=1.0)
    ap.add_argument("--seeds", type=int, default=50, help="instances per (n, off_max) cell")
    args = ap.parse_args()

    ratios = defaultdict(list)
    skipped = defaultdict(int)
    violations = 0
    for n, off_max in itertools.product(args.n, args.off_max):
        for seed in range(args.seeds):
            rep = error_report(random_ddp(n, 1.0, off_max, args.slack, seed))
            if not rep.bound.applicable:
                skipped[n, off_max] += 1
                continue
            ratios[n, off_max].append(rep.ratio)
            violations += rep.violated

    print(f"{'n':>5} {'off_max':>8} {'applicable':>10} {'median ratio':>13} {'max ratio':>10}")
    for key in itertools.product(args.n, args.off_max):
        r = ratios.get(key, [])
        med = f"{np.median(r):.4f}" if r else "-"
        top = f"{max(r):.4f}" if r else "-"
        print(f"{key[0]:>5} {key[1]:>8g} {len(r):>5}/{len(r) + skipped[key]:<4} {med:>13} {top:>10}")
    print(f"\nviolations: {violations}")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
