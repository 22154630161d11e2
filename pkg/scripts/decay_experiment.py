"""Error decay of S on the worst-case family.

Prints error, error * (n-1)^2 * m and the fitted log-log slope; pass --csv to
write the table as well.

    python scripts/decay_experiment.py --m 1 --M 2 --n 8 16 32 64 128 256
"""
import argparse
import csv
import sys

import numpy as np

from ddinv.approx import discussion_example_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--M", type=float, default=2.0)
    ap.add_argument("--n", type=int, nargs="+", default=[8, 16, 32, 64, 128, 256])
    ap.add_argument("--csv", help="also write rows here")
    args = ap.parse_args()

    reports = [discussion_example_report(n, args.m, args.M) for n in args.n]
    print(f"{'n':>6} {'error':>12} {'scaled':>10} {'printed-formula gap':>20}")
    for r in reports:
        print(f"{r.n:>6} {r.error:>12.4e} {r.scaled_error:>10.5f} {r.paper_closed_form_gap:>20.3e}")

    if len(reports) >= 2:
        x = np.log([r.n - 1 for r in reports])
        y = np.log([r.error for r in reports])
        slope = np.polyfit(x, y, 1)[0]
        print(f"\nslope of log(error) vs log(n-1): {slope:.4f}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "m", "M", "error", "scaled_error", "paper_closed_form_gap"])
            for r in reports:
                w.writerow([r.n, f"{r.m:.17g}", f"{r.M:.17g}", f"{r.error:.17g}",
                            f"{r.scaled_error:.17g}", f"{r.paper_closed_form_gap:.17g}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
