"""Classify every gated (q, r) and compare with the stored interval lists."""

import argparse
import time

from divsets.cli import golden_path
from divsets.lengths import ClassifyOptions, classify, exclusion_intervals, summary
from divsets.qbase import DivisibilityParams

GATED = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 1), (5, 2), (7, 1), (8, 1), (9, 1)]
STRETCH = [(2, 6), (2, 7), (3, 4), (5, 3), (8, 2)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--stretch", action="store_true", help="also run the large cases (slow)")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args()
    opts = ClassifyOptions(use_external=False, jobs=args.jobs)
    cases = GATED + (STRETCH if args.stretch else [])
    total = 0.0
    for q, r in cases:
        t = time.perf_counter()
        led = classify(DivisibilityParams(q, r), options=opts)
        dt = time.perf_counter() - t
        total += dt
        got = exclusion_intervals(led)
        want = golden_path(q, r).read_text().strip()
        print(f"q={q} r={r} N={led.N} {'match' if got == want else 'MISMATCH'} ({dt:.1f}s)")
        if got != want or args.verbose:
            print("  expected:", want)
            print("  got:     ", got)
            print("  " + summary(led).replace("\n", "\n  "))
    print(f"total {total:.1f}s")


if __name__ == "__main__":
    main()
