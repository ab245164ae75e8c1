#!/usr/bin/env python3
"""Round-trip stress run: scramble known forms, decompose, compare.

Each trial builds a matrix congruent to a known regular + Jordan sum,
decomposes it from scratch, and demands the block data and an exactly
verified transform back.  Reports throughput; any failure is printed
with its trial index so it can be replayed with the same seed.
"""

import argparse
import sys
import time

from congru import roundtrip_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    start = time.perf_counter()
    report = roundtrip_suite(args.trials, seed=args.seed)
    elapsed = time.perf_counter() - start

    print(f"trials={report.total} passed={report.passed} "
          f"elapsed={elapsed:.2f}s "
          f"rate={report.total / elapsed:.1f}/s")
    for line in report.failures:
        print(f"fail: {line}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
