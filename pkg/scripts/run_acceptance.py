"""Run the acceptance sweeps and print one pass/fail line per criterion."""

import argparse
import sys

from compatorder.sweeps import SweepConfig, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-points", type=int, default=SweepConfig.max_points)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--only", type=int, nargs="*")
    args = ap.parse_args()
    results = run_suite(SweepConfig(max_points=args.max_points, seed=args.seed), args.only or None)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
