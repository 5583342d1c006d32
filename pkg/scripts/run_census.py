"""Run every acceptance criterion and print one line per criterion."""

import argparse
import sys

from autsys.census import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000, help="seeded random five-point systems")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=3, help="failures printed per criterion")
    args = ap.parse_args()
    results = run_all(samples=args.samples, seed=args.seed, echo=print)
    for r in results:
        for f in r.failures[: args.show]:
            print(f"  #{r.number}: {f}")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
