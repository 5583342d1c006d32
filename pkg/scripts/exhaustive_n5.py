"""Exhaustive run over all 59386 normalized five-point systems.

Checks both extractions on every admissible system and counts how often
an induced P4 minor exists without a bidirectional pair.
"""

import argparse
import time

from autsys import (
    extract_p3,
    extract_p4,
    find_bidirectional_pair,
    find_nonintersecting_pair,
    induced_minor,
    p_n,
    path_system,
    subdot_reachable,
    verify_witness,
)
from autsys.gen import enumerate_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--examples", type=int, default=3, help="converse counterexamples to print")
    args = ap.parse_args()
    P3, P4 = p_n(3), path_system(["a", "x", "y", "b"])
    counts = dict(systems=0, non_posets=0, with_pair=0, p3_failures=0, p4_failures=0,
                  pair_without_minor=0, minor_without_pair=0, subdot_without_pair=0)
    shown = 0
    t0 = time.perf_counter()
    for P in enumerate_all(5, normalized=True, max_n=5):
        counts["systems"] += 1
        bad = find_nonintersecting_pair(P)
        if bad is not None:
            counts["non_posets"] += 1
            counts["p3_failures"] += not verify_witness(extract_p3(P, *bad), P3)
        pair = find_bidirectional_pair(P)
        minor = induced_minor(P, P4)
        if pair is not None:
            counts["with_pair"] += 1
            counts["p4_failures"] += not verify_witness(extract_p4(P, pair), P4)
            counts["pair_without_minor"] += minor is None
        elif minor is not None:
            counts["minor_without_pair"] += 1
            counts["subdot_without_pair"] += subdot_reachable(P, P4) is not None
            if shown < args.examples:
                shown += 1
                print(P)
                print("  " + "\n  ".join(minor.narrative()))
    for k, v in counts.items():
        print(f"{k:>22}: {v}")
    print(f"{time.perf_counter() - t0:.0f}s")


if __name__ == "__main__":
    main()
