"""Run every identity suite over a range of n and print one line per suite.

    python3 scripts/verify_all.py --n-max 10
"""

import argparse
import sys
import time

from quadcycles.identities import SUITES, run_verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--suite", default=None, help="comma-separated names or globs")
    args = ap.parse_args()
    ok = True
    for name in SUITES:
        if args.suite and name not in args.suite.split(","):
            continue
        start = time.perf_counter()
        report = run_verify(args.n_min, args.n_max, name)
        ok &= report.ok
        status = "ok" if report.ok else f"{len(report.failures())} FAILED"
        print(f"{name:32s} {len(report.checks):6d} checks  {status:10s} {time.perf_counter() - start:6.2f}s")
        for c in report.failures()[:3]:
            print(f"    {c.params}: {c.witness}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
