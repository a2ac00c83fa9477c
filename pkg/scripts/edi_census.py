"""Count admissible EDI tables per quadric dimension and Witt-index context.

    python3 scripts/edi_census.py --n-max 10
    python3 scripts/edi_census.py --n-max 10 --write tests/snapshots/edi_counts.json
"""

import argparse
import json

from quadcycles.edi import WittContext, enumerate_admissible


def census(n: int) -> dict:
    row = {
        "isotropic-or-unknown": sum(1 for _ in enumerate_admissible(n, WittContext())),
        "anisotropic": sum(1 for _ in enumerate_admissible(n, WittContext(anisotropic=True))),
    }
    for i1 in range(1, n // 2 + 2):
        row[f"i1={i1}"] = sum(1 for _ in enumerate_admissible(n, WittContext(True, i1)))
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--write", metavar="PATH", help="store the counts as a JSON snapshot")
    args = ap.parse_args()
    counts = {}
    for n in range(args.n_min, args.n_max + 1):
        counts[str(n)] = census(n)
        print(n, " ".join(f"{k}:{v}" for k, v in counts[str(n)].items()), flush=True)
    if args.write:
        with open(args.write, "w", encoding="utf-8") as fh:
            json.dump(counts, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main()
