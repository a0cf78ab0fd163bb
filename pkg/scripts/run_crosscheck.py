"""Exhaustive frontier DP / published DP / oracle sweep over labeled trees.

Writes the summary and the earliest counterexamples of each kind to
findings/published_vs_frontier.json (or --out).

    python3 scripts/run_crosscheck.py --max-n 8
"""

import argparse
import time
from pathlib import Path

from qpdom.sweep import sweep, write_findings


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--findings", type=int, default=50, help="rows kept per kind and order")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "findings" / "published_vs_frontier.json"))
    args = ap.parse_args()

    t0 = time.perf_counter()
    result = sweep(args.max_n, 0, args.workers, max_findings=args.findings)
    elapsed = time.perf_counter() - t0
    print(f"{'n':>3} {'trees':>10} {'pairs':>10} {'oracle':>7} {'published':>9} {'extremal':>9}")
    for o in result.orders:
        print(
            f"{o.n:>3} {o.trees:>10} {o.pairs:>10} {o.frontier_oracle_mismatches:>7}"
            f" {o.published_frontier_discrepancies:>9} {o.extremal_mismatches:>9}"
        )
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_findings(result, args.out)
    print(f"{elapsed:.1f} s, findings in {args.out}")
    if result.total("frontier_oracle_mismatches"):
        raise SystemExit(2)


if __name__ == "__main__":
    main()
