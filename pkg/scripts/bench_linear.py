"""Time the frontier DP on random trees of doubling size.

    python3 scripts/bench_linear.py --sizes 100000,200000,400000,800000,1600000 --k 3
"""

import argparse

from qpdom.cli import _human, cmd_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100000,200000,400000,800000")
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repetitions", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(_human(cmd_bench(sizes, args.k, args.seed, args.repetitions)))


if __name__ == "__main__":
    main()
