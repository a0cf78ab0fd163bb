"""Search for trees meeting gamma_1k = gamma + ceil(gamma/k) - 1 with equality.

    python3 scripts/tight_witnesses.py --max-n 14
"""

import argparse
import time

from qpdom.bounds import extremal_check
from qpdom.generators import tight_witness_search
from qpdom.qp_dp import qp_chain


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=14)
    args = ap.parse_args()
    for a, k in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)]:
        t0 = time.perf_counter()
        t = tight_witness_search(a, k, args.max_n)
        line = f"a={a} k={k}: n={t.n} chain={qp_chain(t).values} ({time.perf_counter() - t0:.1f} s)"
        if k == 1:
            line += f" extremal={extremal_check(t).is_extremal}"
        print(line)
        print("   edges:", t.edges())


if __name__ == "__main__":
    main()
