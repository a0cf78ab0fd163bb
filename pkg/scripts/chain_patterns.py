"""Realize every '='/'>' pattern of the QP-chain for the given maximum degrees.

    python3 scripts/chain_patterns.py 3 4 5 6
"""

import sys
from itertools import product

from qpdom.generators import chain_for_pattern
from qpdom.qp_dp import qp_chain


def main(deltas: list[int]) -> None:
    for delta in deltas:
        for flags in product("=>", repeat=delta - 1):
            t = chain_for_pattern(delta, flags)
            rep = qp_chain(t)
            status = "ok" if rep.flags() == list(flags) else "MISMATCH"
            print(f"delta={delta} {''.join(flags):<{delta}} n={t.n:<4} chain={rep.values} {status}")


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [3, 4, 5])
