"""Brute-force ground truth for small trees.

The search walks subsets by increasing size, so the first feasible size is the
minimum. Subsets are Python-int bitmasks (bit v-1 for vertex v).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels as K
from .errors import BadK, TooLarge
from .tree_core import Tree

DEFAULT_CAP = 20


def oracle_cap() -> int:
    return int(os.environ.get("QPDOM_ORACLE_CAP", DEFAULT_CAP))


@dataclass
class OracleResult:
    value: int
    witnesses: list[frozenset[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"value": self.value, "witnesses": [sorted(w) for w in self.witnesses]}


def _check_k(k: int) -> None:
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")


def _mask(s) -> int:
    m = 0
    for v in s:
        m |= 1 << (v - 1)
    return m


def _worst_count(nb: list[int], n: int, m: int) -> int:
    """Max |N(v) & S| over v outside S, or -1 if some outside vertex is undominated."""
    worst = 0
    for v in range(n):
        if not (m >> v) & 1:
            c = (nb[v] & m).bit_count()
            if c == 0:
                return -1
            worst = max(worst, c)
    return worst


def is_dominating(t: Tree, s) -> bool:
    return _worst_count(t.neighbor_masks, t.n, _mask(t.check_set(s))) >= 0


def is_k_quasiperfect(t: Tree, s, k: int) -> bool:
    """Dominating, and no outside vertex has more than k neighbors inside."""
    _check_k(k)
    return 0 <= _worst_count(t.neighbor_masks, t.n, _mask(t.check_set(s))) <= k


def violations(t: Tree, s, k: int) -> dict:
    """Undominated vertices and over-dominated vertices (with their counts)."""
    members = t.check_set(s)
    adj = t.adjacency
    under, over = [], {}
    for v in range(1, t.n + 1):
        if v in members:
            continue
        c = sum(1 for w in adj[v] if w in members)
        if c == 0:
            under.append(v)
        elif c > k:
            over[v] = c
    return {"undominated": under, "over_dominated": over}


def brute_min(
    t: Tree,
    k: int,
    collect_all: bool = False,
    cap: int | None = None,
    limit: int | None = None,
) -> OracleResult:
    """Minimum k-quasiperfect dominating sets by exhaustive search.

    Witnesses come out in lexicographic order of their sorted members. With
    ``collect_all`` every minimum set is returned (at most ``limit``).
    """
    _check_k(k)
    cap = oracle_cap() if cap is None else cap
    n = t.n
    if n > cap:
        raise TooLarge(f"n = {n} exceeds oracle cap {cap}")
    nb = t.neighbor_masks
    for size in range(1, n + 1):
        found = []
        for combo in combinations(range(n), size):
            m = 0
            for v in combo:
                m |= 1 << v
            if 0 <= _worst_count(nb, n, m) <= k:
                found.append(frozenset(v + 1 for v in combo))
                if not collect_all or (limit is not None and len(found) >= limit):
                    break
        if found:
            return OracleResult(size, found)
    raise AssertionError("the full vertex set always qualifies")


def plain_domination_number(t: Tree, cap: int | None = None) -> int:
    """Minimum dominating set size, with no upper limit on outside counts."""
    cap = oracle_cap() if cap is None else cap
    if t.n > cap:
        raise TooLarge(f"n = {t.n} exceeds oracle cap {cap}")
    nb = t.neighbor_masks
    for size in range(1, t.n + 1):
        for combo in combinations(range(t.n), size):
            if _worst_count(nb, t.n, sum(1 << v for v in combo)) >= 0:
                return size
    raise AssertionError("the full vertex set always dominates")


def chain_profile(t: Tree) -> list[int]:
    """Oracle QP-chain: entry k-1 is the minimum for k = 1..max(1, Delta).

    One scan over all 2^n subsets (compiled); used for bulk sweeps.
    """
    n = t.n
    if n > oracle_cap():
        raise TooLarge(f"n = {n} exceeds oracle cap {oracle_cap()}")
    kmax = max(t.max_degree, 1)
    nb = K.neighbor_masks(t.offsets, t.targets, n)
    best = K.min_by_overload(nb, n, kmax)
    return np.minimum.accumulate(best)[1:].tolist()


def subset_profile(t: Tree) -> np.ndarray:
    """Per-subset worst outside count (-1 if not dominating), indexed by bitmask."""
    if t.n > oracle_cap():
        raise TooLarge(f"n = {t.n} exceeds oracle cap {oracle_cap()}")
    nb = K.neighbor_masks(t.offsets, t.targets, t.n)
    return K.mask_profile(nb, t.n)


def mask_to_set(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if (m >> i) & 1)
