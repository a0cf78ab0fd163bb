"""Linear-time k-quasiperfect domination numbers of trees.

Two dynamic programs share the same bottom-up fold over a parent array
(children carry larger ids than parents, so one reverse sweep suffices):

* ``qp_number_paper``: a single (b, z) pair per vertex, the published transitions.
* ``qp_number_frontier``: one B entry per exact in-set neighbor count z = 1..k-1,
  O(n k) time. This one is the reference; it is checked against brute force.

Either function accepts a :class:`Tree` (rooted at vertex 1 on the fly) or a
:class:`RootedTree`. Witness codes always use the caller's vertex ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import BadK
from .tree_core import RootedTree, Tree, as_rooted

INFINITY = math.inf


def _ext(x) -> int | float:
    x = int(x)
    return INFINITY if x == K.INF else x


def _check_k(k: int) -> None:
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")


def _effective_k(rt: RootedTree, k: int) -> int:
    # beyond the maximum degree every dominating set qualifies
    return min(k, max(rt.max_degree, 1))


@dataclass(frozen=True)
class DPStateVector:
    a: int | float
    b: int | float
    c: int | float
    d: int | float
    z: int | float


@dataclass(frozen=True)
class FrontierStateVector:
    a: int | float
    b_by_z: tuple  # b_by_z[z - 1] for z = 1..k-1
    c: int | float
    d: int | float

    @property
    def b(self):
        return min(self.b_by_z, default=INFINITY)


@dataclass
class ChainReport:
    delta: int
    values: list[int]
    codes: list[frozenset[int]] | None = None

    @property
    def gamma(self) -> int:
        return self.values[-1]

    def flags(self) -> list[str]:
        """'=' or '>' between consecutive chain entries."""
        return ["=" if x == y else ">" for x, y in zip(self.values, self.values[1:])]

    def to_dict(self) -> dict:
        out = {"delta": self.delta, "values": list(self.values)}
        if self.codes is not None:
            out["codes"] = [sorted(c) for c in self.codes]
        return out


def qp_number_paper(t: Tree | RootedTree, k: int) -> int:
    _check_k(k)
    rt = as_rooted(t).rooted
    value, *_ = K.paper_dp(rt.parent, rt.n, k)
    return int(value)


def paper_tables(t: Tree | RootedTree, k: int) -> list[DPStateVector]:
    """Final (a, b, c, d, z) of every vertex in the rooted numbering (index 0 unused)."""
    _check_k(k)
    rt = as_rooted(t).rooted
    _, a, b, c, d, z = K.paper_dp(rt.parent, rt.n, k)
    rows = zip(a.tolist(), b.tolist(), c.tolist(), d.tolist(), z.tolist())
    return [DPStateVector(*map(_ext, row)) for row in rows]


def qp_number_frontier(t: Tree | RootedTree, k: int) -> int:
    _check_k(k)
    rt = as_rooted(t).rooted
    return int(K.frontier_value(rt.parent, rt.n, _effective_k(rt, k)))


def frontier_tables(t: Tree | RootedTree, k: int) -> list[FrontierStateVector]:
    _check_k(k)
    rt = as_rooted(t).rooted
    kk = _effective_k(rt, k)
    T, _, _ = K.frontier_dp(rt.parent, rt.n, kk, False)
    out = []
    for row in T.tolist():
        row = [_ext(x) for x in row]
        out.append(FrontierStateVector(row[0], tuple(row[1:kk]), row[kk], row[kk + 1]))
    return out


def qp_code(t: Tree | RootedTree, k: int) -> frozenset[int]:
    """A minimum k-quasiperfect dominating set, rebuilt from recorded DP choices.

    Ties resolve in evaluation order (A, then B by increasing z, then C), so
    the output is deterministic.
    """
    _check_k(k)
    rooting = as_rooted(t)
    rt = rooting.rooted
    kk = _effective_k(rt, k)
    T, rp, rc = K.frontier_dp(rt.parent, rt.n, kk, True)
    root_state = int(np.argmin(T[1, : kk + 1]))
    need = K.backtrack(rt.parent, rt.n, kk, root_state, rp, rc)
    chosen = np.flatnonzero(need == kk)
    return frozenset(rooting.new_to_old[chosen].tolist())


def domination_number(t: Tree | RootedTree) -> int:
    rt = as_rooted(t).rooted
    return qp_number_frontier(rt, max(rt.max_degree, 1))


def qp_chain(t: Tree | RootedTree, with_codes: bool = False) -> ChainReport:
    """gamma_{1k} for k = 1..Delta (a single entry when Delta = 0, i.e. K1)."""
    rooting = as_rooted(t)
    rt = rooting.rooted
    delta = rt.max_degree
    ks = range(1, max(delta, 1) + 1)
    values = [qp_number_frontier(rt, k) for k in ks]
    codes = None
    if with_codes:
        codes = [qp_code(t, k) for k in ks]
    return ChainReport(delta, values, codes)
