"""Tree families: closed forms, realization constructions, random and exhaustive streams.

Constructions whose exact shape is reconstructed rather than copied verify
their own QP-chain before returning and raise ``ConstructionUnverified``
otherwise.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterator

import networkx as nx
import numpy as np

from . import _kernels as K
from .bounds import upper_bound
from .errors import BadParam, ConstructionUnverified, NotFound, TooLarge
from .oracle import chain_profile, oracle_cap
from .qp_dp import domination_number, qp_chain, qp_number_frontier
from .tree_core import Tree, from_edge_list, leaves

MAX_LABELED_N = 9
MAX_FREE_N = 16  # exhaustive free-tree search limit in tight_witness_search


class _Builder:
    """Incremental edge list with fresh ids."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self, attach_to: int | None = None) -> int:
        self.n += 1
        if attach_to is not None:
            self.edges.append((attach_to, self.n))
        return self.n

    def leaves(self, v: int, count: int) -> list[int]:
        return [self.vertex(v) for _ in range(count)]

    def path(self, order: int) -> list[int]:
        out = []
        for _ in range(order):
            out.append(self.vertex(out[-1] if out else None))
        return out

    def tree(self) -> Tree:
        return from_edge_list(self.edges, n=self.n)


# ---------------------------------------------------------------------------
# closed-form families
# ---------------------------------------------------------------------------


def path(n: int) -> Tree:
    if n < 1:
        raise BadParam("path needs n >= 1")
    return from_edge_list([(i, i + 1) for i in range(1, n)], n=n)


def star(n: int) -> Tree:
    """K_{1,n-1}, center 1."""
    if n < 1:
        raise BadParam("star needs n >= 1")
    return from_edge_list([(1, i) for i in range(2, n + 1)], n=n)


def corona(t: Tree) -> Tree:
    """One pendant leaf per vertex; leaf of v gets id v + n."""
    us, vs = t.edge_arrays()
    base = np.arange(1, t.n + 1)
    return Tree.from_arrays(2 * t.n, np.concatenate([us, base]), np.concatenate([vs, base + t.n]))


def comb(m: int) -> Tree:
    if m < 3:
        raise BadParam("comb needs m >= 3")
    return corona(path(m))


def caterpillar_equal(a: int, n: int) -> Tree:
    """Spine of order a, one leaf on each of the first a-1 spine vertices, the rest on the last."""
    if a < 1 or n < 2 * a:
        raise BadParam("caterpillar_equal needs a >= 1 and n >= 2a")
    b = _Builder()
    spine = b.path(a)
    for u in spine[:-1]:
        b.leaves(u, 1)
    b.leaves(spine[-1], n - 2 * a + 1)
    return b.tree()


def caterpillar_gap(a: int, b: int, n: int) -> Tree:
    """Caterpillar with gamma = a and gamma_11 = b.

    Spine u_1, v_1, ..., u_{b-a}, v_{b-a}, u_{b-a+1}, ..., u_a. Two leaves on
    u_1..u_{b-a}, one on u_{b-a+2}..u_a, and n - 2b + 1 on u_{b-a+1}.
    """
    if not (2 <= a < b <= 2 * a - 1) or n <= 2 * b:
        raise BadParam("caterpillar_gap needs 2 <= a < b <= 2a - 1 and n > 2b")
    g = b - a
    bld = _Builder()
    spine = bld.path(b)
    u = spine[0 : 2 * g : 2] + spine[2 * g :]  # u_1..u_a
    for x in u[:g]:
        bld.leaves(x, 2)
    bld.leaves(u[g], n - 2 * b + 1)
    for x in u[g + 1 :]:
        bld.leaves(x, 1)
    return bld.tree()


def random_caterpillar(n: int, seed: int) -> Tree:
    """Random spine length, remaining vertices hung as leaves on random spine vertices."""
    if n < 1:
        raise BadParam("random_caterpillar needs n >= 1")
    rng = np.random.default_rng(seed)
    spine_len = int(rng.integers(1, n + 1))
    b = _Builder()
    spine = b.path(spine_len)
    for x in rng.integers(0, spine_len, size=n - spine_len):
        b.leaves(spine[int(x)], 1)
    return b.tree()


# ---------------------------------------------------------------------------
# QP-chain realization
# ---------------------------------------------------------------------------


def _verify_chain(t: Tree, delta: int, expected_flags: list[str], label: str) -> Tree:
    if t.max_degree != delta:
        raise ConstructionUnverified(f"{label}: max degree {t.max_degree} != {delta}")
    flags = qp_chain(t).flags()
    if flags != expected_flags:
        raise ConstructionUnverified(f"{label}: chain pattern {flags} != {expected_flags}")
    return t


def chain_case11(delta: int) -> Tree:
    if delta < 3:
        raise BadParam("chain constructions need delta >= 3")
    return _verify_chain(star(delta + 1), delta, ["="] * (delta - 1), "case 1.1")


def chain_case12(delta: int) -> Tree:
    """Center u joined to x_1..x_delta, each x_i carrying delta - 1 leaves.

    Expected chain: delta + 1 up to k = delta - 1, then delta.
    """
    if delta < 3:
        raise BadParam("chain constructions need delta >= 3")
    b = _Builder()
    u = b.vertex()
    for _ in range(delta):
        b.leaves(b.vertex(u), delta - 1)
    t = b.tree()
    values = qp_chain(t).values
    want = [delta + 1] * (delta - 1) + [delta]
    if values != want:
        raise ConstructionUnverified(f"case 1.2: chain {values} != {want}")
    return _verify_chain(t, delta, ["="] * (delta - 2) + [">"], "case 1.2")


def _check_strict(delta: int, strict_set) -> list[int]:
    if delta < 4:
        raise BadParam("case 2 constructions need delta >= 4")
    idx = sorted(set(int(i) for i in strict_set))
    if not idx or idx[0] < 1 or idx[-1] > delta - 2:
        raise BadParam(f"strict_set must be a nonempty subset of 1..{delta - 2}")
    return idx


def _case2_tree(delta: int, idx: list[int], heavy_w: bool) -> Tree:
    b = _Builder()
    spine = b.path(len(idx) + 2)  # u_{i_1}, ..., u_{i_q}, v, w
    for u, i in zip(spine, idx):
        for _ in range(i):
            b.leaves(b.vertex(u), delta - 1)
    b.leaves(spine[-2], delta - 2)
    if heavy_w:
        for _ in range(delta - 1):
            b.leaves(b.vertex(spine[-1]), delta - 1)
    return b.tree()


def _flags_for(delta: int, idx: list[int], last: str) -> list[str]:
    flags = [">" if i in idx else "=" for i in range(1, delta - 1)]
    return flags + [last]


def chain_case21(delta: int, strict_set) -> Tree:
    """Strict drops exactly at ``strict_set``, equality at delta - 1."""
    idx = _check_strict(delta, strict_set)
    return _verify_chain(_case2_tree(delta, idx, False), delta, _flags_for(delta, idx, "="), "case 2.1")


def chain_case22(delta: int, strict_set) -> Tree:
    """Strict drops at ``strict_set`` and at delta - 1."""
    idx = _check_strict(delta, strict_set)
    return _verify_chain(_case2_tree(delta, idx, True), delta, _flags_for(delta, idx, ">"), "case 2.2")


def _delta3_strict(last: str) -> Tree:
    # the case-2 layout with delta = 3 gives (3, 2, 2); gluing a leaf of it to a
    # leaf of the case-1.2 tree (4, 4, 3) adds the two chains: (7, 6, 5)
    base = _case2_tree(3, [1], False)
    if last == "=":
        return _verify_chain(base, 3, [">", "="], "delta 3, pattern >=")
    other = chain_case12(3)
    shift = other.n
    edges = other.edges() + [(u + shift, v + shift) for u, v in base.edges()]
    edges.append((max(leaves(other)), max(leaves(base)) + shift))
    return _verify_chain(from_edge_list(edges), 3, [">", ">"], "delta 3, pattern >>")


def chain_for_pattern(delta: int, flags: str | list[str]) -> Tree:
    """Tree whose QP-chain has the given '='/'>' pattern (length delta - 1)."""
    flags = list(flags)
    if delta < 3 or len(flags) != delta - 1 or set(flags) - {"=", ">"}:
        raise BadParam(f"pattern needs delta >= 3 and {delta - 1} symbols from '=' and '>'")
    strict = [i for i, f in enumerate(flags[:-1], start=1) if f == ">"]
    if not strict:
        return chain_case11(delta) if flags[-1] == "=" else chain_case12(delta)
    if delta == 3:
        return _delta3_strict(flags[-1])
    return chain_case21(delta, strict) if flags[-1] == "=" else chain_case22(delta, strict)


# ---------------------------------------------------------------------------
# random and exhaustive streams
# ---------------------------------------------------------------------------


def prufer_to_tree(seq, n: int | None = None) -> Tree:
    seq = np.asarray(seq, dtype=np.int64).reshape(-1)
    n = seq.size + 2 if n is None else n
    if n == 1:
        return Tree.from_arrays(1, [], [])
    if seq.size != n - 2 or (seq.size and (seq.min() < 1 or seq.max() > n)):
        raise BadParam(f"Prüfer sequence for n = {n} needs {n - 2} entries in 1..{n}")
    us, vs = K.prufer_decode(seq, n)
    return Tree.from_arrays(n, us, vs)


def random_tree(n: int, seed: int) -> Tree:
    """Uniform labeled tree from a random Prüfer sequence."""
    if n < 1:
        raise BadParam("random_tree needs n >= 1")
    if n <= 2:
        return path(n)
    rng = np.random.default_rng(seed)
    return prufer_to_tree(rng.integers(1, n + 1, size=n - 2), n)


def all_labeled_trees(n: int) -> Iterator[Tree]:
    """Every labeled tree on 1..n, in Prüfer-sequence lexicographic order."""
    if n < 1:
        raise BadParam("n must be >= 1")
    if n > MAX_LABELED_N:
        raise TooLarge(f"labeled enumeration capped at n = {MAX_LABELED_N}")
    if n <= 2:
        yield path(n)
        return
    for seq in product(range(1, n + 1), repeat=n - 2):
        yield prufer_to_tree(seq, n)


def all_free_trees(n: int) -> Iterator[Tree]:
    """One representative per isomorphism class."""
    if n < 1:
        raise BadParam("n must be >= 1")
    if n <= 2:
        yield path(n)
        return
    for g in nx.nonisomorphic_trees(n):
        yield from_edge_list([(u + 1, v + 1) for u, v in g.edges()], n=n)


def canonical_form(t: Tree) -> str:
    """AHU encoding rooted at the center (minimum over two centers)."""
    if t.n == 1:
        return "()"
    adj = t.adjacency
    deg = t.degrees.tolist()
    layer = [v for v in range(1, t.n + 1) if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    centers = layer

    def encode(root: int) -> str:
        order, par = [root], {root: 0}
        for v in order:
            for w in adj[v]:
                if w != par[v]:
                    par[w] = v
                    order.append(w)
        code: dict[int, list[str]] = {v: [] for v in order}
        out = ""
        for v in reversed(order):
            out = "(" + "".join(sorted(code[v])) + ")"
            if par[v]:
                code[par[v]].append(out)
        return out

    return min(encode(c) for c in centers)


def tight_witness_search(
    a: int, k: int, max_n: int, seed: int = 0, random_budget: int = 2000
) -> Tree:
    """A tree with gamma = a and gamma_1k = a + ceil(a/k) - 1.

    Exhaustive over free trees up to order ``MAX_FREE_N``, random labeled
    trees beyond that. Hits are re-checked against brute force when small
    enough.
    """
    if a < 2 or not 1 <= k < a:
        raise BadParam("need a >= 2 and 1 <= k < a")
    target = upper_bound(a, k)
    rng = np.random.default_rng(seed)
    for n in range(2 * a, max_n + 1):  # gamma <= n/2
        if n <= MAX_FREE_N:
            candidates = all_free_trees(n)
        else:
            candidates = (random_tree(n, int(s)) for s in rng.integers(0, 2**32, random_budget))
        for t in candidates:
            if t.max_degree <= k:
                continue  # gamma_1k collapses to gamma
            if domination_number(t) == a and qp_number_frontier(t, k) == target:
                if t.n <= min(oracle_cap(), 16):
                    prof = chain_profile(t)
                    if prof[-1] != a or prof[k - 1] != target:
                        raise ConstructionUnverified("DP and oracle disagree on a search hit")
                return t
    raise NotFound(f"no tree with gamma = {a}, gamma_1{k} = {target} up to n = {max_n}")


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------

FAMILIES = {
    "path": lambda p: path(p["n"]),
    "star": lambda p: star(p["n"]),
    "corona": lambda p: corona(random_tree(p["n"], p.get("seed", 0))),
    "comb": lambda p: comb(p["m"]),
    "caterpillar_equal": lambda p: caterpillar_equal(p["a"], p["n"]),
    "caterpillar_gap": lambda p: caterpillar_gap(p["a"], p["b"], p["n"]),
    "chain_case11": lambda p: chain_case11(p["delta"]),
    "chain_case12": lambda p: chain_case12(p["delta"]),
    "chain_case21": lambda p: chain_case21(p["delta"], p["strict"]),
    "chain_case22": lambda p: chain_case22(p["delta"], p["strict"]),
    "chain_pattern": lambda p: chain_for_pattern(p["delta"], p["pattern"]),
    "random": lambda p: random_tree(p["n"], p.get("seed", 0)),
    "random_caterpillar": lambda p: random_caterpillar(p["n"], p.get("seed", 0)),
    "tight": lambda p: tight_witness_search(p["a"], p["k"], p.get("max_n", 14), p.get("seed", 0)),
}


@dataclass
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> Tree:
        try:
            make = FAMILIES[self.family]
        except KeyError:
            raise BadParam(f"unknown family {self.family!r}") from None
        try:
            return make(self.params)
        except KeyError as exc:
            raise BadParam(f"{self.family} needs parameter {exc}") from None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        data = json.loads(text)
        return cls(data["family"], dict(data.get("params", {})))
