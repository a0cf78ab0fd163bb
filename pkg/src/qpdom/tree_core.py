"""Trees, rooted trees, structural queries and text/JSON formats.

Vertices are always ``1..n`` at the interface. A ``Tree`` stores its sorted
adjacency as CSR arrays so that million-vertex inputs stay cheap; small-tree
code can use :attr:`Tree.adjacency` for plain Python lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    BadVertexId,
    CycleDetected,
    DisconnectedInput,
    DuplicateEdge,
    ParseError,
    SelfLoop,
    TooSmall,
)

VertexSet = frozenset  # members drawn from 1..n of an associated tree


@dataclass(frozen=True, eq=False)
class Tree:
    n: int
    offsets: np.ndarray
    targets: np.ndarray

    @classmethod
    def from_arrays(cls, n: int, us, vs) -> "Tree":
        """Validate an edge list given as two id arrays and build the tree."""
        us = np.ascontiguousarray(us, dtype=np.int64)
        vs = np.ascontiguousarray(vs, dtype=np.int64)
        if n < 1:
            raise BadVertexId("a tree needs at least one vertex")
        if us.size and (min(us.min(), vs.min()) < 1 or max(us.max(), vs.max()) > n):
            raise BadVertexId(f"vertex ids must lie in 1..{n}")
        if np.any(us == vs):
            bad = int(us[us == vs][0])
            raise SelfLoop(f"self-loop at vertex {bad}")
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        if np.unique(lo * (n + 1) + hi).size != us.size:
            raise DuplicateEdge("edge listed more than once")
        status = K.forest_status(n, us, vs)
        if status == K._CYCLE:
            raise CycleDetected("edges contain a cycle")
        if status == K._DISCONNECTED:
            raise DisconnectedInput("edges do not connect all vertices 1..n")
        offsets, targets = K.build_csr(n, us, vs)
        return cls(n, offsets, targets)

    def neighbors(self, v: int) -> np.ndarray:
        return self.targets[self.offsets[v] : self.offsets[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        """Degree array, 1-indexed (slot 0 is 0)."""
        deg = np.zeros(self.n + 1, np.int64)
        deg[1:] = np.diff(self.offsets[1:])
        return deg

    @cached_property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """``adjacency[v]`` is the sorted neighbor list of v; index 0 is empty."""
        t = self.targets.tolist()
        o = self.offsets.tolist()
        return [[]] + [t[o[v] : o[v + 1]] for v in range(1, self.n + 1)]

    @cached_property
    def neighbor_masks(self) -> list[int]:
        """Bit v-1 set for each neighbor v (as Python ints, any n)."""
        return [sum(1 << (w - 1) for w in nbrs) for nbrs in self.adjacency[1:]]

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v, sorted lexicographically."""
        return [(u, w) for u in range(1, self.n + 1) for w in self.adjacency[u] if u < w]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        src = np.repeat(np.arange(self.n + 1), self.degrees)
        keep = src < self.targets
        return src[keep], self.targets[keep]

    def check_set(self, s: Iterable[int]) -> frozenset[int]:
        out = frozenset(int(v) for v in s)
        for v in out:
            if not 1 <= v <= self.n:
                raise BadVertexId(f"vertex {v} outside 1..{self.n}")
        return out

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.targets, other.targets) and np.array_equal(
            self.offsets, other.offsets
        )

    __hash__ = None

    def __repr__(self):
        if self.n <= 12:
            return f"Tree(n={self.n}, edges={self.edges()})"
        return f"Tree(n={self.n}, max_degree={self.max_degree})"


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Parent array with parent[i] < i for i >= 2; parent[0] and parent[1] are 0."""

    n: int
    parent: np.ndarray

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "RootedTree":
        """Build from ``parent[2..n]`` (the list may be empty for K1)."""
        p = np.asarray(parents, dtype=np.int64).reshape(-1)
        n = p.size + 1
        parent = np.zeros(n + 1, np.int64)
        parent[2:] = p
        idx = np.arange(n + 1)
        if n > 1 and (np.any(parent[2:] < 1) or np.any(parent[2:] >= idx[2:])):
            i = int(np.argmax((parent[2:] < 1) | (parent[2:] >= idx[2:]))) + 2
            raise BadVertexId(f"parent[{i}] = {parent[i]} must lie in 1..{i - 1}")
        return cls(n, parent)

    def to_tree(self) -> Tree:
        if self.n == 1:
            return Tree.from_arrays(1, [], [])
        return Tree.from_arrays(self.n, self.parent[2:], np.arange(2, self.n + 1))

    @cached_property
    def max_degree(self) -> int:
        deg = np.bincount(self.parent[2:], minlength=self.n + 1)
        deg[2:] += 1
        return int(deg.max()) if self.n > 1 else 0

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for i in range(2, self.n + 1):
            kids[int(self.parent[i])].append(i)
        return kids

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.parent, other.parent)

    __hash__ = None


class Rooting(NamedTuple):
    rooted: RootedTree
    old_to_new: np.ndarray
    new_to_old: np.ndarray


def from_edge_list(edges, n: int | None = None) -> Tree:
    """Validated tree from 1-indexed pairs; n defaults to the largest id (1 if empty)."""
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if n is None:
        n = int(arr.max()) if arr.size else 1
    return Tree.from_arrays(n, arr[:, 0], arr[:, 1])


def root_and_renumber(t: Tree, root: int = 1) -> Rooting:
    """Breadth-first renumbering from ``root`` so every parent precedes its children.

    Ties go to the smaller original id; the returned arrays map ids both ways
    (slot 0 unused).
    """
    if not 1 <= root <= t.n:
        raise BadVertexId(f"root {root} outside 1..{t.n}")
    parent, old_to_new, new_to_old = K.bfs_renumber(t.offsets, t.targets, t.n, root)
    return Rooting(RootedTree(t.n, parent), old_to_new, new_to_old)


def as_rooted(t: Tree | RootedTree) -> Rooting:
    """Root a Tree at vertex 1; a RootedTree passes through with identity maps."""
    if isinstance(t, RootedTree):
        ident = np.arange(t.n + 1)
        return Rooting(t, ident, ident)
    return root_and_renumber(t, 1)


def compose(t1: RootedTree, t2: RootedTree) -> RootedTree:
    """Join the two roots by an edge; t2 is shifted to n1+1..n1+n2, root stays t1's."""
    n1, n2 = t1.n, t2.n
    parent = np.zeros(n1 + n2 + 1, np.int64)
    parent[: n1 + 1] = t1.parent
    parent[n1 + 2 :] = t2.parent[2:] + n1
    if n2 >= 1:
        parent[n1 + 1] = 1
    return RootedTree(n1 + n2, parent)


def leaves(t: Tree) -> frozenset[int]:
    if t.n == 1:
        return frozenset({1})
    return frozenset(np.flatnonzero(t.degrees == 1).tolist())


def _leaf_counts(t: Tree) -> np.ndarray:
    is_leaf = (t.degrees == 1).astype(np.int64)
    src = np.repeat(np.arange(t.n + 1), t.degrees)
    return np.bincount(src, weights=is_leaf[t.targets], minlength=t.n + 1).astype(np.int64)


def support_vertices(t: Tree) -> frozenset[int]:
    if t.n < 2:
        raise TooSmall("support vertices need n >= 2")
    return frozenset(np.flatnonzero(_leaf_counts(t) >= 1).tolist())


def strong_support_vertices(t: Tree) -> frozenset[int]:
    if t.n < 2:
        raise TooSmall("support vertices need n >= 2")
    return frozenset(np.flatnonzero(_leaf_counts(t) >= 2).tolist())


def is_caterpillar(t: Tree) -> bool:
    """True iff deleting every leaf leaves a path (possibly empty or a single vertex)."""
    if t.n <= 2:
        return True
    is_leaf = t.degrees == 1
    src = np.repeat(np.arange(t.n + 1), t.degrees)
    inner = ~is_leaf[src] & ~is_leaf[t.targets]
    inner_deg = np.bincount(src[inner], minlength=t.n + 1)
    return bool(inner_deg.max() <= 2)


def induced_components(t: Tree, s: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of T[s], ordered by smallest member."""
    members = t.check_set(s)
    adj = t.adjacency
    seen: set[int] = set()
    comps = []
    for v in sorted(members):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w in members and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_parent_array(text: str) -> RootedTree:
    lines = _content_lines(text)
    try:
        n = int(lines[0])
        parents = [int(x) for ln in lines[1:] for x in ln.split()]
    except (IndexError, ValueError) as exc:
        raise ParseError(f"not a parent array: {exc}") from None
    if n < 1 or len(parents) != n - 1:
        raise ParseError(f"expected {n - 1} parents, got {len(parents)}")
    try:
        return RootedTree.from_parents(parents)
    except BadVertexId as exc:
        raise ParseError(str(exc)) from None


def parse_edge_list(text: str) -> Tree:
    pairs = []
    for ln in _content_lines(text):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"edge line needs two ids: {ln!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"non-integer id in {ln!r}") from None
    if not pairs:
        raise ParseError("empty edge list; use the parent format '1' for K1")
    return from_edge_list(pairs)


def detect_format(text: str) -> str:
    """'parent' when the first content line is a lone integer, else 'edges'."""
    lines = _content_lines(text)
    if lines and len(lines[0].split()) == 1:
        return "parent"
    return "edges"


def parse_tree(text: str, fmt: str | None = None) -> Tree | RootedTree:
    fmt = fmt or detect_format(text)
    if fmt == "parent":
        return parse_parent_array(text)
    if fmt == "edges":
        return parse_edge_list(text)
    raise ParseError(f"unknown format {fmt!r}")


def format_parent_array(t: RootedTree) -> str:
    return f"{t.n}\n{' '.join(map(str, t.parent[2:].tolist()))}\n"


def format_edge_list(t: Tree) -> str:
    return "".join(f"{u} {v}\n" for u, v in t.edges())


def tree_from_json(text: str) -> Tree:
    data = json.loads(text)
    return from_edge_list(data["edges"], n=data["n"])
