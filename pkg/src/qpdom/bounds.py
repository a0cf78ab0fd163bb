"""Upper bound machinery and the extremal (gamma_11 = 2 gamma - 1) characterization."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from . import _kernels as K
from .errors import BadK, BadParam, NotDominating, NotExtremal, NotGammaCode, TooSmall
from .oracle import is_dominating
from .qp_dp import domination_number
from .tree_core import Tree, induced_components, leaves, strong_support_vertices, support_vertices


def upper_bound(gamma: int, k: int) -> int:
    """gamma + ceil(gamma / k) - 1."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    if gamma < 1:
        raise BadParam(f"gamma must be >= 1, got {gamma}")
    return gamma + ceil(gamma / k) - 1


@dataclass
class AugmentationTrace:
    start: frozenset[int]
    added: list[int] = field(default_factory=list)
    result: frozenset[int] = frozenset()
    component_counts: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "start": sorted(self.start),
            "added": list(self.added),
            "result": sorted(self.result),
            "component_counts": list(self.component_counts),
        }


def _inside_counts(t: Tree, members: set[int]) -> dict[int, int]:
    adj = t.adjacency
    return {
        v: sum(1 for w in adj[v] if w in members) for v in range(1, t.n + 1) if v not in members
    }


def augment_code(t: Tree, s, k: int) -> AugmentationTrace:
    """Grow a dominating set until no outside vertex sees more than k members.

    Each step adds the outside vertex with the most inside neighbors (smallest
    id on ties). Its inside neighbors lie in distinct components of T[S], so
    the component count drops by at least k per step.
    """
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    members = set(t.check_set(s))
    if not is_dominating(t, members):
        raise NotDominating("augmentation needs a dominating start set")
    trace = AugmentationTrace(start=frozenset(members))
    trace.component_counts.append(len(induced_components(t, members)))
    while True:
        counts = _inside_counts(t, members)
        worst = max(counts.values(), default=0)
        if worst <= k:
            break
        x = min(v for v, c in counts.items() if c == worst)
        members.add(x)
        trace.added.append(x)
        trace.component_counts.append(len(induced_components(t, members)))
    trace.result = frozenset(members)
    return trace


def perfect_closure(t: Tree, s) -> frozenset[int]:
    """S plus every component of T - (S + outside leaves) holding a vertex with >= 2 members as neighbors.

    The result is a perfect dominating set of size at most 2|S| - 1 and lies
    inside every perfect dominating set containing S.
    """
    members = t.check_set(s)
    if not is_dominating(t, members) or len(members) != domination_number(t):
        raise NotGammaCode("perfect_closure needs a minimum dominating set")
    loose_leaves = leaves(t) - members if t.n > 1 else frozenset()
    rest = frozenset(range(1, t.n + 1)) - members - loose_leaves
    adj = t.adjacency
    out = set(members)
    for comp in induced_components(t, rest):
        if any(sum(1 for w in adj[v] if w in members) >= 2 for v in comp):
            out |= comp
    return frozenset(out)


@dataclass
class ExtremalReport:
    is_extremal: bool
    strong_supports: frozenset[int]
    condition1: bool
    condition2: bool
    failing_component: frozenset[int] | None = None

    def to_dict(self) -> dict:
        return {
            "is_extremal": self.is_extremal,
            "strong_supports": sorted(self.strong_supports),
            "condition1": self.condition1,
            "condition2": self.condition2,
            "failing_component": None
            if self.failing_component is None
            else sorted(self.failing_component),
        }


def extremal_check(t: Tree) -> ExtremalReport:
    """Structural test for gamma_11(T) = 2 gamma(T) - 1, linear time.

    Condition 1: the strong support vertices form an independent dominating
    set. Condition 2: every component C of T minus strong supports and leaves
    has exactly |C| + 1 strong-support neighbors. Valid for n >= 3; on P2
    the conditions fail although gamma_11 = 1 = 2 gamma - 1.
    """
    if t.n < 2:
        raise TooSmall("extremal_check needs n >= 2")
    c1, c2, bad = K.extremal_flags(t.offsets, t.targets, t.n)
    strong = strong_support_vertices(t)
    failing = None
    if not c2:
        rest = frozenset(range(1, t.n + 1)) - strong - leaves(t)
        failing = next(c for c in induced_components(t, rest) if int(bad) in c)
    return ExtremalReport(bool(c1 and c2), strong, bool(c1), bool(c2), failing)


def support_vertex_lemma_check(t: Tree) -> bool:
    """On an extremal tree: all supports are strong, and they form the unique gamma-code.

    Uniqueness follows once the strong supports dominate with exactly gamma
    vertices, because every gamma-code contains every strong support vertex.
    """
    if not extremal_check(t).is_extremal:
        raise NotExtremal("tree does not satisfy the extremal conditions")
    strong = strong_support_vertices(t)
    return (
        support_vertices(t) == strong
        and is_dominating(t, strong)
        and len(strong) == domination_number(t)
    )
