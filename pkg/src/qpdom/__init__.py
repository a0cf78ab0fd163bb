"""k-quasiperfect domination numbers, codes and QP-chains of trees."""

from .bounds import augment_code, extremal_check, perfect_closure, support_vertex_lemma_check, upper_bound
from .oracle import brute_min, is_dominating, is_k_quasiperfect
from .qp_dp import (
    ChainReport,
    domination_number,
    qp_chain,
    qp_code,
    qp_number_frontier,
    qp_number_paper,
)
from .tree_core import RootedTree, Tree, compose, from_edge_list, root_and_renumber

__all__ = [
    "ChainReport",
    "RootedTree",
    "Tree",
    "augment_code",
    "brute_min",
    "compose",
    "domination_number",
    "extremal_check",
    "from_edge_list",
    "is_dominating",
    "is_k_quasiperfect",
    "perfect_closure",
    "qp_chain",
    "qp_code",
    "qp_number_frontier",
    "qp_number_paper",
    "root_and_renumber",
    "support_vertex_lemma_check",
    "upper_bound",
]
