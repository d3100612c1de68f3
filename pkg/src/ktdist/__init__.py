"""Clique distance matrices of k-trees and their exact integer invariants."""

from .graph import (
    SimpleGraph,
    are_isomorphic,
    canonical_form,
    decode_graph6,
    encode_graph6,
    enumerate_cliques,
)
from .ktree import KTree, attach, base_ktree, from_trace, generate_all, is_ktree
from .linalg import SnfResult, determinant, gcd_of_minors_snf, is_unimodular, snf
from .metric import (
    DistanceMatrix,
    NotConnectedError,
    d_clique_graph,
    d_distance_matrix,
    extend_by_attachment,
    ktree_distance_matrix,
    permutation_conjugate,
    recursive_distance_matrix,
)
from .theory import (
    arrow_matrix,
    bordered_snf,
    mk_matrix,
    mk_snf,
    pm_qm_matrices,
    predicted_det,
    predicted_snf,
    reduce_to_arrow,
    survey_snf,
    verify_equivalence,
    verify_theorem,
)

__version__ = "0.1.0"
