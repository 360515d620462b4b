"""Exact symmetric Jordan bases for subspace lattices over finite fields."""

from ._kernels import active_backend
from .cyclotomic import CycInt, cyc_matrix_rank
from .gflinalg import Subspace, as_fq_matrix, mu_apply, schubert_normal_form
from .haction import (
    Character,
    act,
    characters,
    eq_class,
    find_hyperplane,
    gamma,
    h_map,
    p_chi,
    perm_character,
    theta,
    verify_decomposition,
)
from .lattice import (
    LatticeVector,
    covers_of,
    enumerate_all,
    enumerate_rank,
    inner,
    norm_sq,
    up_apply,
)
from .qcombinatorics import (
    galois_number,
    is_prime,
    q_binomial,
    q_int,
    verify_identities,
)
from .reporting import Check, Report
from .scheme import (
    EigenRow,
    EigenStructureError,
    adjacency_apply,
    bareiss_det,
    charpoly_matches,
    check_theorem_gg,
    check_theorem_jg,
    eigentable,
    grassmann_graph,
    johnson_graph,
    johnson_rooted_tree_formula,
    laplacian_matrix,
    laplacian_spectrum,
    matrix_tree_oracle,
    rooted_tree_count,
    ud_du_count,
)
from .sjb import (
    SJB,
    JordanChain,
    construct_sjb,
    singular_value_sq,
    sjb_from_json,
    sjb_to_json,
    verify_sjb,
)

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "Character",
    "Check",
    "EigenRow",
    "EigenStructureError",
    "JordanChain",
    "LatticeVector",
    "Report",
    "SJB",
    "Subspace",
    "act",
    "active_backend",
    "adjacency_apply",
    "as_fq_matrix",
    "bareiss_det",
    "characters",
    "charpoly_matches",
    "check_theorem_gg",
    "check_theorem_jg",
    "construct_sjb",
    "covers_of",
    "cyc_matrix_rank",
    "eigentable",
    "enumerate_all",
    "enumerate_rank",
    "eq_class",
    "find_hyperplane",
    "galois_number",
    "gamma",
    "grassmann_graph",
    "h_map",
    "inner",
    "is_prime",
    "johnson_graph",
    "johnson_rooted_tree_formula",
    "laplacian_matrix",
    "laplacian_spectrum",
    "matrix_tree_oracle",
    "mu_apply",
    "norm_sq",
    "p_chi",
    "perm_character",
    "q_binomial",
    "q_int",
    "rooted_tree_count",
    "schubert_normal_form",
    "singular_value_sq",
    "sjb_from_json",
    "sjb_to_json",
    "theta",
    "ud_du_count",
    "up_apply",
    "verify_decomposition",
    "verify_identities",
    "verify_sjb",
]
