"""Minimum-error discrimination of the double-trine ensemble.

Global, separable and LOCC optima, a protocol-tree simulator, and
certificates that the separable optimum is out of reach for LOCC.
"""

from .discrimination import (
    OptimalityReport,
    Povm,
    error_probability,
    extract_optimal_basis,
    helstrom_binary,
    holevo_optimality_check,
    lemma1_det_delta,
    lemma1_min_error,
    pgm,
    povm_distance,
)
from .locc import (
    ONE_WAY_OPTIMUM,
    AliceDirection,
    bob_posterior,
    det_delta_closed_form,
    one_way_branch_error,
    one_way_optimum,
    two_way_error,
    two_way_optimum,
    two_way_sweep,
    two_way_tree,
)
from .nogo import (
    HaltingOperator,
    NogoReport,
    adjugate_identity_residual,
    build_E,
    commutator_closed_form,
    commutator_residual,
    nogo_certificate,
    sep_rhs_bound,
)
from .protocol import Leaf, Node, simulate_protocol
from .separability import SeparabilityReport, ppt_separable, product_decomposition, separable_pgm
from .states import WeightedEnsemble, concurrence, double_trine, pgm_basis_F, singlet

__version__ = "0.1.0"

__all__ = [
    "ONE_WAY_OPTIMUM",
    "AliceDirection",
    "HaltingOperator",
    "Leaf",
    "Node",
    "NogoReport",
    "OptimalityReport",
    "Povm",
    "SeparabilityReport",
    "WeightedEnsemble",
    "adjugate_identity_residual",
    "bob_posterior",
    "build_E",
    "commutator_closed_form",
    "commutator_residual",
    "concurrence",
    "det_delta_closed_form",
    "double_trine",
    "error_probability",
    "extract_optimal_basis",
    "helstrom_binary",
    "holevo_optimality_check",
    "lemma1_det_delta",
    "lemma1_min_error",
    "nogo_certificate",
    "one_way_branch_error",
    "one_way_optimum",
    "pgm",
    "pgm_basis_F",
    "povm_distance",
    "ppt_separable",
    "product_decomposition",
    "sep_rhs_bound",
    "separable_pgm",
    "simulate_protocol",
    "singlet",
    "two_way_error",
    "two_way_optimum",
    "two_way_sweep",
    "two_way_tree",
]
