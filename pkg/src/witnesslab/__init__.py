"""Quantumness and entanglement witnesses on finite bipartite algebras.

The package builds the swap, Bell-CHSH, anticommutator and shifted-swap
witness operators and certifies their witness properties numerically:
quantumness against the classical states of a (possibly reducible)
bipartite operator algebra, entanglement against separable states.
"""

__version__ = "0.1.0"

from .linalg import (EigenSystem, anticommutator, commutator, direct_sum,
                     expectation, hermitian_eigensystem,
                     is_positive_semidefinite, load_matrix, matrix_from_json,
                     matrix_to_json, partial_transpose, save_matrix, tensor)
from .algebra import (BipartiteAlgebra, block_layout, classical_state,
                      classical_state_vertices, classicality_violation,
                      full_algebra, is_classical_state,
                      random_algebra_element)
from .states import (SeparableDecomposition, assert_density_matrix,
                     bell_state, chi_state, pure_state, random_density,
                     random_pure_product, random_separable)
from .witnesses import (DichotomicSettings, QubitQWParams, ShiftedSwapParams,
                        avr_asymmetric, avr_symmetric, bell_chsh,
                        fig1_surfaces, qubit_qw, qubit_qw_condition,
                        shifted_swap_factors, standard_bell_settings,
                        swap_operator)
from .verify import (ProbeReport, WitnessReport, check_entanglement_witness,
                     check_quantumness_witness, classical_lemma_test,
                     ew_implies_qw, theorem1_probe)

__all__ = [
    "__version__",
    "EigenSystem", "anticommutator", "commutator", "direct_sum",
    "expectation", "hermitian_eigensystem", "is_positive_semidefinite",
    "load_matrix", "matrix_from_json", "matrix_to_json", "partial_transpose",
    "save_matrix", "tensor",
    "BipartiteAlgebra", "block_layout", "classical_state",
    "classical_state_vertices", "classicality_violation", "full_algebra",
    "is_classical_state", "random_algebra_element",
    "SeparableDecomposition", "assert_density_matrix", "bell_state",
    "chi_state", "pure_state", "random_density", "random_pure_product",
    "random_separable",
    "DichotomicSettings", "QubitQWParams", "ShiftedSwapParams",
    "avr_asymmetric", "avr_symmetric", "bell_chsh", "fig1_surfaces",
    "qubit_qw", "qubit_qw_condition", "shifted_swap_factors",
    "standard_bell_settings", "swap_operator",
    "ProbeReport", "WitnessReport", "check_entanglement_witness",
    "check_quantumness_witness", "classical_lemma_test", "ew_implies_qw",
    "theorem1_probe",
]
