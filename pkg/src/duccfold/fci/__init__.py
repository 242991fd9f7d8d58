"""Determinant-space machinery and dense reference oracles."""
from .determinants import DeterminantSpace, enumerate_space, fock_space
from .hamiltonian import hamiltonian_matrix
from .operators import OperatorMatrix, matrix_exponential, operator_matrix
from .oracles import (
    SESResult,
    casci_energy,
    cluster_matrix,
    downfolded_energy,
    ducc_exact_eigenvalue,
    fci_energy,
    omega_matrix,
    ses_effective_eigenvalue,
    sigma_matrix,
)
from .solvers import davidson, ground_state

__all__ = [
    "DeterminantSpace",
    "OperatorMatrix",
    "SESResult",
    "casci_energy",
    "cluster_matrix",
    "davidson",
    "downfolded_energy",
    "ducc_exact_eigenvalue",
    "enumerate_space",
    "fci_energy",
    "fock_space",
    "ground_state",
    "hamiltonian_matrix",
    "matrix_exponential",
    "omega_matrix",
    "operator_matrix",
    "ses_effective_eigenvalue",
    "sigma_matrix",
]
