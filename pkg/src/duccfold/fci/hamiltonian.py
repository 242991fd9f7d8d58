"""Hamiltonian matrices over determinant spaces (Slater-Condon rules)."""
from __future__ import annotations

import numpy as np

from ..errors import DimensionError
from .determinants import DeterminantSpace
from .operators import OperatorMatrix, operator_matrix


def _tensors(Hlike):
    if hasattr(Hlike, "chi1"):
        return Hlike.scalar_pv, Hlike.chi1, Hlike.chi2
    return Hlike.e_core, np.asarray(Hlike.h), np.asarray(Hlike.v)


def hamiltonian_matrix(Hlike, space: DeterminantSpace, sparse=None):
    """Matrix of a SpinOrbitalHamiltonian or DownfoldedHamiltonian over ``space``.

    The scalar constant sits on the diagonal.  Returns an OperatorMatrix tagged
    hermitian (checked to 1e-10); the payload is sparse above the dense limit.
    """
    const, h, v = _tensors(Hlike)
    if h.shape[0] != space.n_spin_orbitals:
        raise DimensionError(f"Hamiltonian has {h.shape[0]} spin orbitals, space has {space.n_spin_orbitals}")
    m = operator_matrix(const, h, v, space.determinants, space.index, sparse=sparse)
    return OperatorMatrix(m, "hermitian")
