"""Dense reference calculations: FCI, CASCI, the SES eigenproblem and exact DUCC."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..active_space import ActiveSpace
from ..ccsd import ClusterAmplitudes
from ..errors import ConvergenceError
from ..integrals import SpinOrbitalHamiltonian
from .determinants import DeterminantSpace, enumerate_space
from .hamiltonian import hamiltonian_matrix
from .operators import OperatorMatrix, matrix_exponential, operator_matrix
from .solvers import ground_state

AMBIGUITY_TOL = 1e-8


def _dense(m):
    return m.toarray() if hasattr(m, "toarray") else np.asarray(m)


def cluster_matrix(T: ClusterAmplitudes, space: DeterminantSpace) -> OperatorMatrix:
    """Matrix of T = sum t^a_i a+_a a_i + 1/4 sum t^{ab}_{ij} a+_a a+_b a_j a_i."""
    s1, s2 = T.full_tensors(space.n_spin_orbitals)
    m = operator_matrix(0.0, s1, s2, space.determinants, space.index, sparse=False)
    return OperatorMatrix(m, "general")


def sigma_matrix(T: ClusterAmplitudes, space: DeterminantSpace) -> OperatorMatrix:
    """sigma = T - T^+ for real amplitudes."""
    t = cluster_matrix(T, space).matrix
    return OperatorMatrix(t - t.T, "general")


def fock_operator_matrix(H: SpinOrbitalHamiltonian, space: DeterminantSpace, canonical=True):
    """F_N = sum f_pq {a+_p a_q}; ``canonical`` keeps only the oo and vv blocks."""
    f = np.array(H.fock)
    if canonical:
        o, v = list(H.occupied), list(H.virtual)
        f[np.ix_(o, v)] = 0.0
        f[np.ix_(v, o)] = 0.0
    shift = -sum(f[i, i] for i in H.occupied)
    return _dense(operator_matrix(shift, f, None, space.determinants, space.index, sparse=False))


def omega_matrix(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, space: DeterminantSpace):
    """Omega = H + [H_N, sigma] + 1/2 [[F_N, sigma], sigma] with canonical F_N.

    Exact in any space closed under H and sigma (the fixed N, S_z space).
    """
    h = _dense(hamiltonian_matrix(H, space, sparse=False).matrix)
    s = sigma_matrix(t_ext, space).matrix
    f = fock_operator_matrix(H, space)
    c = f @ s - s @ f
    return h + (h @ s - s @ h) + 0.5 * (c @ s - s @ c)


def fci_energy(H, cap=None):
    space = enumerate_space(H) if cap is None else enumerate_space(H, cap=cap)
    return ground_state(hamiltonian_matrix(H, space))[0]


def casci_energy(H: SpinOrbitalHamiltonian, AS: ActiveSpace):
    space = enumerate_space(H, AS)
    idx = space.cas_indices()
    m = _dense(hamiltonian_matrix(H, space).matrix)[np.ix_(idx, idx)]
    return float(scipy.linalg.eigh(m, eigvals_only=True)[0])


@dataclass(frozen=True, eq=False)
class SESResult:
    energy: float
    vector: np.ndarray
    overlap: float
    ambiguous: bool = False
    alternatives: tuple = ()

    def __iter__(self):
        yield self.energy
        yield self.vector


def ses_effective_eigenvalue(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, AS: ActiveSpace) -> SESResult:
    """Eigenvalue of P e^{-T_ext} H e^{T_ext} P with the largest reference weight.

    P projects onto the CAS of ``AS``; the matrix is generally non-Hermitian.
    """
    space = enumerate_space(H, AS)
    h = _dense(hamiltonian_matrix(H, space, sparse=False).matrix)
    t = cluster_matrix(t_ext, space).matrix
    u = matrix_exponential(t, "nilpotent")
    uinv = matrix_exponential(-t, "nilpotent")
    idx = space.cas_indices()
    m = (uinv @ h @ u)[np.ix_(idx, idx)]
    try:
        w, vecs = scipy.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"general eigensolver failed: {exc}") from exc
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    ref = int(np.flatnonzero(idx == 0)[0])
    ov = np.abs(vecs[ref])
    order = np.argsort(-ov)
    k = int(order[0])
    ambiguous = len(order) > 1 and ov[order[0]] - ov[order[1]] < AMBIGUITY_TOL
    alts = (float(w[order[1]].real),) if ambiguous else ()
    x = vecs[:, k]
    if np.abs(x.imag).max() < 1e-12:
        x = x.real
    return SESResult(float(w[k].real), x, float(ov[k]), bool(ambiguous), alts)


def ducc_exact_eigenvalue(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, AS: ActiveSpace) -> float:
    """Lowest eigenvalue of P e^{-sigma_ext} H e^{sigma_ext} P without truncation."""
    space = enumerate_space(H, AS)
    h = _dense(hamiltonian_matrix(H, space, sparse=False).matrix)
    s = sigma_matrix(t_ext, space).matrix
    u = matrix_exponential(s, "antihermitian")
    idx = space.cas_indices()
    m = (u.T @ h @ u)[np.ix_(idx, idx)]
    return float(scipy.linalg.eigh(0.5 * (m + m.T), eigvals_only=True)[0])


def downfolded_energy(D) -> float:
    """Ground-state energy of a downfolded Hamiltonian over its active space."""
    return ground_state(hamiltonian_matrix(D, enumerate_space(D)))[0]
