"""Lowest-eigenpair solvers."""
from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.sparse

from ..errors import ConvergenceError
from .operators import OperatorMatrix

DAVIDSON_THRESHOLD = 2000
RESIDUAL_TOL = 1e-9


def davidson(matvec, diagonal, guess=None, tol=RESIDUAL_TOL, max_iterations=500, max_subspace=40):
    """Lowest eigenpair of a symmetric operator given by ``matvec``."""
    dim = len(diagonal)
    if guess is None:
        guess = np.zeros(dim)
        guess[int(np.argmin(diagonal))] = 1.0
    V = (guess / np.linalg.norm(guess))[:, None]
    AV = matvec(V[:, 0])[:, None]
    theta, r = 0.0, np.inf
    for it in range(max_iterations):
        S = V.T @ AV
        w, y = np.linalg.eigh(0.5 * (S + S.T))
        theta, y = w[0], y[:, 0]
        x = V @ y
        res = AV @ y - theta * x
        r = np.linalg.norm(res)
        if r < tol:
            return float(theta), x
        denom = theta - diagonal
        denom[np.abs(denom) < 1e-8] = 1e-8
        corr = res / denom
        if V.shape[1] >= max_subspace:
            V, AV = x[:, None], (AV @ y)[:, None]
        for _ in range(2):
            corr -= V @ (V.T @ corr)
        nrm = np.linalg.norm(corr)
        if nrm < 1e-14:
            corr = np.random.default_rng(it).normal(size=dim)
            corr -= V @ (V.T @ corr)
            nrm = np.linalg.norm(corr)
        corr /= nrm
        V = np.column_stack([V, corr])
        AV = np.column_stack([AV, matvec(corr)])
    raise ConvergenceError("Davidson did not converge", residual=float(r), iterations=max_iterations)


def _dense(m):
    return m.toarray() if scipy.sparse.issparse(m) else np.asarray(m)


def ground_state(M, method=None):
    """Lowest eigenvalue and unit eigenvector.

    Hermitian matrices up to dimension 2000 use dense ``eigh``; larger ones
    use Davidson.  Matrices tagged ``general`` and stored densely are
    diagonalized with ``eig`` and the eigenvalue with smallest real part wins.
    """
    sym = M.symmetry if isinstance(M, OperatorMatrix) else "hermitian"
    m = M.matrix if isinstance(M, OperatorMatrix) else M
    dim = m.shape[0]
    if method is None:
        method = "davidson" if dim > DAVIDSON_THRESHOLD or scipy.sparse.issparse(m) else "dense"
    if method == "davidson":
        diag = np.asarray(m.diagonal()).ravel()
        e, x = davidson(lambda y: m @ y, diag)
        return e, x
    a = _dense(m)
    if sym == "hermitian":
        w, u = scipy.linalg.eigh(a)
        return float(w[0]), u[:, 0]
    w, u = scipy.linalg.eig(a)
    k = int(np.argmin(w.real))
    x = u[:, k]
    if np.abs(x.imag).max() < 1e-12:
        x = x.real
    return float(w[k].real), x / np.linalg.norm(x)
