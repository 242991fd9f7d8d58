"""Exact matrices of second-quantized operators over determinant bases.

Determinants are integer bitmasks (bit p set = spin orbital p occupied).  The
creation operator a_p^+ acting on |D> carries the phase (-1)^(number of
occupied orbitals below p).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from ..errors import HermiticityError, NonConservingOperator

DENSE_LIMIT = 2000


def occupied_list(det):
    out = []
    p = 0
    while det >> p:
        if det >> p & 1:
            out.append(p)
        p += 1
    return out


def _below(det, p):
    return -1 if (det & ((1 << p) - 1)).bit_count() & 1 else 1


def apply_string(det, ops):
    """Apply ``ops`` (sequence of (orbital, dagger), rightmost acts first)."""
    sign = 1
    for p, dagger in reversed(ops):
        bit = 1 << p
        if dagger:
            if det & bit:
                return 0, None
            sign *= _below(det, p)
            det |= bit
        else:
            if not det & bit:
                return 0, None
            sign *= _below(det, p)
            det ^= bit
    return sign, det


def _excitations(det, n, h, v, cutoff):
    """Yield (target, value) for the one- and two-body parts acting on ``det``."""
    occ = occupied_list(det)
    if h is not None:
        for q in occ:
            s1 = _below(det, q)
            d1 = det ^ (1 << q)
            for p in range(n):
                if d1 >> p & 1:
                    continue
                x = h[p, q]
                if abs(x) > cutoff:
                    yield d1 | (1 << p), s1 * _below(d1, p) * x
    if v is not None:
        for a in range(len(occ)):
            r = occ[a]
            for b in range(a + 1, len(occ)):
                s = occ[b]
                # a_s a_r |D>
                sg = _below(det, r)
                d1 = det ^ (1 << r)
                sg *= _below(d1, s)
                d2 = d1 ^ (1 << s)
                empty = [p for p in range(n) if not d2 >> p & 1]
                block = v[:, :, r, s]
                for ip, p in enumerate(empty):
                    sp = _below(d2, p)
                    d3 = d2 | (1 << p)
                    for q in empty[ip + 1:]:
                        x = block[p, q]
                        if abs(x) > cutoff:
                            # a_q^+ acts first; p < q so a_p^+ sees the same lower occupation
                            yield d3 | (1 << q), sg * _below(d2, q) * sp * x


def operator_matrix(constant, h, v, basis, index=None, cutoff=0.0, strict=True, sparse=None):
    """Matrix of  c + sum h[p,q] a+_p a_q + 1/4 sum v[p,q,r,s] a+_p a+_q a_s a_r.

    ``v`` must be antisymmetric in (p, q) and in (r, s).  ``basis`` is a list
    of bitmasks; ``index`` maps bitmask -> position.  With ``strict`` a
    nonzero element that leaves the basis raises NonConservingOperator.
    """
    basis = list(basis)
    dim = len(basis)
    if index is None:
        index = {d: k for k, d in enumerate(basis)}
    n = h.shape[0] if h is not None else v.shape[0]
    rows, cols, vals = [], [], []
    for col, det in enumerate(basis):
        if constant:
            rows.append(col)
            cols.append(col)
            vals.append(constant)
        for target, x in _excitations(det, n, h, v, cutoff):
            row = index.get(target)
            if row is None:
                if strict and x != 0:
                    raise NonConservingOperator(
                        f"operator maps determinant {det:b} outside the basis (element {x:.3e})"
                    )
                continue
            rows.append(row)
            cols.append(col)
            vals.append(x)
    m = scipy.sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    if sparse is None:
        sparse = dim > DENSE_LIMIT
    return m if sparse else m.toarray()


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Operator matrix (dense, or CSR for large bases) over a determinant basis."""

    matrix: np.ndarray
    symmetry: str = "general"

    def __post_init__(self):
        if self.symmetry == "hermitian":
            diff = self.matrix - self.matrix.conj().T
            if scipy.sparse.issparse(diff):
                dev = float(abs(diff).max()) if diff.nnz else 0.0
            else:
                dev = float(np.abs(diff).max(initial=0.0))
            if dev > 1e-10:
                raise HermiticityError("operator matrix", dev, 1e-10)

    @property
    def dimension(self):
        return self.matrix.shape[0]


def nilpotent_exponential(m):
    """exp(m) as the terminating power series of a nilpotent matrix."""
    m = np.asarray(m)
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    k = 0
    while True:
        k += 1
        term = term @ m / k
        if not term.any():
            return out
        if k > m.shape[0] + 1:
            raise ValueError("matrix is not nilpotent")
        out = out + term


def matrix_exponential(m, kind="antihermitian"):
    """Exponential of an operator matrix.

    ``kind='nilpotent'`` uses the exact terminating series (pure excitation
    operators); ``kind='antihermitian'`` uses scaling and squaring.
    """
    m = m.matrix if isinstance(m, OperatorMatrix) else np.asarray(m)
    if kind == "nilpotent":
        return nilpotent_exponential(m)
    if kind == "antihermitian":
        dev = float(np.abs(m + m.conj().T).max(initial=0.0))
        if dev > 1e-10:
            raise HermiticityError("anti-Hermitian generator", dev, 1e-10)
        return scipy.linalg.expm(m)
    raise ValueError(f"unknown exponential kind {kind!r}")
