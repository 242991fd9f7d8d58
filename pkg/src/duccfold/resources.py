"""Jordan-Wigner Pauli expansions and qubitization-style cost figures.

Pauli strings are held as (x, z) bitmasks for the operator prod_k X_k^x_k Z_k^z_k
with qubit k = spin orbital k.  Since X Z = -i Y, a qubit with both bits set
is a Y up to a phase that is applied when labels are produced.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

COEFF_CUTOFF = 1e-12


def _mul(a, b):
    out = defaultdict(complex)
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            sign = -1 if (z1 & x2).bit_count() & 1 else 1
            out[(x1 ^ x2, z1 ^ z2)] += sign * c1 * c2
    return out


def _ladder(p, dagger):
    """a_p^+ = Z_<p (X_p + X_p Z_p)/2 and a_p = Z_<p (X_p - X_p Z_p)/2."""
    low = (1 << p) - 1
    bit = 1 << p
    s = 0.5 if dagger else -0.5
    return {(bit, low): 0.5, (bit, low | bit): s}


def _label(x, z, n):
    chars = []
    for k in range(n):
        xb, zb = x >> k & 1, z >> k & 1
        chars.append("Y" if xb and zb else "X" if xb else "Z" if zb else "I")
    return "".join(chars)


@dataclass(frozen=True)
class PauliTermSet:
    """Real-coefficient Pauli expansion; ``identity`` is kept apart from ``terms``.

    Labels list qubit 0 first.
    """

    terms: tuple
    n_qubits: int
    identity: float = 0.0

    @property
    def n_terms(self):
        return len(self.terms)

    @property
    def coefficients(self):
        return np.array([c for _, c in self.terms])

    def to_matrix(self):
        """Dense 2^n matrix built from Kronecker products of single-qubit Paulis."""
        return pauli_matrix(self)


def _tensors(Hlike):
    if hasattr(Hlike, "chi1"):
        return Hlike.scalar_pv, np.asarray(Hlike.chi1), np.asarray(Hlike.chi2)
    return Hlike.e_core, np.asarray(Hlike.h), np.asarray(Hlike.v)


def jordan_wigner(Hlike, cutoff=COEFF_CUTOFF) -> PauliTermSet:
    """Map scalar + sum h a+_p a_q + 1/4 sum v a+_p a+_q a_s a_r to Pauli strings."""
    const, h, v = _tensors(Hlike)
    n = h.shape[0]
    cre = [_ladder(p, True) for p in range(n)]
    ann = [_ladder(p, False) for p in range(n)]
    total = defaultdict(complex)
    total[(0, 0)] += const
    for p in range(n):
        for q in range(n):
            if abs(h[p, q]) > cutoff:
                for k, c in _mul(cre[p], ann[q]).items():
                    total[k] += h[p, q] * c
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    for p, q in pairs:
        left = _mul(cre[p], cre[q])
        for r, s in pairs:
            x = v[p, q, r, s]
            if abs(x) <= cutoff:
                continue
            for k, c in _mul(left, _mul(ann[s], ann[r])).items():
                total[k] += x * c
    terms = []
    identity = 0.0
    for (x, z), c in total.items():
        c = c * (-1j) ** (x & z).bit_count()
        if abs(c.imag) > 1e-10:
            raise ValueError(f"non-Hermitian Pauli coefficient {c} (tensors not Hermitian)")
        if (x, z) == (0, 0):
            identity = float(c.real)
        elif abs(c.real) > cutoff:
            terms.append((_label(x, z, n), float(c.real)))
    terms.sort()
    return PauliTermSet(tuple(terms), n, identity)


_PAULI = {
    "I": np.eye(2),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "Y": np.array([[0.0, -1j], [1j, 0.0]]),
    "Z": np.diag([1.0, -1.0]),
}


def pauli_matrix(ps: PauliTermSet):
    """Dense matrix on the bitmask basis (qubit k is bit k, so it is the last Kronecker factor)."""
    dim = 2 ** ps.n_qubits
    m = ps.identity * np.eye(dim, dtype=complex)
    for label, c in ps.terms:
        op = np.ones((1, 1))
        for ch in label:
            op = np.kron(_PAULI[ch], op)
        m += c * op
    return m


@dataclass(frozen=True)
class ResourceEstimate:
    n_qubits: int
    n_terms: int
    lambda_: float
    delta: float
    walk_queries: int
    gate_scale: float
    h_max: float
    identity: float = 0.0

    def as_dict(self):
        return {
            "n_qubits": self.n_qubits,
            "n_terms": self.n_terms,
            "lambda": self.lambda_,
            "delta": self.delta,
            "walk_queries": self.walk_queries,
            "gate_scale": self.gate_scale,
            "h_max": self.h_max,
            "identity_coefficient": self.identity,
            "coefficient_cutoff": COEFF_CUTOFF,
        }


def estimate(terms: PauliTermSet, delta) -> ResourceEstimate:
    """lambda = sum |h_j| over non-identity strings; walk queries ceil(lambda/delta)."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    coeffs = np.abs(terms.coefficients)
    lam = float(coeffs.sum()) if coeffs.size else 0.0
    n = terms.n_terms
    return ResourceEstimate(
        n_qubits=terms.n_qubits,
        n_terms=n,
        lambda_=lam,
        delta=float(delta),
        walk_queries=int(math.ceil(lam / delta - 1e-12)) if lam else 0,
        gate_scale=lam * n / delta,
        h_max=float(coeffs.max()) if coeffs.size else 0.0,
        identity=terms.identity,
    )


def compare(full: ResourceEstimate, downfolded: ResourceEstimate):
    """Report section with both estimates and downfolded/full ratios."""

    def ratio(a, b):
        return a / b if b else None

    n = full.n_qubits
    return {
        "full": full.as_dict(),
        "downfolded": downfolded.as_dict(),
        "ratios": {
            "n_qubits": ratio(downfolded.n_qubits, full.n_qubits),
            "n_terms": ratio(downfolded.n_terms, full.n_terms),
            "lambda": ratio(downfolded.lambda_, full.lambda_),
            "walk_queries": ratio(downfolded.walk_queries, full.walk_queries),
            "gate_scale": ratio(downfolded.gate_scale, full.gate_scale),
        },
        "context": f"worst-case term count scales as N^4 in the number of spin orbitals (full: {n}^4 = {n ** 4})",
    }
