"""Determinant spaces at fixed particle number and spin projection."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

import numpy as np

from ..errors import SpaceTooLarge

DEFAULT_CAP = 200_000


def bitmask(occupied):
    d = 0
    for p in occupied:
        d |= 1 << p
    return d


@dataclass(frozen=True, eq=False)
class DeterminantSpace:
    """Ordered determinants (bitmasks); the reference is always at position 0."""

    determinants: tuple
    n_spin_orbitals: int
    cas: np.ndarray = None

    def __post_init__(self):
        if len(set(self.determinants)) != len(self.determinants):
            raise ValueError("duplicate determinants")

    @property
    def dimension(self):
        return len(self.determinants)

    @property
    def reference(self):
        return self.determinants[0]

    @property
    def index(self):
        return {d: k for k, d in enumerate(self.determinants)}

    def cas_indices(self):
        if self.cas is None:
            return np.arange(self.dimension)
        return np.flatnonzero(self.cas)


def _describe(H):
    n = H.n_spin_orbitals
    occ = tuple(H.occupied)
    n_alpha = sum(1 for p in occ if p % 2 == 0)
    return n, occ, n_alpha, len(occ) - n_alpha


def space_dimension(n_spin_orbitals, n_alpha, n_beta):
    na = (n_spin_orbitals + 1) // 2
    nb = n_spin_orbitals // 2
    return comb(na, n_alpha) * comb(nb, n_beta)


def enumerate_space(H, active_space=None, cap=DEFAULT_CAP) -> DeterminantSpace:
    """All determinants with the electron count and S_z of ``H``'s reference.

    ``H`` is anything with ``n_spin_orbitals`` and ``occupied``.  Order is
    lexicographic in the sorted occupied-orbital tuple with the reference
    moved to the front.  With ``active_space`` the CAS flags mark determinants
    that keep every inactive occupied filled and every inactive virtual empty.
    """
    n, occ, n_alpha, n_beta = _describe(H)
    dim = space_dimension(n, n_alpha, n_beta)
    if dim > cap:
        raise SpaceTooLarge(dim, cap)
    alphas = list(combinations(range(0, n, 2), n_alpha))
    betas = list(combinations(range(1, n, 2), n_beta))
    occs = sorted(tuple(sorted(a + b)) for a, b in product(alphas, betas))
    ref = bitmask(occ)
    dets = [ref] + [d for d in map(bitmask, occs) if d != ref]
    cas = None
    if active_space is not None:
        must = bitmask(active_space.inactive_occupied)
        never = bitmask(active_space.inactive_virtual)
        cas = np.array([(d & must) == must and not d & never for d in dets], dtype=bool)
    return DeterminantSpace(tuple(dets), n, cas)


def fock_space(n_spin_orbitals) -> DeterminantSpace:
    """Every occupation pattern of ``n`` spin orbitals (the vacuum first)."""
    return DeterminantSpace(tuple(range(2 ** n_spin_orbitals)), n_spin_orbitals)
