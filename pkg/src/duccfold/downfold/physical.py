"""Physical-vacuum form of Gamma and FCIDUMP export."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..active_space import ActiveSpace, split_amplitudes
from ..ccsd import ClusterAmplitudes
from ..errors import HermiticityError
from ..integrals import SpinOrbitalHamiltonian, parse_fcidump, write_spin_orbital_fcidump
from .gamma import GammaTensors, build_gamma

HERMITICITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DownfoldedHamiltonian:
    """Gamma = scalar_pv + sum chi^P_Q a+_P a_Q + 1/4 sum chi^{PQ}_{RS} a+_P a+_Q a_S a_R.

    Indices are positions in ``active`` (full spin-orbital labels);
    ``occupied`` lists the local positions occupied in the reference.
    """

    scalar_pv: float
    chi1: np.ndarray
    chi2: np.ndarray
    active: tuple
    occupied: tuple
    ms2: int = 0
    provenance: dict = field(default_factory=dict)

    @property
    def n_spin_orbitals(self):
        return self.chi1.shape[0]

    @property
    def n_electrons(self):
        return len(self.occupied)

    def max_asymmetry(self):
        a1 = np.abs(self.chi1 - self.chi1.T).max(initial=0.0)
        a2 = np.abs(self.chi2 - self.chi2.transpose(2, 3, 0, 1)).max(initial=0.0)
        return float(max(a1, a2))

    def as_hamiltonian(self) -> SpinOrbitalHamiltonian:
        """Same operator as a SpinOrbitalHamiltonian (tensors symmetrized at round-off level)."""
        h = 0.5 * (self.chi1 + self.chi1.T)
        v = 0.5 * (self.chi2 + self.chi2.transpose(2, 3, 0, 1))
        return SpinOrbitalHamiltonian(
            self.n_electrons, self.scalar_pv, h, v, ms2=self.ms2, occupied=self.occupied,
            metadata={"downfolded": True, "active": list(self.active)},
        )


def _ms2(occupied):
    return sum(1 if p % 2 == 0 else -1 for p in occupied)


def to_physical_vacuum(gamma: GammaTensors, provenance=None) -> DownfoldedHamiltonian:
    """Reorder N[...]^ph strings to creators-left form relative to the true vacuum."""
    g1, g2 = gamma.g1, gamma.g2
    occ = gamma.local("o")
    chi1 = g1 - np.einsum("mpmq->pq", g2[occ][:, :, occ]) if occ else g1.copy()
    scalar = gamma.scalar_ph
    if occ:
        scalar += -np.trace(g1[np.ix_(occ, occ)]) + 0.5 * np.einsum("ijij->", g2[np.ix_(occ, occ, occ, occ)])
    D = DownfoldedHamiltonian(
        float(scalar), chi1, g2.copy(), tuple(gamma.active), tuple(occ), _ms2(gamma.active_occupied),
        dict(provenance or {}),
    )
    dev = D.max_asymmetry()
    if dev > HERMITICITY_TOL:
        raise HermiticityError("downfolded Hamiltonian", dev, HERMITICITY_TOL)
    return D


def downfold(H: SpinOrbitalHamiltonian, T: ClusterAmplitudes, AS: ActiveSpace, cross_check=True) -> DownfoldedHamiltonian:
    """DUCC(2) effective Hamiltonian on ``AS`` from the external part of ``T``."""
    t_ext = split_amplitudes(T, AS).t_ext
    gamma = build_gamma(H, t_ext, AS, cross_check=cross_check)
    prov = {
        "amplitude_source": "ccsd",
        "active_space": AS.as_dict(),
        "ccsd_residual_norm": float(T.residual_norm),
        "ccsd_iterations": int(T.iterations),
        "max_external_t1": float(np.abs(t_ext.t1).max(initial=0.0)),
        "max_external_t2": float(np.abs(t_ext.t2).max(initial=0.0)),
        "scalar_ph": gamma.scalar_ph,
    }
    return to_physical_vacuum(gamma, prov)


def export_downfolded(D: DownfoldedHamiltonian, path=None):
    """Write ``D`` in the spin-orbital FCIDUMP dialect; returns the text."""
    return write_spin_orbital_fcidump(D.scalar_pv, D.chi1, D.chi2, D.n_electrons, D.ms2, dest=path)


def read_downfolded(source) -> DownfoldedHamiltonian:
    """Read a spin-orbital FCIDUMP written by :func:`export_downfolded`."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        source = Path(source).read_text()
    H = parse_fcidump(source)
    n = H.n_spin_orbitals
    return DownfoldedHamiltonian(
        H.e_core, np.array(H.h), np.array(H.v), tuple(range(n)), tuple(H.occupied), H.ms2,
        {"source": "fcidump"},
    )
