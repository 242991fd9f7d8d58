"""Active spaces and the internal/external split of cluster amplitudes."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, replace

import numpy as np

from .ccsd import ClusterAmplitudes
from .errors import ActiveSpaceError, DimensionError
from .integrals import SpinOrbitalHamiltonian


@dataclass(frozen=True)
class ActiveSpace:
    active_occupied: tuple
    active_virtual: tuple
    occupied: tuple
    virtual: tuple

    @property
    def all_occupied_active(self):
        return set(self.active_occupied) == set(self.occupied)

    @property
    def n_spin_orbitals(self):
        return len(self.occupied) + len(self.virtual)

    @property
    def active(self):
        return tuple(sorted(self.active_occupied + self.active_virtual))

    @property
    def inactive_occupied(self):
        return tuple(i for i in self.occupied if i not in set(self.active_occupied))

    @property
    def inactive_virtual(self):
        return tuple(a for a in self.virtual if a not in set(self.active_virtual))

    @property
    def is_full(self):
        return len(self.active) == self.n_spin_orbitals

    @property
    def is_proper(self):
        return not self.is_full

    def local_index(self):
        """Full spin-orbital index -> position in :attr:`active`."""
        return {p: k for k, p in enumerate(self.active)}

    def occupied_mask(self):
        s = set(self.active_occupied)
        return np.array([i in s for i in self.occupied], dtype=bool)

    def virtual_mask(self):
        s = set(self.active_virtual)
        return np.array([a in s for a in self.virtual], dtype=bool)

    def as_dict(self):
        return {
            "active_occupied": list(self.active_occupied),
            "active_virtual": list(self.active_virtual),
            "n_active_spin_orbitals": len(self.active),
            "all_occupied_active": self.all_occupied_active,
        }

    @classmethod
    def custom(cls, H: SpinOrbitalHamiltonian, active_occupied, active_virtual):
        """Arbitrary spin-complete active space, e.g. a sub-algebra with fewer active occupieds."""
        ao = tuple(sorted(int(i) for i in active_occupied))
        av = tuple(sorted(int(a) for a in active_virtual))
        if not set(ao) <= set(H.occupied):
            raise ActiveSpaceError("active occupied orbitals must be occupied in the reference")
        if not set(av) <= set(H.virtual):
            raise ActiveSpaceError("active virtual orbitals must be virtual in the reference")
        act = set(ao) | set(av)
        for p in act:
            if (p ^ 1) not in act and (p ^ 1) < H.n_spin_orbitals:
                raise ActiveSpaceError(f"active space is not spin complete: {p} without {p ^ 1}")
        return cls(ao, av, tuple(H.occupied), tuple(H.virtual))


def define_active_space(H: SpinOrbitalHamiltonian, spec) -> ActiveSpace:
    """All occupied orbitals plus the ``n`` lowest virtual spatial orbitals.

    ``spec`` is an integer or a mapping with ``n_active_virtual_spatial``
    (alias ``n_virtual_spatial``) or an even ``n_virtual_spin``.
    """
    if isinstance(spec, Mapping):
        if "n_virtual_spin" in spec:
            k = int(spec["n_virtual_spin"])
            if k % 2:
                raise ActiveSpaceError("active virtuals are chosen per spatial orbital; odd spin-orbital count")
            n = k // 2
        else:
            n = spec.get("n_active_virtual_spatial", spec.get("n_virtual_spatial"))
            if n is None:
                raise ActiveSpaceError("active-space spec needs n_active_virtual_spatial")
    else:
        n = spec
    if int(n) != n or n < 0:
        raise ActiveSpaceError(f"number of active virtual orbitals must be a non-negative integer, got {n!r}")
    n = int(n)
    virt = set(H.virtual)
    n_spatial = H.n_spin_orbitals // 2
    full_virtual = [m for m in range(n_spatial) if 2 * m in virt and 2 * m + 1 in virt]
    partners = [p for p in H.virtual if (p ^ 1) in set(H.occupied)]
    if n > len(full_virtual):
        raise ActiveSpaceError(f"requested {n} active virtual orbitals but only {len(full_virtual)} exist")
    eps = H.orbital_energies
    chosen = sorted(full_virtual, key=lambda m: (eps[2 * m], m))[:n]
    av = sorted(partners + [2 * m for m in chosen] + [2 * m + 1 for m in chosen])
    return ActiveSpace(tuple(H.occupied), tuple(av), tuple(H.occupied), tuple(H.virtual))


@dataclass(frozen=True, eq=False)
class AmplitudePartition:
    t_int: ClusterAmplitudes
    t_ext: ClusterAmplitudes

    def reassemble(self):
        return replace(self.t_ext, t1=self.t_int.t1 + self.t_ext.t1, t2=self.t_int.t2 + self.t_ext.t2)

    @property
    def sigma_ext(self):
        """(T_ext, -T_ext^+) with the adjoint as lower-then-upper arrays."""
        t = self.t_ext
        return t, (-t.t1.T, -t.t2.transpose(2, 3, 0, 1))


def internal_masks(T: ClusterAmplitudes, AS: ActiveSpace):
    vo, vv = AS.occupied_mask(), AS.virtual_mask()
    m1 = vv[:, None] & vo[None, :]
    m2 = vv[:, None, None, None] & vv[None, :, None, None] & vo[None, None, :, None] & vo[None, None, None, :]
    return m1, m2


def split_amplitudes(T: ClusterAmplitudes, AS: ActiveSpace) -> AmplitudePartition:
    """Split T into all-active (internal) and remaining (external) amplitudes."""
    if tuple(T.occupied) != tuple(AS.occupied) or tuple(T.virtual) != tuple(AS.virtual):
        raise DimensionError("amplitudes and active space refer to different orbital partitions")
    m1, m2 = internal_masks(T, AS)
    nan = float("nan")
    t_int = replace(T, t1=np.where(m1, T.t1, 0.0), t2=np.where(m2, T.t2, 0.0), correlation_energy=nan)
    t_ext = replace(T, t1=np.where(m1, 0.0, T.t1), t2=np.where(m2, 0.0, T.t2), correlation_energy=nan)
    return AmplitudePartition(t_int, t_ext)
