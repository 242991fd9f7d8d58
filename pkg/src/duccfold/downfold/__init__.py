"""DUCC(2) effective Hamiltonians on active spaces."""
from .gamma import (
    GammaTensors,
    build_gamma,
    gamma_bare,
    gamma_double_commutator,
    gamma_scalar,
    gamma_singles_commutator,
)
from .physical import (
    DownfoldedHamiltonian,
    downfold,
    export_downfolded,
    read_downfolded,
    to_physical_vacuum,
)

__all__ = [
    "GammaTensors",
    "DownfoldedHamiltonian",
    "build_gamma",
    "gamma_bare",
    "gamma_singles_commutator",
    "gamma_double_commutator",
    "gamma_scalar",
    "to_physical_vacuum",
    "downfold",
    "export_downfolded",
    "read_downfolded",
]
