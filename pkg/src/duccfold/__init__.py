"""DUCC(2) downfolding of spin-orbital Hamiltonians onto active spaces."""
from .active_space import ActiveSpace, AmplitudePartition, define_active_space, split_amplitudes
from .ccsd import ClusterAmplitudes, SolverOptions, correlation_energy, solve_ccsd
from .integrals import SpinOrbitalHamiltonian, build_fock, parse_fcidump, read_fcidump, reference_energy

__version__ = "0.1.0"

__all__ = [
    "ActiveSpace",
    "AmplitudePartition",
    "ClusterAmplitudes",
    "SolverOptions",
    "SpinOrbitalHamiltonian",
    "build_fock",
    "correlation_energy",
    "define_active_space",
    "parse_fcidump",
    "read_fcidump",
    "reference_energy",
    "solve_ccsd",
    "split_amplitudes",
]
