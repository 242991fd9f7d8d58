import json
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from duccfold.ccsd import ClusterAmplitudes, solve_ccsd
from duccfold.integrals import SpinOrbitalHamiltonian, read_fcidump

DATA = Path(__file__).parent / "data"
FIXTURES = ["h2_sto3g", "h2_631g", "h4_sto3g", "lih_sto3g"]

# acceptance-criterion result lines, printed in the terminal summary
ACCEPTANCE = []


@lru_cache(maxsize=None)
def load(name):
    return read_fcidump(DATA / f"{name}.fcidump")


@lru_cache(maxsize=None)
def ccsd(name):
    return solve_ccsd(load(name))


@lru_cache(maxsize=None)
def references():
    return json.loads((DATA / "reference_energies.json").read_text())


def goldens():
    return json.loads((DATA / "goldens.json").read_text())


def antisymmetrize(x):
    return x - x.transpose(1, 0, 2, 3) - x.transpose(0, 1, 3, 2) + x.transpose(1, 0, 3, 2)


def random_hamiltonian(rng, n, n_electrons, canonical=True, scale=0.3, spin=True, gap=2.0):
    """Random real Hamiltonian; ``canonical`` makes the reference Fock matrix diagonal."""
    h = rng.normal(size=(n, n))
    h = h + h.T
    v = antisymmetrize(rng.normal(size=(n,) * 4)) * scale
    v = v + v.transpose(2, 3, 0, 1)
    if spin:
        s = np.arange(n) % 2
        h = h * (s[:, None] == s[None, :])
        keep = (s[:, None, None, None] == s[None, None, :, None]) & (s[None, :, None, None] == s[None, None, None, :])
        keep = keep | (s[:, None, None, None] == s[None, None, None, :]) & (s[None, :, None, None] == s[None, None, :, None])
        v = v * keep
    occ = list(range(n_electrons))
    f = h + np.einsum("piqi->pq", v[:, occ][:, :, :, occ])
    if canonical:
        h = h - (f - np.diag(np.diag(f)))
        # spread the diagonal so denominators stay away from zero
        h = h + np.diag(np.where(np.arange(n) < n_electrons, -gap, gap))
    return SpinOrbitalHamiltonian(n_electrons, rng.normal(), h, v)


def random_amplitudes(rng, H, scale=0.1, spin=True):
    occ, vir = H.occupied, H.virtual
    no, nv = len(occ), len(vir)
    t1 = rng.normal(size=(nv, no)) * scale
    t2 = rng.normal(size=(nv, nv, no, no)) * scale
    t2 = t2 - t2.transpose(1, 0, 2, 3) - t2.transpose(0, 1, 3, 2) + t2.transpose(1, 0, 3, 2)
    if spin:
        so, sv = np.array(occ) % 2, np.array(vir) % 2
        t1 = t1 * (sv[:, None] == so[None, :])
        t2 = t2 * ((sv[:, None, None, None] + sv[None, :, None, None]) == (so[None, None, :, None] + so[None, None, None, :]))
        t2 = t2 * ((sv[:, None, None, None] == so[None, None, :, None]) & (sv[None, :, None, None] == so[None, None, None, :])
                   | (sv[:, None, None, None] == so[None, None, None, :]) & (sv[None, :, None, None] == so[None, None, :, None]))
    return ClusterAmplitudes(t1, t2, tuple(occ), tuple(vir))


@pytest.fixture
def rng():
    return np.random.default_rng(20240)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda x: int(x.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
