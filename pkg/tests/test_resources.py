import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ccsd, goldens, load, random_hamiltonian
from duccfold.active_space import define_active_space
from duccfold.downfold import downfold
from duccfold.fci import fock_space, operator_matrix
from duccfold.integrals import SpinOrbitalHamiltonian
from duccfold.resources import PauliTermSet, compare, estimate, jordan_wigner, pauli_matrix


def one_body(n, entries):
    h = np.zeros((n, n))
    for (p, q), x in entries.items():
        h[p, q] = x
    return SpinOrbitalHamiltonian(0, 0.0, h, np.zeros((n,) * 4), ms2=0)


def fock_matrix(H):
    n = H.n_spin_orbitals if hasattr(H, "n_spin_orbitals") else H.chi1.shape[0]
    const, h, v = (H.scalar_pv, H.chi1, H.chi2) if hasattr(H, "chi1") else (H.e_core, H.h, H.v)
    return operator_matrix(const, np.asarray(h), np.asarray(v), fock_space(n).determinants, sparse=False)


def test_number_operator():
    ps = jordan_wigner(one_body(3, {(1, 1): 1.0}))
    assert ps.terms == (("IZI", -0.5),)
    assert ps.identity == 0.5
    assert ps.n_terms + (ps.identity != 0) == 2


def test_real_hopping():
    ps = jordan_wigner(one_body(3, {(0, 2): 0.7, (2, 0): 0.7}))
    assert dict(ps.terms) == pytest.approx({"XZX": 0.35, "YZY": 0.35})
    assert ps.identity == 0.0


def test_pair_interaction():
    n = 2
    v = np.zeros((n,) * 4)
    v[0, 1, 0, 1] = v[1, 0, 1, 0] = 1.0
    v[0, 1, 1, 0] = v[1, 0, 0, 1] = -1.0
    ps = jordan_wigner(SpinOrbitalHamiltonian(0, 0.0, np.zeros((n, n)), v, ms2=0))
    # n_0 n_1 = (I - Z_0 - Z_1 + Z_0 Z_1) / 4
    assert ps.identity == pytest.approx(0.25)
    assert dict(ps.terms) == pytest.approx({"ZI": -0.25, "IZ": -0.25, "ZZ": 0.25})


@pytest.mark.parametrize("name", ["h2_sto3g", "h2_631g", "h4_sto3g"])
def test_faithful_on_fixtures(name):
    H = load(name)
    ps = jordan_wigner(H)
    assert np.abs(pauli_matrix(ps) - fock_matrix(H)).max() < 1e-10


@pytest.mark.parametrize("name", ["h2_631g", "h4_sto3g"])
def test_faithful_on_downfolded(name):
    H = load(name)
    D = downfold(H, ccsd(name), define_active_space(H, 1))
    ps = jordan_wigner(D)
    assert ps.n_qubits == len(D.active)
    assert np.abs(ps.to_matrix() - fock_matrix(D)).max() < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_faithful_on_random_hamiltonians(seed):
    H = random_hamiltonian(np.random.default_rng(seed), 6, 2, canonical=False, spin=False)
    assert np.abs(pauli_matrix(jordan_wigner(H)) - fock_matrix(H)).max() < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_lambda_subadditive(seed):
    rng = np.random.default_rng(seed)
    a = random_hamiltonian(rng, 6, 2, canonical=False)
    b = random_hamiltonian(rng, 6, 2, canonical=False)
    s = SpinOrbitalHamiltonian(2, a.e_core + b.e_core, a.h + b.h, a.v + b.v)
    lam = lambda H: estimate(jordan_wigner(H), 1.0).lambda_
    assert lam(s) <= lam(a) + lam(b) + 1e-12


def test_terms_unique_and_above_cutoff():
    ps = jordan_wigner(load("h4_sto3g"))
    labels = [t for t, _ in ps.terms]
    assert len(labels) == len(set(labels))
    assert "I" * 8 not in labels
    assert np.abs(ps.coefficients).min() > 1e-12


def test_empty_term_set():
    e = estimate(PauliTermSet((), 4), 0.1)
    assert (e.n_terms, e.lambda_, e.walk_queries, e.gate_scale, e.h_max) == (0, 0.0, 0, 0.0, 0.0)


def test_arithmetic_example():
    e = estimate(PauliTermSet((("XI", 0.5), ("IZ", -1.5)), 2), 0.1)
    assert e.lambda_ == 2.0
    assert e.walk_queries == 20
    assert e.h_max == 1.5
    assert e.gate_scale == pytest.approx(2.0 * 2 / 0.1)


def test_delta_must_be_positive():
    with pytest.raises(ValueError):
        estimate(PauliTermSet((), 1), 0.0)


def test_walk_queries_is_ceiling():
    e = estimate(jordan_wigner(load("h2_sto3g")), 1e-3)
    assert e.walk_queries == math.ceil(e.lambda_ / 1e-3)


@pytest.mark.parametrize("name", ["h2_631g", "h4_sto3g", "lih_sto3g"])
def test_downfolded_resources_shrink(name):
    H = load(name)
    AS = define_active_space(H, 1)
    assert AS.is_proper
    full = estimate(jordan_wigner(H), 1e-3)
    down = estimate(jordan_wigner(downfold(H, ccsd(name), AS)), 1e-3)
    assert down.n_qubits == len(AS.active) < full.n_qubits
    assert down.n_terms < full.n_terms
    assert down.lambda_ < full.lambda_


@pytest.mark.parametrize("name", ["h2_631g", "h4_sto3g", "lih_sto3g"])
def test_resource_goldens(name):
    g = goldens()
    ref = g["systems"][name]["resources"]
    H = load(name)
    D = downfold(H, ccsd(name), define_active_space(H, 1))
    got = compare(estimate(jordan_wigner(H), g["delta"]), estimate(jordan_wigner(D), g["delta"]))
    for part in ("full", "downfolded"):
        assert got[part]["n_terms"] == ref[part]["n_terms"]
        assert got[part]["n_qubits"] == ref[part]["n_qubits"]
        assert got[part]["walk_queries"] == ref[part]["walk_queries"]
        assert got[part]["lambda"] == pytest.approx(ref[part]["lambda"], abs=1e-9)
    for key, value in ref["ratios"].items():
        assert got["ratios"][key] == pytest.approx(value, abs=1e-9)
    assert "N^4" in got["context"]
