import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, FIXTURES, load, random_hamiltonian, references
from duccfold.errors import FCIDUMPError, NonCanonicalReference
from duccfold.integrals import (
    SpinOrbitalHamiltonian,
    aufbau_occupation,
    build_fock,
    parse_fcidump,
    reference_energy,
    write_fcidump,
    write_spin_orbital_fcidump,
)

ONE_ORBITAL = """ &FCI NORB=1,NELEC=2,MS2=0,
  ORBSYM=1,
  ISYM=1,
 &END
  0.6500000000000000       1    1    1    1
 -1.2500000000000000       1    1    0    0
  0.3000000000000000       0    0    0    0
"""


def test_single_orbital_expansion():
    H = parse_fcidump(ONE_ORBITAL)
    assert H.n_spin_orbitals == 2
    assert H.v[0, 1, 0, 1] == pytest.approx(0.65)
    assert H.v[0, 1, 1, 0] == pytest.approx(-0.65)
    assert H.v[0, 0, 0, 0] == 0.0
    assert H.h[0, 0] == H.h[1, 1] == -1.25
    assert H.h[0, 1] == 0.0
    # E = core + 2h + (11|11)
    assert reference_energy(H) == pytest.approx(0.3 - 2.5 + 0.65)


def test_two_spin_orbital_fock():
    H = parse_fcidump(ONE_ORBITAL)
    f = build_fock(H).f
    assert f[0, 0] == pytest.approx(H.h[0, 0] + H.v[0, 1, 0, 1])


def test_fock_without_interaction():
    rng = np.random.default_rng(0)
    h = np.diag(rng.normal(size=6))
    H = SpinOrbitalHamiltonian(2, 0.5, h, np.zeros((6,) * 4))
    np.testing.assert_array_equal(build_fock(H).f, h)
    assert reference_energy(H) == pytest.approx(0.5 + h[0, 0] + h[1, 1])


def test_zero_electrons():
    H = SpinOrbitalHamiltonian(0, -3.25, np.eye(4), np.zeros((4,) * 4))
    assert reference_energy(H) == -3.25
    assert H.occupied == ()


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_invariants(name):
    H = load(name)
    v = H.v
    np.testing.assert_allclose(H.h, H.h.T, atol=1e-12)
    np.testing.assert_allclose(v, -v.transpose(1, 0, 2, 3), atol=1e-12)
    np.testing.assert_allclose(v, -v.transpose(0, 1, 3, 2), atol=1e-12)
    np.testing.assert_allclose(v, v.transpose(2, 3, 0, 1), atol=1e-12)
    assert len(H.occupied) == H.n_electrons
    assert set(H.occupied) | set(H.virtual) == set(range(H.n_spin_orbitals))
    assert not set(H.occupied) & set(H.virtual)
    # same-spin diagonal pairs vanish
    for p in range(H.n_spin_orbitals):
        assert H.v[p, p].max() == 0.0


@pytest.mark.parametrize("name", FIXTURES)
def test_reference_energy_matches_scf(name):
    H = load(name)
    assert reference_energy(H) == pytest.approx(references()[name]["e_hf"], abs=1e-10)
    fock = build_fock(H)
    assert abs(fock.max_off_diagonal()[1]) < 1e-10


@pytest.mark.parametrize("name", FIXTURES)
def test_write_read_roundtrip(name):
    H = load(name)
    again = parse_fcidump(write_fcidump(H))
    np.testing.assert_allclose(again.h, H.h, atol=1e-12)
    np.testing.assert_allclose(again.v, H.v, atol=1e-12)
    assert again.e_core == pytest.approx(H.e_core, abs=1e-12)
    assert (again.n_electrons, again.ms2) == (H.n_electrons, H.ms2)


def test_spin_orbital_dialect_roundtrip(rng):
    H = random_hamiltonian(rng, 6, 2)
    text = write_spin_orbital_fcidump(H.e_core, H.h, H.v, 2)
    assert "ISPIN_ORBITAL=1" in text
    again = parse_fcidump(text)
    np.testing.assert_allclose(again.h, H.h, atol=1e-14)
    np.testing.assert_allclose(again.v, H.v, atol=1e-14)
    assert write_spin_orbital_fcidump(again.e_core, again.h, again.v, 2) == text


def test_writer_emits_core_last(tmp_path):
    H = load("h2_sto3g")
    path = tmp_path / "h2.fcidump"
    write_fcidump(H, path)
    lines = path.read_text().strip().splitlines()
    assert lines[-1].split()[1:] == ["0", "0", "0", "0"]
    stream = io.StringIO()
    write_fcidump(H, stream)
    assert stream.getvalue() == path.read_text()


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_reference_energy_independent_of_record_order(r):
    text = (DATA / "h4_sto3g.fcidump").read_text()
    lines = text.splitlines()
    end = next(k for k, line in enumerate(lines) if line.strip().upper().startswith("&END"))
    body = lines[end + 1:]
    r.shuffle(body)
    H = parse_fcidump("\n".join(lines[: end + 1] + body))
    assert reference_energy(H) == pytest.approx(reference_energy(load("h4_sto3g")), abs=1e-12)


@pytest.mark.parametrize(
    "text, match",
    [
        ("&FCI NORB=1, MS2=0\n&END\n 1.0 1 1 0 0\n", "NELEC"),
        ("&FCI NORB=1, NELEC=2\n&END\n 1.0 2 1 0 0\n", "out of range"),
        ("&FCI NORB=1, NELEC=2\n&END\n 1.0 1 1 0 0\n 1.1 1 1 0 0\n", "conflicting"),
        ("&FCI NORB=1, NELEC=2\n 1.0 1 1 0 0\n", "&END"),
        ("&FCI NORB=1, NELEC=2\n&END\n 1.0 1 1 0\n", "expected"),
        ("&FCI NORB=1, NELEC=2\n&END\n abc 1 1 0 0\n", "cannot parse"),
    ],
)
def test_malformed_fcidump(text, match):
    with pytest.raises(FCIDUMPError, match=match):
        parse_fcidump(text)


def test_fortran_exponent_and_benign_duplicates():
    text = "&FCI NORB=1,NELEC=2,\n&END\n 0.65D+00 1 1 1 1\n 0.65D0 1 1 1 1\n -1.25 1 1 0 0\n"
    H = parse_fcidump(text)
    assert H.v[0, 1, 0, 1] == pytest.approx(0.65)


def test_noncanonical_reference_rejected():
    h = np.array([[-1.0, 0.2], [0.2, 0.5]])
    H = SpinOrbitalHamiltonian(1, 0.0, h, np.zeros((2,) * 4), ms2=1)
    with pytest.raises(NonCanonicalReference) as err:
        build_fock(H)
    assert (err.value.p, err.value.q) in {(0, 1), (1, 0)}


def test_asymmetric_tensor_rejected():
    h = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(FCIDUMPError):
        SpinOrbitalHamiltonian(1, 0.0, h, np.zeros((2,) * 4), ms2=1)


def test_arrays_read_only():
    H = load("h2_sto3g")
    with pytest.raises(ValueError):
        H.h[0, 0] = 1.0


def test_aufbau_interleaved():
    assert aufbau_occupation(8, 4, 0) == ((0, 1, 2, 3), (4, 5, 6, 7))
    occ, _ = aufbau_occupation(8, 3, 1)
    assert occ == (0, 1, 2)
