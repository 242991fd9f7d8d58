"""Acceptance criteria; one PASS/FAIL line per criterion is printed in the terminal summary."""
from dataclasses import replace

import numpy as np
import pytest
import scipy.linalg

from conftest import ACCEPTANCE, ccsd, goldens, load, random_amplitudes, references
from duccfold.active_space import ActiveSpace, define_active_space, internal_masks, split_amplitudes
from duccfold.downfold import downfold, export_downfolded, read_downfolded
from duccfold.downfold.tables import corrected_entries
from duccfold.fci import (
    cluster_matrix,
    downfolded_energy,
    ducc_exact_eigenvalue,
    enumerate_space,
    fci_energy,
    hamiltonian_matrix,
    matrix_exponential,
    operator_matrix,
    fock_space,
    ses_effective_eigenvalue,
    sigma_matrix,
)
from duccfold.integrals import reference_energy
from duccfold.resources import estimate, jordan_wigner, pauli_matrix
from duccfold.wick import as_dict, block_expression, evaluate, parse_expression, parse_header
from duccfold.wick.algebra import OCC
from duccfold.wick.pv import PV_IDENTITIES, identity_terms, parse_ops, table_terms
from test_wick import assignments, normal_matrix, random_arrays, string_matrix


def e_ccsd(name):
    return reference_energy(load(name)) + ccsd(name).correlation_energy


def ses_theorem():
    worst = 0.0
    for name in ("h4_sto3g", "lih_sto3g"):
        H, T = load(name), ccsd(name)
        assert T.residual_norm < 1e-10
        for m in range(H.n_electrons // 2):
            AS = ActiveSpace.custom(H, (2 * m, 2 * m + 1), H.virtual)
            r = ses_effective_eigenvalue(H, split_amplitudes(T, AS).t_ext, AS)
            worst = max(worst, abs(r.energy - e_ccsd(name)))
    return worst < 1e-8, f"max |E_SES - E_CCSD| = {worst:.1e} Ha"


def two_electron_exactness():
    dev = max(abs(e_ccsd(n) - fci_energy(load(n))) for n in ("h2_sto3g", "h2_631g"))
    return dev < 1e-9, f"max |E_CCSD - E_FCI| = {dev:.1e} Ha"


def full_space_identity():
    de = dchi = 0.0
    for name in ("h2_sto3g", "h2_631g", "h4_sto3g", "lih_sto3g"):
        H = load(name)
        D = downfold(H, ccsd(name), define_active_space(H, len(H.virtual) // 2))
        R = read_downfolded(export_downfolded(D))
        de = max(de, abs(downfolded_energy(R) - fci_energy(H)))
        dchi = max(dchi, np.abs(D.chi1 - H.h).max(), np.abs(D.chi2 - H.v).max(), abs(D.scalar_pv - H.e_core))
    return de < 1e-10 and dchi < 1e-12, f"energy dev {de:.1e} Ha, tensor dev {dchi:.1e}"


def hermiticity():
    worst = 0.0
    rng = np.random.default_rng(4)
    for name in ("h2_sto3g", "h2_631g", "h4_sto3g", "lih_sto3g"):
        H = load(name)
        AS = define_active_space(H, 1)
        worst = max(worst, downfold(H, ccsd(name), AS).max_asymmetry())
        for scale in (0.1, 1.0):
            worst = max(worst, downfold(H, random_amplitudes(rng, H, scale), AS).max_asymmetry())
    return worst < 1e-9, f"max chi asymmetry = {worst:.1e}"


def table_fidelity():
    bad = 0
    entries = corrected_entries()
    for fam, hdr, expr in entries:
        up, lo = parse_header(hdr)
        if as_dict(parse_expression(expr), up + lo) != as_dict(block_expression(fam, up, lo), up + lo):
            bad += 1
    rng = np.random.default_rng(7)
    num = 0.0
    for _ in range(10):
        arr, occ, vir = random_arrays(rng, 7, [0, 1, 2])
        for fam, hdr, expr in entries:
            up, lo = parse_header(hdr)
            free = up + lo
            rg = {x: occ if x.space == OCC else vir for x in free}
            a = evaluate(parse_expression(expr), arr, occ, vir, free, rg)
            b = evaluate(block_expression(fam, up, lo), arr, occ, vir, free, rg)
            num = max(num, float(np.abs(a - b).max(initial=0.0)))
    dense = 0.0
    for ph, rhs in PV_IDENTITIES:
        bad += identity_terms(ph) != table_terms(rhs)
        ops = parse_ops(ph)
        labels = list(dict.fromkeys(o.index for o in ops))
        names = {x.name: x for x in labels}
        for assign in assignments(labels):
            total = -normal_matrix(ops, assign)
            for coeff, deltas, text in rhs:
                if all(assign[names[a]] == assign[names[b]] for a, b in deltas.split()):
                    total += coeff * string_matrix([(assign[o.index], o.dagger) for o in parse_ops(text)])
            dense = max(dense, np.abs(total).max())
    ok = bad == 0 and num < 1e-12 and dense < 1e-12
    return ok, f"{len(entries)} table entries + {len(PV_IDENTITIES)} identities, {bad} symbolic mismatches, " \
               f"numeric dev {num:.1e}, dense dev {dense:.1e}"


def external_only():
    rng = np.random.default_rng(9)
    same = True
    for name in ("h2_631g", "h4_sto3g", "lih_sto3g"):
        H, T = load(name), ccsd(name)
        AS = define_active_space(H, 1)
        m1, m2 = internal_masks(T, AS)
        U = replace(T, t1=np.where(m1, rng.normal(size=T.t1.shape), T.t1),
                    t2=np.where(m2, rng.normal(size=T.t2.shape), T.t2))
        a, b = downfold(H, T, AS), downfold(H, U, AS)
        same &= a.scalar_pv == b.scalar_pv and np.array_equal(a.chi1, b.chi1) and np.array_equal(a.chi2, b.chi2)
    return bool(same), "chi tensors bitwise identical under internal perturbation" if same else "chi changed"


def unitary_structure():
    det_dev = comm = spec = 0.0
    for name in ("h4_sto3g", "lih_sto3g"):
        H = load(name)
        AS = define_active_space(H, 1)
        P = split_amplitudes(ccsd(name), AS)
        space = enumerate_space(H, AS)
        idx = space.cas_indices()
        u = matrix_exponential(sigma_matrix(P.t_int, space).matrix[np.ix_(idx, idx)])
        det_dev = max(det_dev, abs(np.linalg.det(u) - 1.0))
        a, b = cluster_matrix(P.t_ext, space).matrix, cluster_matrix(P.t_int, space).matrix
        comm = max(comm, np.abs(a @ b - b @ a).max())
        h = hamiltonian_matrix(H, space).matrix
        w = matrix_exponential(sigma_matrix(ccsd(name), space))
        m = w.T @ h @ w
        spec = max(spec, np.abs(scipy.linalg.eigvalsh(h) - scipy.linalg.eigvalsh(0.5 * (m + m.T))).max())
    ok = det_dev < 1e-10 and comm < 1e-12 and spec < 1e-10
    return ok, f"|det-1| {det_dev:.1e}, ||[T_ext,T_int]|| {comm:.1e}, spectrum dev {spec:.1e}"


def ducc2_diagnostic():
    H, T = load("h2_631g"), ccsd("h2_631g")
    AS = define_active_space(H, 1)
    e2 = downfolded_energy(downfold(H, T, AS))
    d_exact = e2 - ducc_exact_eigenvalue(H, split_amplitudes(T, AS).t_ext, AS)
    d_fci = e2 - fci_energy(H)
    g = goldens()["systems"]["h2_631g"]
    dev = max(abs(d_exact - g["ducc2_minus_exact"]), abs(d_fci - g["ducc2_minus_fci"]), abs(e2 - g["e_ducc2"]))
    return dev < 1e-9, f"E_DUCC(2) - E_exact = {d_exact:.6e}, E_DUCC(2) - E_FCI = {d_fci:.6e} Ha, " \
                       f"golden dev {dev:.1e}"


def jordan_wigner_faithfulness():
    worst = 0.0
    for name in ("h2_sto3g", "h2_631g", "h4_sto3g"):
        H = load(name)
        m = operator_matrix(H.e_core, np.array(H.h), np.array(H.v), fock_space(H.n_spin_orbitals).determinants,
                            sparse=False)
        worst = max(worst, np.abs(pauli_matrix(jordan_wigner(H)) - m).max())
    smaller = True
    for name in ("h2_631g", "h4_sto3g", "lih_sto3g"):
        H = load(name)
        AS = define_active_space(H, 1)
        full = estimate(jordan_wigner(H), 1e-3)
        down = estimate(jordan_wigner(downfold(H, ccsd(name), AS)), 1e-3)
        smaller &= AS.is_proper and down.n_terms < full.n_terms and down.lambda_ < full.lambda_
    return worst < 1e-10 and smaller, f"matrix dev {worst:.1e}, downfolded n_terms and lambda smaller: {smaller}"


def ccsd_regression():
    dev = abs(ccsd("h4_sto3g").correlation_energy - references()["h4_sto3g"]["e_ccsd_corr"])
    return dev < 1e-7, f"|E_corr - reference| = {dev:.1e} Ha"


CRITERIA = [
    (1, "SES downfolding theorem", ses_theorem),
    (2, "two-electron exactness", two_electron_exactness),
    (3, "full-active-space identity", full_space_identity),
    (4, "Hermiticity of chi", hermiticity),
    (5, "table fidelity", table_fidelity),
    (6, "external-only dependence", external_only),
    (7, "unitary-structure checks", unitary_structure),
    (8, "DUCC(2) diagnostic goldens", ducc2_diagnostic),
    (9, "Jordan-Wigner faithfulness", jordan_wigner_faithfulness),
    (10, "CCSD regression", ccsd_regression),
]


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, check):
    try:
        ok, detail = check()
    except Exception as exc:  # recorded as a failing line, then re-raised
        ACCEPTANCE.append(f"[FAIL] {number:2d}. {title}: {type(exc).__name__}: {exc}")
        raise
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line
