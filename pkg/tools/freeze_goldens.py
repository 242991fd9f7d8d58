"""Freeze regression goldens (DUCC(2) energies and resource figures) into tests/data.

Run from the repository root after the oracle tests pass:

    python tools/freeze_goldens.py
"""
import json
from pathlib import Path

from duccfold.active_space import define_active_space, split_amplitudes
from duccfold.ccsd import solve_ccsd
from duccfold.downfold import downfold
from duccfold.fci import casci_energy, downfolded_energy, ducc_exact_eigenvalue, fci_energy
from duccfold.integrals import read_fcidump, reference_energy
from duccfold.resources import compare, estimate, jordan_wigner

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"
DELTA = 1e-3


def main():
    out = {"delta": DELTA, "systems": {}}
    for name in ("h2_631g", "h4_sto3g", "lih_sto3g"):
        H = read_fcidump(DATA / f"{name}.fcidump")
        T = solve_ccsd(H)
        AS = define_active_space(H, 1)
        D = downfold(H, T, AS)
        t_ext = split_amplitudes(T, AS).t_ext
        e_ducc = downfolded_energy(D)
        e_exact = ducc_exact_eigenvalue(H, t_ext, AS)
        e_fci = fci_energy(H)
        res = compare(estimate(jordan_wigner(H), DELTA), estimate(jordan_wigner(D), DELTA))
        out["systems"][name] = {
            "n_virtual_spatial": 1,
            "e_ccsd": reference_energy(H) + T.correlation_energy,
            "e_casci": casci_energy(H, AS),
            "e_ducc2": e_ducc,
            "e_ducc_exact": e_exact,
            "e_fci": e_fci,
            "ducc2_minus_exact": e_ducc - e_exact,
            "ducc2_minus_fci": e_ducc - e_fci,
            "scalar_pv": D.scalar_pv,
            "resources": res,
        }
    (DATA / "goldens.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
