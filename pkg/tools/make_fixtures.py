"""Regenerate the FCIDUMP fixtures and reference energies in tests/data.

Requires PySCF, which is used only here and is not a package dependency.
Run from the repository root:

    python tools/make_fixtures.py
"""
import json
from pathlib import Path

from pyscf import cc, fci, gto, mp, scf
from pyscf.tools import fcidump

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"

SYSTEMS = {
    "h2_sto3g": ("H 0 0 0; H 0 0 1.4", "sto-3g"),
    "h2_631g": ("H 0 0 0; H 0 0 1.4", "6-31g"),
    "h4_sto3g": ("H 0 0 0; H 0 0 1.8; H 0 0 3.6; H 0 0 5.4", "sto-3g"),
    "lih_sto3g": ("Li 0 0 0; H 0 0 3.015", "sto-3g"),
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    refs = {}
    for name, (atom, basis) in SYSTEMS.items():
        mol = gto.M(atom=atom, basis=basis, unit="bohr", verbose=0)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-13
        mf.conv_tol_grad = 1e-10
        mf.kernel()
        fcidump.from_scf(mf, str(DATA / f"{name}.fcidump"))

        pt = mp.MP2(mf)
        pt.kernel()
        mycc = cc.CCSD(mf)
        mycc.conv_tol = 1e-13
        mycc.conv_tol_normt = 1e-11
        mycc.max_cycle = 500
        mycc.kernel()
        e_fci = fci.FCI(mf).kernel()[0]
        refs[name] = {
            "atom": atom,
            "basis": basis,
            "unit": "bohr",
            "e_hf": mf.e_tot,
            "e_mp2_corr": pt.e_corr,
            "e_ccsd_corr": mycc.e_corr,
            "e_fci": e_fci,
        }
    (DATA / "reference_energies.json").write_text(json.dumps(refs, indent=2) + "\n")


if __name__ == "__main__":
    main()
