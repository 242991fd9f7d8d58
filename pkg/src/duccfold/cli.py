"""Command-line driver: ``duccfold {check,ccsd,downfold,fci,resources,run}``."""
from __future__ import annotations

import argparse
import json
import sys
import traceback
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .active_space import define_active_space, split_amplitudes
from .ccsd import SolverOptions, load_amplitudes, save_amplitudes, solve_ccsd
from .errors import DuccError, SpaceTooLarge
from .integrals import build_fock, read_fcidump, reference_energy

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCHEMA_VERSION = "1.0"

# exit code per failing stage
EXIT_CODES = {
    "config": 2,
    "input": 3,
    "reference": 4,
    "ccsd": 5,
    "downfold": 6,
    "diagonalize": 7,
    "oracles": 8,
    "resources": 9,
    "report": 10,
}

TAGS = {
    "reference": "E_ref = <Phi|H|Phi>",
    "ccsd": "E_CCSD = <Phi|e^{-T} H e^{T}|Phi> at the CCSD solution",
    "casci": "lowest eigenvalue of the bare H projected on the CAS",
    "ducc2": "lowest eigenvalue of the DUCC(2) Gamma over the active space",
    "ducc_exact": "lowest eigenvalue of P e^{-sigma_ext} H e^{sigma_ext} P (no commutator truncation)",
    "fci": "lowest eigenvalue of H over the full N-electron space",
}


class StageError(Exception):
    def __init__(self, stage, exc):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage
        self.exc = exc


@dataclass
class RunConfig:
    input: str = ""
    n_virtual_spatial: int = 1
    ccsd_tolerance: float = 1e-10
    ccsd_max_iter: int = 200
    diis_depth: int = 8
    report: str = ""
    downfolded_fcidump: str = ""
    delta: float = 1e-3
    oracle_cap: int = 2000

    def validate(self):
        if not self.input:
            raise ValueError("no input FCIDUMP given")
        for name in ("ccsd_tolerance", "delta"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("ccsd_max_iter", "diis_depth", "oracle_cap"):
            if int(getattr(self, name)) <= 0:
                raise ValueError(f"{name} must be a positive integer")
        if int(self.n_virtual_spatial) < 0:
            raise ValueError("n_virtual_spatial must be non-negative")
        return self

    def solver_options(self):
        return SolverOptions(max_iterations=int(self.ccsd_max_iter), tolerance=float(self.ccsd_tolerance),
                             diis_depth=int(self.diis_depth))

    @classmethod
    def from_toml(cls, path):
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        cfg = cls()
        base = Path(path).parent
        if "input" in data:
            cfg.input = str(base / data["input"])
        active = data.get("active", {})
        if "n_virtual_spatial" in active:
            cfg.n_virtual_spatial = int(active["n_virtual_spatial"])
        cc = data.get("ccsd", {})
        cfg.ccsd_tolerance = float(cc.get("tolerance", cfg.ccsd_tolerance))
        cfg.ccsd_max_iter = int(cc.get("max_iter", cfg.ccsd_max_iter))
        cfg.diis_depth = int(cc.get("diis_depth", cfg.diis_depth))
        out = data.get("outputs", {})
        if out.get("report"):
            cfg.report = str(base / out["report"])
        if out.get("downfolded_fcidump"):
            cfg.downfolded_fcidump = str(base / out["downfolded_fcidump"])
        cfg.delta = float(data.get("resources", {}).get("delta", cfg.delta))
        cfg.oracle_cap = int(data.get("oracles", {}).get("cap", cfg.oracle_cap))
        return cfg


def _energy(value, tag):
    return {"value": float(value), "tag": TAGS[tag]}


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (DuccError, OSError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        raise StageError(name, exc) from exc


def run_pipeline(cfg: RunConfig, report=None):
    """Full chain: parse, reference check, CCSD, downfold, CAS energies, oracles, resources.

    ``report`` (a dict) is filled in place so that a partial report survives a
    failing stage.
    """
    from .downfold import downfold, export_downfolded
    from .fci import casci_energy, downfolded_energy, ducc_exact_eigenvalue, enumerate_space, fci_energy
    from .resources import compare, estimate, jordan_wigner

    report = {} if report is None else report
    report.update({"schema_version": SCHEMA_VERSION, "program": "duccfold", "version": __version__,
                   "status": "running", "config": asdict(cfg)})
    energies = report.setdefault("energies", {})
    checks = report.setdefault("checks", {})

    H = _stage("input", read_fcidump, cfg.input)
    report["system"] = {"n_spin_orbitals": H.n_spin_orbitals, "n_electrons": H.n_electrons, "ms2": H.ms2}
    fock = _stage("reference", build_fock, H)
    checks["fock_max_off_diagonal"] = fock.max_off_diagonal()
    e_ref = reference_energy(H)
    energies["reference"] = _energy(e_ref, "reference")

    T = _stage("ccsd", solve_ccsd, H, cfg.solver_options())
    energies["ccsd"] = _energy(e_ref + T.correlation_energy, "ccsd")
    report["ccsd"] = {"correlation_energy": T.correlation_energy, "residual_norm": T.residual_norm,
                      "iterations": T.iterations}

    AS = _stage("downfold", define_active_space, H, {"n_active_virtual_spatial": cfg.n_virtual_spatial})
    D = _stage("downfold", downfold, H, T, AS)
    report["active_space"] = AS.as_dict()
    report["downfolded"] = {"scalar_pv": D.scalar_pv, "n_spin_orbitals": D.n_spin_orbitals,
                            "n_electrons": D.n_electrons, "provenance": D.provenance}
    checks["chi_max_asymmetry"] = D.max_asymmetry()
    if cfg.downfolded_fcidump:
        _stage("downfold", export_downfolded, D, cfg.downfolded_fcidump)
        report["downfolded"]["fcidump"] = cfg.downfolded_fcidump

    energies["casci"] = _energy(_stage("diagonalize", casci_energy, H, AS), "casci")
    energies["ducc2"] = _energy(_stage("diagonalize", downfolded_energy, D), "ducc2")

    notes = report.setdefault("notes", [])
    try:
        dim = enumerate_space(H, cap=cfg.oracle_cap).dimension
    except SpaceTooLarge as exc:
        dim = None
        notes.append(f"full FCI and exact-DUCC oracles skipped: {exc}")
    if dim is not None:
        t_ext = split_amplitudes(T, AS).t_ext
        e_fci = _stage("oracles", fci_energy, H)
        e_exact = _stage("oracles", ducc_exact_eigenvalue, H, t_ext, AS)
        energies["fci"] = _energy(e_fci, "fci")
        energies["ducc_exact"] = _energy(e_exact, "ducc_exact")
        e2 = energies["ducc2"]["value"]
        report["diagnostics"] = {"ducc2_minus_exact_ducc": e2 - e_exact, "ducc2_minus_fci": e2 - e_fci,
                                 "ccsd_minus_fci": energies["ccsd"]["value"] - e_fci}

    full = _stage("resources", lambda: estimate(jordan_wigner(H), cfg.delta))
    down = _stage("resources", lambda: estimate(jordan_wigner(D), cfg.delta))
    report["resources"] = compare(full, down)
    report["status"] = "ok"
    return report


def _write_report(report, path):
    text = json.dumps(report, indent=2, default=_json_default)
    if path:
        Path(path).write_text(text + "\n")
    return text


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _config_from_args(args):
    cfg = RunConfig.from_toml(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {
        "input": getattr(args, "input", None),
        "n_virtual_spatial": getattr(args, "active_virtuals", None),
        "delta": getattr(args, "delta", None),
        "report": getattr(args, "report", None),
        "downfolded_fcidump": getattr(args, "output", None),
    }
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()


def _emit(args, payload):
    text = _write_report(payload, getattr(args, "report", None))
    print(text)


def cmd_check(args, cfg):
    H = _stage("input", read_fcidump, cfg.input)
    out = {"n_spin_orbitals": H.n_spin_orbitals, "n_electrons": H.n_electrons, "ms2": H.ms2,
           "e_core": H.e_core, "reference_energy": reference_energy(H),
           "spin_orbital_dialect": bool(H.metadata.get("spin_orbital"))}
    try:
        out["fock_max_off_diagonal"] = build_fock(H).max_off_diagonal()
        out["canonical_reference"] = True
    except DuccError as exc:
        out["canonical_reference"] = False
        out["reference_note"] = str(exc)
    _emit(args, out)


def cmd_ccsd(args, cfg):
    H = _stage("input", read_fcidump, cfg.input)
    _stage("reference", build_fock, H)
    T = _stage("ccsd", solve_ccsd, H, cfg.solver_options())
    if args.amplitudes:
        save_amplitudes(T, args.amplitudes)
    e_ref = reference_energy(H)
    _emit(args, {"energies": {"reference": _energy(e_ref, "reference"),
                              "ccsd": _energy(e_ref + T.correlation_energy, "ccsd")},
                 "correlation_energy": T.correlation_energy, "residual_norm": T.residual_norm,
                 "iterations": T.iterations})


def cmd_downfold(args, cfg):
    from .downfold import downfold, export_downfolded

    H = _stage("input", read_fcidump, cfg.input)
    _stage("reference", build_fock, H)
    if args.amplitudes:
        T = _stage("input", load_amplitudes, args.amplitudes)
    else:
        T = _stage("ccsd", solve_ccsd, H, cfg.solver_options())
    AS = _stage("downfold", define_active_space, H, {"n_active_virtual_spatial": cfg.n_virtual_spatial})
    D = _stage("downfold", downfold, H, T, AS)
    out = {"active_space": AS.as_dict(), "scalar_pv": D.scalar_pv, "n_spin_orbitals": D.n_spin_orbitals,
           "n_electrons": D.n_electrons, "chi_max_asymmetry": D.max_asymmetry(), "provenance": D.provenance}
    if cfg.downfolded_fcidump:
        _stage("downfold", export_downfolded, D, cfg.downfolded_fcidump)
        out["fcidump"] = cfg.downfolded_fcidump
    _emit(args, out)


def cmd_fci(args, cfg):
    from .fci import fci_energy

    H = _stage("input", read_fcidump, cfg.input)
    e = _stage("diagonalize", fci_energy, H)
    _emit(args, {"energies": {"fci": _energy(e, "fci")}, "n_spin_orbitals": H.n_spin_orbitals,
                 "n_electrons": H.n_electrons})


def cmd_resources(args, cfg):
    from .resources import compare, estimate, jordan_wigner

    H = _stage("input", read_fcidump, cfg.input)
    full = _stage("resources", lambda: estimate(jordan_wigner(H), cfg.delta))
    out = {"resources": {"full": full.as_dict()}}
    if args.downfolded:
        D = _stage("input", read_fcidump, args.downfolded)
        down = _stage("resources", lambda: estimate(jordan_wigner(D), cfg.delta))
        out["resources"] = compare(full, down)
    _emit(args, out)


def cmd_run(args, cfg):
    report = {}
    try:
        run_pipeline(cfg, report)
    except StageError as err:
        report.update(status="failed", failed_stage=err.stage, error=f"{type(err.exc).__name__}: {err.exc}")
        _write_report(report, cfg.report)
        raise
    _emit(argparse.Namespace(report=cfg.report), report)


def build_parser():
    p = argparse.ArgumentParser(prog="duccfold", description="DUCC(2) active-space downfolding")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, active=False, delta=False):
        sp.add_argument("--config", help="TOML run configuration (flags override it)")
        sp.add_argument("--input", help="input FCIDUMP")
        sp.add_argument("--report", help="write the JSON result here as well as to stdout")
        if active:
            sp.add_argument("--active-virtuals", type=int, help="number of active virtual spatial orbitals")
        if delta:
            sp.add_argument("--delta", type=float, help="target precision in Hartree")

    sp = sub.add_parser("check", help="parse an FCIDUMP and report its dimensions")
    common(sp)
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("ccsd", help="solve the CCSD equations")
    common(sp)
    sp.add_argument("--amplitudes", help="save converged amplitudes (.npz)")
    sp.set_defaults(func=cmd_ccsd)
    sp = sub.add_parser("downfold", help="build the DUCC(2) active-space Hamiltonian")
    common(sp, active=True)
    sp.add_argument("--amplitudes", help="load amplitudes (.npz) instead of solving CCSD")
    sp.add_argument("--output", help="write the downfolded Hamiltonian (spin-orbital FCIDUMP)")
    sp.set_defaults(func=cmd_downfold)
    sp = sub.add_parser("fci", help="FCI energy of an FCIDUMP (either dialect)")
    common(sp)
    sp.set_defaults(func=cmd_fci)
    sp = sub.add_parser("resources", help="Jordan-Wigner term counts and query estimates")
    common(sp, delta=True)
    sp.add_argument("--downfolded", help="downfolded FCIDUMP to compare against")
    sp.set_defaults(func=cmd_resources)
    sp = sub.add_parser("run", help="full pipeline with a JSON report")
    common(sp, active=True, delta=True)
    sp.add_argument("--output", help="write the downfolded Hamiltonian (spin-orbital FCIDUMP)")
    sp.set_defaults(func=cmd_run)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (OSError, ValueError, tomllib.TOMLDecodeError) as exc:
        print(f"duccfold: configuration error: {exc}", file=sys.stderr)
        return EXIT_CODES["config"]
    try:
        args.func(args, cfg)
    except StageError as err:
        print(f"duccfold: {err.stage} stage failed: {type(err.exc).__name__}: {err.exc}", file=sys.stderr)
        return EXIT_CODES[err.stage]
    except Exception:  # noqa: BLE001 - last-resort guard
        traceback.print_exc()
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
