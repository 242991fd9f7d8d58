"""Spin-orbital Hamiltonians: FCIDUMP ingestion, Fock operator, reference energy.

Spin orbitals are interleaved per spatial orbital: spatial orbital ``m`` maps to
spin orbitals ``2m`` (alpha) and ``2m + 1`` (beta).  Tensors follow the
upper-then-lower index convention, so ``h[p, q]`` is h^p_q and ``v[p, q, r, s]``
is the antisymmetrized <pq||rs> = v^{pq}_{rs}.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import DimensionError, FCIDUMPError, NonCanonicalReference

__all__ = [
    "SpinOrbitalHamiltonian",
    "FockMatrix",
    "parse_fcidump",
    "read_fcidump",
    "write_fcidump",
    "write_spin_orbital_fcidump",
    "build_fock",
    "reference_energy",
    "aufbau_occupation",
]

DUPLICATE_TOL = 1e-12
WRITE_CUTOFF = 1e-14
INVARIANT_TOL = 1e-10


def aufbau_occupation(n_spin_orbitals, n_electrons, ms2=0):
    """Occupy the lowest alpha (even) and beta (odd) spin orbitals in index order."""
    if (n_electrons + ms2) % 2:
        raise FCIDUMPError(f"NELEC={n_electrons} and MS2={ms2} have different parity")
    n_alpha = (n_electrons + ms2) // 2
    n_beta = (n_electrons - ms2) // 2
    n_spatial = n_spin_orbitals // 2
    if n_alpha < 0 or n_beta < 0 or n_alpha > n_spatial or n_beta > n_spatial:
        raise FCIDUMPError(
            f"cannot place {n_alpha} alpha / {n_beta} beta electrons in {n_spatial} spatial orbitals"
        )
    occ = sorted([2 * m for m in range(n_alpha)] + [2 * m + 1 for m in range(n_beta)])
    virt = [p for p in range(n_spin_orbitals) if p not in set(occ)]
    return tuple(occ), tuple(virt)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SpinOrbitalHamiltonian:
    """Second-quantized Hamiltonian with at most pairwise interactions.

    H = e_core + sum h^p_q a+_p a_q + 1/4 sum v^{pq}_{rs} a+_p a+_q a_s a_r
    """

    n_electrons: int
    e_core: float
    h: np.ndarray
    v: np.ndarray
    ms2: int = 0
    occupied: tuple = None
    virtual: tuple = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        h = _frozen(self.h)
        v = _frozen(self.v)
        n = h.shape[0]
        if h.shape != (n, n) or v.shape != (n, n, n, n):
            raise DimensionError(f"inconsistent tensor shapes {h.shape} and {v.shape}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "e_core", float(self.e_core))
        if self.occupied is None:
            occ, virt = aufbau_occupation(n, self.n_electrons, self.ms2)
        else:
            occ = tuple(sorted(int(i) for i in self.occupied))
            virt = tuple(p for p in range(n) if p not in set(occ))
        if len(occ) != self.n_electrons:
            raise DimensionError(f"{len(occ)} occupied spin orbitals for {self.n_electrons} electrons")
        object.__setattr__(self, "occupied", occ)
        object.__setattr__(self, "virtual", virt)
        self.check_invariants()

    @property
    def n_spin_orbitals(self):
        return self.h.shape[0]

    @property
    def occupied_set(self):
        return frozenset(self.occupied)

    @property
    def virtual_set(self):
        return frozenset(self.virtual)

    @cached_property
    def fock(self):
        o = list(self.occupied)
        f = self.h + np.einsum("piqi->pq", self.v[:, o][:, :, :, o])
        f.flags.writeable = False
        return f

    @cached_property
    def orbital_energies(self):
        return _frozen(np.diag(self.fock))

    def check_invariants(self, tol=INVARIANT_TOL):
        h, v = self.h, self.v
        if np.abs(h - h.T).max(initial=0.0) > tol:
            raise FCIDUMPError("one-body tensor is not symmetric")
        checks = {
            "v^{pq}_{rs} = -v^{qp}_{rs}": v + v.transpose(1, 0, 2, 3),
            "v^{pq}_{rs} = -v^{pq}_{sr}": v + v.transpose(0, 1, 3, 2),
            "v^{pq}_{rs} = v^{rs}_{pq}": v - v.transpose(2, 3, 0, 1),
        }
        for name, diff in checks.items():
            if diff.size and np.abs(diff).max() > tol:
                raise FCIDUMPError(f"two-body tensor violates {name}")

    def spatial_integrals(self):
        """Recover (h_mn, (mn|kl)) for a spin-restricted Hamiltonian."""
        n = self.n_spin_orbitals
        if n % 2:
            raise FCIDUMPError("odd number of spin orbitals cannot be spin-restricted")
        a, b = slice(0, n, 2), slice(1, n, 2)
        h = self.h[a, a]
        # (mn|kl) = <mk|nl> with alpha on the first electron, beta on the second
        eri = self.v[a, b, a, b].transpose(0, 2, 1, 3)
        mixed = [self.h[a, b], self.h[b, a], self.h[a, a] - self.h[b, b]]
        if any(np.abs(x).max(initial=0.0) > INVARIANT_TOL for x in mixed):
            raise FCIDUMPError("Hamiltonian is not spin-restricted")
        rebuilt = _spin_orbital_tensors(h, eri)[1]
        if np.abs(rebuilt - self.v).max(initial=0.0) > INVARIANT_TOL:
            raise FCIDUMPError("Hamiltonian is not spin-restricted")
        return np.array(h), np.array(eri)


@dataclass(frozen=True, eq=False)
class FockMatrix:
    f: np.ndarray
    diagonal_tolerance: float = 1e-8

    @property
    def orbital_energies(self):
        return np.diag(self.f).copy()

    def max_off_diagonal(self):
        off = self.f - np.diag(np.diag(self.f))
        if off.size == 0:
            return (0, 0), 0.0
        idx = np.unravel_index(np.argmax(np.abs(off)), off.shape)
        return (int(idx[0]), int(idx[1])), float(off[idx])


def build_fock(H: SpinOrbitalHamiltonian, diagonal_tolerance=1e-8) -> FockMatrix:
    """f^p_q = h^p_q + sum_i v^{pi}_{qi}; raise if the reference is not canonical."""
    fm = FockMatrix(np.array(H.fock), diagonal_tolerance)
    (p, q), worst = fm.max_off_diagonal()
    if abs(worst) > diagonal_tolerance:
        raise NonCanonicalReference(p, q, worst, diagonal_tolerance)
    return fm


def reference_energy(H: SpinOrbitalHamiltonian) -> float:
    o = list(H.occupied)
    if not o:
        return H.e_core
    e1 = np.trace(H.h[np.ix_(o, o)])
    e2 = 0.5 * np.einsum("ijij->", H.v[np.ix_(o, o, o, o)])
    return float(H.e_core + e1 + e2)


# --- FCIDUMP ----------------------------------------------------------------

_KEY = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=")


def _parse_header(body):
    body = re.sub(r"^\s*&FCI", "", body, flags=re.IGNORECASE)
    keys = list(_KEY.finditer(body))
    if not keys:
        raise FCIDUMPError("malformed header: no KEY=value entries")
    out = {}
    for k, nxt in zip(keys, keys[1:] + [None]):
        raw = body[k.end(): nxt.start() if nxt else len(body)]
        vals = [x for x in re.split(r"[,\s]+", raw) if x]
        out[k.group(1).upper()] = vals
    return out


def _header_int(header, key, default=None):
    if key not in header:
        if default is None:
            raise FCIDUMPError(f"malformed header: missing {key}")
        return default
    try:
        return int(header[key][0])
    except (IndexError, ValueError):
        raise FCIDUMPError(f"malformed header: bad value for {key}: {header[key]}") from None


def _split_fcidump(text):
    lines = text.splitlines()
    for n, line in enumerate(lines):
        s = line.strip().upper()
        if s.startswith("&END") or s == "/":
            return "\n".join(lines[:n]), lines[n + 1:]
    raise FCIDUMPError("malformed header: no &END terminator")


def _records(lines, norb):
    for lineno, line in enumerate(lines, 1):
        tok = line.split()
        if not tok:
            continue
        if len(tok) != 5:
            raise FCIDUMPError(f"record {lineno}: expected 'value i j k l', got {line!r}")
        try:
            value = float(tok[0].replace("D", "E").replace("d", "e"))
            idx = tuple(int(t) for t in tok[1:])
        except ValueError:
            raise FCIDUMPError(f"record {lineno}: cannot parse {line!r}") from None
        if any(i < 0 or i > norb for i in idx):
            raise FCIDUMPError(f"record {lineno}: index out of range 1..{norb}: {idx}")
        yield value, idx


def _store(table, key, value):
    old = table.get(key)
    if old is not None and abs(old - value) > DUPLICATE_TOL:
        raise FCIDUMPError(f"conflicting duplicate records for {key}: {old!r} vs {value!r}")
    table[key] = value


def _spin_orbital_tensors(h, eri):
    norb = h.shape[0]
    d = np.eye(2)
    h_so = np.kron(h, d)
    chem = (
        eri[:, None, :, None, :, None, :, None]
        * d[None, :, None, :, None, None, None, None]
        * d[None, None, None, None, None, :, None, :]
    ).reshape((2 * norb,) * 4)
    phys = chem.transpose(0, 2, 1, 3)
    return h_so, phys - phys.transpose(0, 1, 3, 2)


def parse_fcidump(text) -> SpinOrbitalHamiltonian:
    """Parse FCIDUMP text (or a text stream) into a spin-orbital Hamiltonian.

    The standard dialect stores spatial integrals in chemists' notation (ij|kl)
    with 8-fold permutational symmetry.  A header flag ``ISPIN_ORBITAL=1``
    selects the spin-orbital dialect written by :func:`write_spin_orbital_fcidump`.
    """
    if not isinstance(text, str):
        text = text.read()
    head, body = _split_fcidump(text)
    header = _parse_header(head)
    norb = _header_int(header, "NORB")
    nelec = _header_int(header, "NELEC")
    ms2 = _header_int(header, "MS2", 0)
    if norb < 0 or nelec < 0:
        raise FCIDUMPError("malformed header: negative NORB or NELEC")
    spin_orbital = _header_int(header, "ISPIN_ORBITAL", 0) == 1

    core, one, two = {}, {}, {}
    for value, (i, j, k, l) in _records(body, norb):
        if i == j == k == l == 0:
            _store(core, 0, value)
        elif k == 0 and l == 0 and i > 0 and j > 0:
            key = (i, j) if spin_orbital else (max(i, j), min(i, j))
            _store(one, key, value)
        elif j == k == l == 0 and i > 0:
            continue  # orbital energy record
        elif min(i, j, k, l) > 0:
            if spin_orbital:
                if i >= k or j >= l:
                    raise FCIDUMPError(f"spin-orbital record needs i<k and j<l: {(i, j, k, l)}")
                key = (i, j, k, l)
            else:
                ij, kl = (max(i, j), min(i, j)), (max(k, l), min(k, l))
                key = max(ij, kl) + min(ij, kl)
            _store(two, key, value)
        else:
            raise FCIDUMPError(f"unrecognised index pattern {(i, j, k, l)}")

    e_core = core.get(0, 0.0)
    meta = {"header": {k: v for k, v in header.items()}, "spin_orbital": spin_orbital}
    if spin_orbital:
        h = np.zeros((norb, norb))
        for (i, j), x in one.items():
            h[i - 1, j - 1] = x
        v = np.zeros((norb,) * 4)
        for (i, j, k, l), x in two.items():
            p, r, q, s = i - 1, j - 1, k - 1, l - 1
            v[p, q, r, s] = x
            v[q, p, r, s] = -x
            v[p, q, s, r] = -x
            v[q, p, s, r] = x
        return SpinOrbitalHamiltonian(nelec, e_core, h, v, ms2=ms2, metadata=meta)

    h = np.zeros((norb, norb))
    for (i, j), x in one.items():
        h[i - 1, j - 1] = h[j - 1, i - 1] = x
    eri = np.zeros((norb,) * 4)
    for (i, j, k, l), x in two.items():
        i, j, k, l = i - 1, j - 1, k - 1, l - 1
        for a, b, c, d in ((i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k)):
            eri[a, b, c, d] = eri[c, d, a, b] = x
    h_so, v_so = _spin_orbital_tensors(h, eri)
    return SpinOrbitalHamiltonian(nelec, e_core, h_so, v_so, ms2=ms2, metadata=meta)


def read_fcidump(path) -> SpinOrbitalHamiltonian:
    H = parse_fcidump(Path(path).read_text())
    H.metadata["source"] = str(path)
    return H


def _fmt(x, i, j, k, l):
    return f"{x:24.15e} {i:4d} {j:4d} {k:4d} {l:4d}\n"


def write_fcidump(H: SpinOrbitalHamiltonian, dest=None):
    """Write a spin-restricted Hamiltonian in the spatial FCIDUMP dialect.

    Returns the text; also writes it to ``dest`` (path or stream) when given.
    """
    h, eri = H.spatial_integrals()
    norb = h.shape[0]
    out = io.StringIO()
    out.write(f" &FCI NORB={norb:4d},NELEC={H.n_electrons:3d},MS2={H.ms2},\n")
    out.write("  ORBSYM=" + "1," * norb + "\n  ISYM=1,\n &END\n")
    pairs = [(i, j) for i in range(norb) for j in range(i + 1)]
    for a, (i, j) in enumerate(pairs):
        for k, l in pairs[: a + 1]:
            x = eri[i, j, k, l]
            if abs(x) > WRITE_CUTOFF:
                out.write(_fmt(x, i + 1, j + 1, k + 1, l + 1))
    for i, j in pairs:
        if abs(h[i, j]) > WRITE_CUTOFF:
            out.write(_fmt(h[i, j], i + 1, j + 1, 0, 0))
    out.write(_fmt(H.e_core, 0, 0, 0, 0))
    return _emit(out.getvalue(), dest)


def write_spin_orbital_fcidump(constant, h, v, n_electrons, ms2=0, dest=None):
    """Spin-orbital dialect: every spin orbital is an independent orbital.

    One-body records ``x p q 0 0`` hold h^p_q for all (p, q).  Two-body records
    ``x i j k l`` (i<k, j<l) hold the antisymmetrized v^{ik}_{jl}, keeping the
    chemists' pairing of creator/annihilator positions.  No permutational
    symmetry beyond antisymmetry is assumed.
    """
    n = h.shape[0]
    out = io.StringIO()
    out.write(f" &FCI NORB={n:4d},NELEC={n_electrons:3d},MS2={ms2},\n")
    out.write("  ISPIN_ORBITAL=1,\n &END\n")
    for p in range(n):
        for q in range(p + 1, n):
            for r in range(n):
                for s in range(r + 1, n):
                    x = v[p, q, r, s]
                    if abs(x) > WRITE_CUTOFF:
                        out.write(_fmt(x, p + 1, r + 1, q + 1, s + 1))
    for p in range(n):
        for q in range(n):
            if abs(h[p, q]) > WRITE_CUTOFF:
                out.write(_fmt(h[p, q], p + 1, q + 1, 0, 0))
    out.write(_fmt(constant, 0, 0, 0, 0))
    return _emit(out.getvalue(), dest)


def _emit(text, dest):
    if dest is None:
        return text
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)
    return text
