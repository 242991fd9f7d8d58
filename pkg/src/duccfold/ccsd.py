"""Spin-orbital CCSD: residuals, MP2 guess and a DIIS-accelerated Jacobi solver.

Public amplitudes use upper-then-lower ordering over the occupied/virtual
lists of the Hamiltonian: ``t1[a, i]`` and ``t2[a, b, i, j]``.  Internally the
working equations run on ``[i, a]`` / ``[i, j, a, b]`` arrays.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, DegenerateDenominator, DimensionError, DivergenceError
from .integrals import SpinOrbitalHamiltonian, build_fock

log = logging.getLogger(__name__)

DENOMINATOR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ClusterAmplitudes:
    t1: np.ndarray
    t2: np.ndarray
    occupied: tuple
    virtual: tuple
    correlation_energy: float = 0.0
    residual_norm: float = float("nan")
    iterations: int = 0

    def __post_init__(self):
        no, nv = len(self.occupied), len(self.virtual)
        if self.t1.shape != (nv, no) or self.t2.shape != (nv, nv, no, no):
            raise DimensionError(
                f"amplitude shapes {self.t1.shape}, {self.t2.shape} do not match {nv} virtual / {no} occupied"
            )

    @classmethod
    def zeros(cls, occupied, virtual):
        no, nv = len(occupied), len(virtual)
        return cls(np.zeros((nv, no)), np.zeros((nv, nv, no, no)), tuple(occupied), tuple(virtual))

    def with_amplitudes(self, t1, t2):
        return replace(self, t1=t1, t2=t2)

    def full_tensors(self, n):
        """Embed into full spin-orbital tensors s1[p, q], s2[p, q, r, s]."""
        o, v = list(self.occupied), list(self.virtual)
        s1 = np.zeros((n, n))
        s2 = np.zeros((n, n, n, n))
        s1[np.ix_(v, o)] = self.t1
        s2[np.ix_(v, v, o, o)] = self.t2
        return s1, s2


@dataclass(frozen=True)
class SolverOptions:
    max_iterations: int = 200
    tolerance: float = 1e-10
    diis_depth: int = 8
    diis_start: int = 2


def _check_dims(H, T):
    if tuple(T.occupied) != tuple(H.occupied) or tuple(T.virtual) != tuple(H.virtual):
        raise DimensionError("amplitudes were built for a different occupied/virtual partition")


class _Ints:
    """Occupied/virtual blocks of f and v for the working equations."""

    def __init__(self, H):
        o, v = list(H.occupied), list(H.virtual)
        f = H.fock
        self.foo = f[np.ix_(o, o)]
        self.fov = f[np.ix_(o, v)]
        self.fvv = f[np.ix_(v, v)]
        self._v = H.v
        self._sp = {"o": o, "v": v}
        self._cache = {}
        eo, ev = np.diag(self.foo), np.diag(self.fvv)
        self.d1 = eo[:, None] - ev[None, :]
        self.d2 = eo[:, None, None, None] + eo[None, :, None, None] - ev[None, None, :, None] - ev[None, None, None, :]

    def __getitem__(self, key):
        if key not in self._cache:
            self._cache[key] = self._v[np.ix_(*[self._sp[c] for c in key])]
        return self._cache[key]


def _energy(I, t1, t2):
    oovv = I["oovv"]
    return float(
        np.einsum("ia,ia->", I.fov, t1)
        + 0.25 * np.einsum("ijab,ijab->", oovv, t2)
        + 0.5 * np.einsum("ijab,ia,jb->", oovv, t1, t1)
    )


def _residuals(I, t1, t2):
    oovv = I["oovv"]
    fov = I.fov
    tau = t2 + np.einsum("ia,jb->ijab", t1, t1) - np.einsum("ib,ja->ijab", t1, t1)
    taut = t2 + 0.5 * (np.einsum("ia,jb->ijab", t1, t1) - np.einsum("ib,ja->ijab", t1, t1))

    Fae = (
        I.fvv
        - 0.5 * np.einsum("me,ma->ae", fov, t1)
        + np.einsum("mf,mafe->ae", t1, I["ovvv"])
        - 0.5 * np.einsum("mnaf,mnef->ae", taut, oovv)
    )
    Fmi = (
        I.foo
        + 0.5 * np.einsum("ie,me->mi", t1, fov)
        + np.einsum("ne,mnie->mi", t1, I["ooov"])
        + 0.5 * np.einsum("inef,mnef->mi", taut, oovv)
    )
    Fme = fov + np.einsum("nf,mnef->me", t1, oovv)

    x = np.einsum("je,mnie->mnij", t1, I["ooov"])
    Wmnij = I["oooo"] + x - x.transpose(0, 1, 3, 2) + 0.25 * np.einsum("ijef,mnef->mnij", tau, oovv)
    x = np.einsum("mb,amef->abef", t1, I["vovv"])
    Wabef = I["vvvv"] - x + x.transpose(1, 0, 2, 3) + 0.25 * np.einsum("mnab,mnef->abef", tau, oovv)
    Wmbej = (
        I["ovvo"]
        + np.einsum("jf,mbef->mbej", t1, I["ovvv"])
        - np.einsum("nb,mnej->mbej", t1, I["oovo"])
        - np.einsum("jnfb,mnef->mbej", 0.5 * t2 + np.einsum("jf,nb->jnfb", t1, t1), oovv)
    )

    r1 = (
        fov
        + np.einsum("ie,ae->ia", t1, Fae)
        - np.einsum("ma,mi->ia", t1, Fmi)
        + np.einsum("imae,me->ia", t2, Fme)
        - np.einsum("nf,naif->ia", t1, I["ovov"])
        - 0.5 * np.einsum("imef,maef->ia", t2, I["ovvv"])
        - 0.5 * np.einsum("mnae,nmei->ia", t2, I["oovo"])
    )

    x = np.einsum("ijae,be->ijab", t2, Fae - 0.5 * np.einsum("mb,me->be", t1, Fme))
    r2 = oovv + x - x.transpose(0, 1, 3, 2)
    x = np.einsum("imab,mj->ijab", t2, Fmi + 0.5 * np.einsum("je,me->mj", t1, Fme))
    r2 = r2 - x + x.transpose(1, 0, 2, 3)
    r2 = r2 + 0.5 * np.einsum("mnab,mnij->ijab", tau, Wmnij)
    r2 = r2 + 0.5 * np.einsum("ijef,abef->ijab", tau, Wabef)
    x = np.einsum("imae,mbej->ijab", t2, Wmbej) - np.einsum("ie,ma,mbej->ijab", t1, t1, I["ovvo"])
    r2 = r2 + x - x.transpose(1, 0, 2, 3) - x.transpose(0, 1, 3, 2) + x.transpose(1, 0, 3, 2)
    x = np.einsum("ie,abej->ijab", t1, I["vvvo"])
    r2 = r2 + x - x.transpose(1, 0, 2, 3)
    x = np.einsum("ma,mbij->ijab", t1, I["ovoo"])
    r2 = r2 - x + x.transpose(0, 1, 3, 2)
    return r1, r2


def _to_internal(T):
    return T.t1.T.copy(), T.t2.transpose(2, 3, 0, 1).copy()


def _to_public(t1, t2):
    return np.ascontiguousarray(t1.T), np.ascontiguousarray(t2.transpose(2, 3, 0, 1))


def ccsd_residuals(H: SpinOrbitalHamiltonian, T: ClusterAmplitudes):
    """Singles and doubles projections of exp(-T) H exp(T)|Phi>, as (r1[a,i], r2[a,b,i,j])."""
    _check_dims(H, T)
    r1, r2 = _residuals(_Ints(H), *_to_internal(T))
    return _to_public(r1, r2)


def correlation_energy(H: SpinOrbitalHamiltonian, T: ClusterAmplitudes) -> float:
    _check_dims(H, T)
    return _energy(_Ints(H), *_to_internal(T))


def _check_denominators(I):
    for d in (I.d1, I.d2):
        if d.size and np.abs(d).min() < DENOMINATOR_TOL:
            k = np.unravel_index(np.argmin(np.abs(d)), d.shape)
            raise DegenerateDenominator(tuple(int(x) for x in k), float(d[k]))


def mp2_guess(H: SpinOrbitalHamiltonian) -> ClusterAmplitudes:
    """First-order doubles t^{ab}_{ij} = v^{ab}_{ij} / (e_i + e_j - e_a - e_b)."""
    I = _Ints(H)
    _check_denominators(I)
    t1 = np.zeros_like(I.fov)
    t2 = I["oovv"] / I.d2
    e = _energy(I, t1, t2)
    p1, p2 = _to_public(t1, t2)
    return ClusterAmplitudes(p1, p2, H.occupied, H.virtual, correlation_energy=e)


class _DIIS:
    def __init__(self, depth):
        self.depth = depth
        self.vecs, self.errs = [], []

    def push(self, vec, err):
        self.vecs.append(vec)
        self.errs.append(err)
        if len(self.vecs) > self.depth:
            self.vecs.pop(0)
            self.errs.pop(0)

    def extrapolate(self):
        n = len(self.vecs)
        B = -np.ones((n + 1, n + 1))
        B[n, n] = 0.0
        for i in range(n):
            for j in range(i, n):
                B[i, j] = B[j, i] = np.dot(self.errs[i], self.errs[j])
        rhs = np.zeros(n + 1)
        rhs[n] = -1.0
        try:
            c = np.linalg.solve(B, rhs)[:n]
        except np.linalg.LinAlgError:
            return self.vecs[-1]
        if not np.all(np.isfinite(c)):
            return self.vecs[-1]
        return sum(ci * v for ci, v in zip(c, self.vecs))


def solve_ccsd(H: SpinOrbitalHamiltonian, opts: SolverOptions = None, guess: ClusterAmplitudes = None) -> ClusterAmplitudes:
    """Iterate the CCSD equations to a max-norm residual below ``opts.tolerance``."""
    opts = opts or SolverOptions()
    build_fock(H)
    I = _Ints(H)
    _check_denominators(I)
    if guess is None:
        guess = mp2_guess(H)
    else:
        _check_dims(H, guess)
    t1, t2 = _to_internal(guess)
    n1 = t1.size
    diis = _DIIS(opts.diis_depth)
    norm = float("inf")
    for it in range(opts.max_iterations + 1):
        r1, r2 = _residuals(I, t1, t2)
        norm = max(np.abs(r1).max(initial=0.0), np.abs(r2).max(initial=0.0))
        energy = _energy(I, t1, t2)
        if not (np.isfinite(norm) and np.isfinite(energy)):
            raise DivergenceError("CCSD iterations diverged", residual=norm, iterations=it)
        log.debug("ccsd iter %d  E=%.12f  |r|=%.3e", it, energy, norm)
        if norm < opts.tolerance:
            p1, p2 = _to_public(t1, t2)
            return ClusterAmplitudes(p1, p2, H.occupied, H.virtual, energy, float(norm), it)
        if it == opts.max_iterations:
            break
        dt1, dt2 = r1 / I.d1, r2 / I.d2
        vec = np.concatenate([(t1 + dt1).ravel(), (t2 + dt2).ravel()])
        diis.push(vec, np.concatenate([dt1.ravel(), dt2.ravel()]))
        if len(diis.vecs) >= opts.diis_start and opts.diis_depth > 0:
            vec = diis.extrapolate()
        t1 = vec[:n1].reshape(t1.shape)
        t2 = vec[n1:].reshape(t2.shape)
    raise ConvergenceError(
        f"CCSD not converged after {opts.max_iterations} iterations (residual {norm:.3e})",
        residual=float(norm),
        iterations=opts.max_iterations,
    )


def save_amplitudes(T: ClusterAmplitudes, path):
    np.savez(
        path,
        t1=T.t1,
        t2=T.t2,
        occupied=np.array(T.occupied, dtype=np.int64),
        virtual=np.array(T.virtual, dtype=np.int64),
        correlation_energy=np.float64(T.correlation_energy),
        residual_norm=np.float64(T.residual_norm),
        iterations=np.int64(T.iterations),
    )


def load_amplitudes(path) -> ClusterAmplitudes:
    path = Path(path)
    if not path.exists() and path.with_suffix(".npz").exists():
        path = path.with_suffix(".npz")
    with np.load(path) as d:
        return ClusterAmplitudes(
            d["t1"].copy(),
            d["t2"].copy(),
            tuple(int(i) for i in d["occupied"]),
            tuple(int(i) for i in d["virtual"]),
            float(d["correlation_energy"]),
            float(d["residual_norm"]),
            int(d["iterations"]),
        )
