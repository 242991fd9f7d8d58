"""Particle-hole coefficients of the DUCC(2) effective Hamiltonian.

    Gamma = scalar + sum g^P_Q N[P+ Q] + 1/4 sum g^{PQ}_{RS} N[P+ Q+ S R]

with P, Q, R, S running over active spin orbitals.  Every contribution is
written out explicitly below; the de-excitation families are the Hermitian
conjugates of the excitation families and are accumulated by transposition.

Block spec strings use ``o``/``v`` for summed occupied/virtual labels and
``O``/``V`` for active (free) ones, e.g. ``v("oVvV")`` is v^{M B}_{e A}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..active_space import ActiveSpace
from ..ccsd import ClusterAmplitudes
from ..errors import DimensionError, HermiticityError
from ..integrals import SpinOrbitalHamiltonian, reference_energy

CROSS_CHECK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GammaTensors:
    scalar_ph: float
    g1: np.ndarray
    g2: np.ndarray
    active: tuple
    active_occupied: tuple
    active_virtual: tuple

    def __add__(self, other):
        if self.active != other.active:
            raise DimensionError("gamma contributions over different active spaces")
        return GammaTensors(
            self.scalar_ph + other.scalar_ph, self.g1 + other.g1, self.g2 + other.g2,
            self.active, self.active_occupied, self.active_virtual,
        )

    def local(self, kind):
        loc = {p: k for k, p in enumerate(self.active)}
        return [loc[p] for p in (self.active_occupied if kind == "o" else self.active_virtual)]

    def block(self, key):
        """Sub-array by class string, e.g. ``'vo'`` for g^A_I or ``'vvov'`` for g^{BC}_{IA}."""
        arr = self.g1 if len(key) == 2 else self.g2
        return arr[np.ix_(*[self.local(c) for c in key])]

    def max_asymmetry(self):
        a1 = np.abs(self.g1 - self.g1.T).max(initial=0.0)
        a2 = np.abs(self.g2 - self.g2.transpose(2, 3, 0, 1)).max(initial=0.0)
        return float(max(a1, a2))

    @classmethod
    def zeros(cls, AS: ActiveSpace):
        n = len(AS.active)
        return cls(0.0, np.zeros((n, n)), np.zeros((n, n, n, n)), AS.active, AS.active_occupied, AS.active_virtual)


class _Ctx:
    def __init__(self, H, AS, T=None):
        if tuple(H.occupied) != tuple(AS.occupied):
            raise DimensionError("active space does not match the Hamiltonian reference")
        occ, vir = list(H.occupied), list(H.virtual)
        pos_o = {p: k for k, p in enumerate(occ)}
        pos_v = {p: k for k, p in enumerate(vir)}
        self.full = {"o": occ, "v": vir, "O": list(AS.active_occupied), "V": list(AS.active_virtual)}
        self.compact = {
            "o": list(range(len(occ))),
            "v": list(range(len(vir))),
            "O": [pos_o[p] for p in AS.active_occupied],
            "V": [pos_v[p] for p in AS.active_virtual],
        }
        loc = AS.local_index()
        self.local = {"O": [loc[p] for p in AS.active_occupied], "V": [loc[p] for p in AS.active_virtual]}
        self.H, self.AS, self.T = H, AS, T
        self.fock = H.fock
        self._cache = {}

    def _get(self, name, key):
        k = (name, key)
        if k not in self._cache:
            if name == "f":
                a = self.fock[np.ix_(*[self.full[c] for c in key])]
            elif name == "v":
                a = self.H.v[np.ix_(*[self.full[c] for c in key])]
            elif name == "t1":
                a = self.T.t1[np.ix_(*[self.compact[c] for c in key])]
            else:
                a = self.T.t2[np.ix_(*[self.compact[c] for c in key])]
            self._cache[k] = a
        return self._cache[k]

    def f(self, key):
        return self._get("f", key)

    def v(self, key):
        return self._get("v", key)

    def t1(self, key):
        return self._get("t1", key)

    def t2(self, key):
        return self._get("t2", key)

    def put1(self, g1, key, val):
        g1[np.ix_(self.local[key[0]], self.local[key[1]])] += val

    def put2(self, g2, key, val):
        """Add a two-body block and its antisymmetric partners."""
        P, Q, R, S = (self.local[c] for c in key)
        g2[np.ix_(P, Q, R, S)] += val
        if key[0] != key[1]:
            g2[np.ix_(Q, P, R, S)] -= val.transpose(1, 0, 2, 3)
        if key[2] != key[3]:
            g2[np.ix_(P, Q, S, R)] -= val.transpose(0, 1, 3, 2)
        if key[0] != key[1] and key[2] != key[3]:
            g2[np.ix_(Q, P, S, R)] += val.transpose(1, 0, 3, 2)

    def empty(self):
        return GammaTensors.zeros(self.AS)

    def make(self, scalar, g1, g2):
        AS = self.AS
        return GammaTensors(float(scalar), g1, g2, AS.active, AS.active_occupied, AS.active_virtual)


def _check_external(T: ClusterAmplitudes, AS: ActiveSpace):
    from ..active_space import internal_masks

    m1, m2 = internal_masks(T, AS)
    if np.any(T.t1[m1] != 0) or np.any(T.t2[m2] != 0):
        raise ValueError("t_ext carries all-active amplitudes; split the amplitudes first")


def _zeros(c):
    n = len(c.AS.active)
    return np.zeros((n, n)), np.zeros((n, n, n, n))


def gamma_bare(H: SpinOrbitalHamiltonian, AS: ActiveSpace) -> GammaTensors:
    """(H)_act in particle-hole form: g = f and v on active indices, scalar E_ref."""
    c = _Ctx(H, AS)
    g1, g2 = _zeros(c)
    for key in ("VV", "OO", "OV", "VO"):
        c.put1(g1, key, c.f(key))
    for key in ("VVOV", "OVOO", "VOVV", "OOOV", "OVOV", "VVVV", "OOOO", "OOVV", "VVOO"):
        c.put2(g2, key, c.v(key))
    return c.make(reference_energy(H), g1, g2)


def _singles_upper(c):
    """(H_N T_ext)_C: excitation-side family, open part."""
    e = np.einsum
    f, v, t1, t2 = c.f, c.v, c.t1, c.t2
    g1, g2 = _zeros(c)

    c.put1(g1, "VV",
           - e("mA,Bm->BA", f("oV"), t1("Vo"))
           + e("mBeA,em->BA", v("oVvV"), t1("vo"))
           - 0.5 * e("mneA,eBmn->BA", v("oovV"), t2("vVoo")))
    c.put1(g1, "OO",
           e("Je,eI->JI", f("Ov"), t1("vO"))
           + e("mJeI,em->JI", v("oOvO"), t1("vo"))
           + 0.5 * e("mJef,efmI->JI", v("oOvv"), t2("vvoO")))
    c.put1(g1, "OV", e("mIeA,em->IA", v("oOvV"), t1("vo")))
    c.put1(g1, "VO",
           e("Ae,eI->AI", f("Vv"), t1("vO"))
           - e("mI,Am->AI", f("oO"), t1("Vo"))
           + e("mAeI,em->AI", v("oVvO"), t1("vo"))
           + e("me,eAmI->AI", f("ov"), t2("vVoO"))
           - 0.5 * e("mneI,eAmn->AI", v("oovO"), t2("vVoo"))
           + 0.5 * e("mAef,efmI->AI", v("oVvv"), t2("vvoO")))

    # g^{BC}_{IA}
    c.put2(g2, "VVOV",
           e("BCeA,eI->BCIA", v("VVvV"), t1("vO"))
           - e("mBAI,Cm->BCIA", v("oVVO"), t1("Vo"))
           + e("mCAI,Bm->BCIA", v("oVVO"), t1("Vo"))
           + e("mA,BCmI->BCIA", f("oV"), t2("VVoO"))
           - e("mBeA,eCmI->BCIA", v("oVvV"), t2("vVoO"))
           + e("mCeA,eBmI->BCIA", v("oVvV"), t2("vVoO"))
           + 0.5 * e("mnIA,BCmn->BCIA", v("ooOV"), t2("VVoo")))
    # g^{KA}_{IJ}
    c.put2(g2, "OVOO",
           e("KAeJ,eI->KAIJ", v("OVvO"), t1("vO"))
           - e("KAeI,eJ->KAIJ", v("OVvO"), t1("vO"))
           + e("mKIJ,Am->KAIJ", v("oOOO"), t1("Vo"))
           + e("Ke,eAIJ->KAIJ", f("Ov"), t2("vVOO"))
           + 0.5 * e("KAef,efIJ->KAIJ", v("OVvv"), t2("vvOO"))
           - e("mKeJ,eAmI->KAIJ", v("oOvO"), t2("vVoO"))
           + e("mKeI,eAmJ->KAIJ", v("oOvO"), t2("vVoO")))
    # g^{CI}_{AB}
    c.put2(g2, "VOVV", -e("mIAB,Cm->CIAB", v("oOVV"), t1("Vo")))
    # g^{IJ}_{KA}
    c.put2(g2, "OOOV", e("IJeA,eK->IJKA", v("OOvV"), t1("vO")))
    # g^{JB}_{IA}
    c.put2(g2, "OVOV",
           e("JBeA,eI->JBIA", v("OVvV"), t1("vO"))
           + e("mJIA,Bm->JBIA", v("oOOV"), t1("Vo"))
           - e("mJeA,eBmI->JBIA", v("oOvV"), t2("vVoO")))
    # g^{CD}_{AB}
    x = e("mCAB,Dm->CDAB", v("oVVV"), t1("Vo"))
    c.put2(g2, "VVVV", x - x.transpose(1, 0, 2, 3) + 0.5 * e("mnAB,CDmn->CDAB", v("ooVV"), t2("VVoo")))
    # g^{KL}_{IJ}
    x = e("KLeJ,eI->KLIJ", v("OOvO"), t1("vO"))
    c.put2(g2, "OOOO", x - x.transpose(0, 1, 3, 2) + 0.5 * e("KLef,efIJ->KLIJ", v("OOvv"), t2("vvOO")))
    # g^{AB}_{IJ}
    x = e("ABeJ,eI->ABIJ", v("VVvO"), t1("vO"))
    y = e("mAIJ,Bm->ABIJ", v("oVOO"), t1("Vo"))
    z = e("Ae,eBIJ->ABIJ", f("Vv"), t2("vVOO"))
    w = e("mJ,ABmI->ABIJ", f("oO"), t2("VVoO"))
    u = e("mAeJ,eBmI->ABIJ", v("oVvO"), t2("vVoO"))
    c.put2(g2, "VVOO",
           x - x.transpose(0, 1, 3, 2)
           + y - y.transpose(1, 0, 2, 3)
           + z - z.transpose(1, 0, 2, 3)
           + w - w.transpose(0, 1, 3, 2)
           + 0.5 * e("ABef,efIJ->ABIJ", v("VVvv"), t2("vvOO"))
           + 0.5 * e("mnIJ,ABmn->ABIJ", v("ooOO"), t2("VVoo"))
           - u + u.transpose(0, 1, 3, 2) + u.transpose(1, 0, 2, 3) - u.transpose(1, 0, 3, 2))
    return g1, g2


def _double_upper(c):
    """1/2 (T_ext^+ (F_N T_ext)_C)_C with a canonical (block-diagonal) Fock operator."""
    e = np.einsum
    f, t1, t2 = c.f, c.t1, c.t2
    g1, g2 = _zeros(c)

    c.put1(g1, "OO",
           0.5 * e("eJ,ef,fI->JI", t1("vO"), f("vv"), t1("vO"))
           - 0.5 * e("eJ,mI,em->JI", t1("vO"), f("oO"), t1("vo"))
           - 0.25 * e("efmJ,nI,efmn->JI", t2("vvoO"), f("oO"), t2("vvoo"))
           + 0.5 * e("egmJ,ef,fgmI->JI", t2("vvoO"), f("vv"), t2("vvoO"))
           + 0.25 * e("efIm,nm,efnJ->JI", t2("vvOo"), f("oo"), t2("vvoO")))
    c.put1(g1, "VV",
           0.5 * e("Bm,nm,An->AB", t1("Vo"), f("oo"), t1("Vo"))
           - 0.5 * e("Bm,Ae,em->AB", t1("Vo"), f("Vv"), t1("vo"))
           + 0.25 * e("fBmn,Ae,efmn->AB", t2("vVoo"), f("Vv"), t2("vvoo"))
           + 0.25 * e("eBmn,ef,Afmn->AB", t2("vVoo"), f("vv"), t2("Vvoo"))
           - 0.5 * e("eBmk,nk,eAnm->AB", t2("vVoo"), f("oo"), t2("vVoo")))
    c.put1(g1, "VO",
           0.5 * e("em,Af,efmI->AI", t1("vo"), f("Vv"), t2("vvoO"))
           - 0.5 * e("em,nI,eAmn->AI", t1("vo"), f("oO"), t2("vVoo"))
           - 0.5 * e("em,nm,AeIn->AI", t1("vo"), f("oo"), t2("VvOo"))
           + 0.5 * e("em,ef,AfIm->AI", t1("vo"), f("vv"), t2("VvOo")))
    c.put1(g1, "OV",
           - 0.5 * e("AeIm,nm,en->IA", t2("VvOo"), f("oo"), t1("vo"))
           + 0.5 * e("AeIm,ef,fm->IA", t2("VvOo"), f("vv"), t1("vo")))

    # g^{IJ}_{KL}
    x = e("efIJ,mL,efmK->IJKL", t2("vvOO"), f("oO"), t2("vvoO"))
    c.put2(g2, "OOOO",
           0.25 * (x - x.transpose(0, 1, 3, 2))
           + 0.5 * e("egIJ,ef,fgKL->IJKL", t2("vvOO"), f("vv"), t2("vvOO")))
    # g^{IA}_{JB}
    c.put2(g2, "OVOV",
           0.5 * e("eBmI,nJ,eAmn->IAJB", t2("vVoO"), f("oO"), t2("vVoo"))
           - 0.5 * e("eBmI,Af,efmJ->IAJB", t2("vVoO"), f("Vv"), t2("vvoO"))
           - 0.5 * e("eBmI,ef,fAmJ->IAJB", t2("vVoO"), f("vv"), t2("vVoO"))
           + 0.5 * e("eBmI,nm,eAnJ->IAJB", t2("vVoO"), f("oo"), t2("vVoO")))
    # g^{AB}_{CD}
    x = e("CDmn,Ae,eBmn->ABCD", t2("VVoo"), f("Vv"), t2("vVoo"))
    c.put2(g2, "VVVV",
           0.25 * (x - x.transpose(1, 0, 2, 3))
           - 0.5 * e("CDmk,nm,ABnk->ABCD", t2("VVoo"), f("oo"), t2("VVoo")))
    # g^{IJ}_{KA}
    c.put2(g2, "OOOV",
           - 0.5 * e("eAIJ,mK,em->IJKA", t2("vVOO"), f("oO"), t1("vo"))
           + 0.5 * e("eAIJ,ef,fK->IJKA", t2("vVOO"), f("vv"), t1("vO")))
    # g^{CI}_{AB}
    c.put2(g2, "VOVV",
           - 0.5 * e("ABmI,Ce,em->CIAB", t2("VVoO"), f("Vv"), t1("vo"))
           + 0.5 * e("ABmI,nm,Cn->CIAB", t2("VVoO"), f("oo"), t1("Vo")))
    # g^{KA}_{IJ}
    x = e("eK,mJ,eAIm->KAIJ", t1("vO"), f("oO"), t2("vVOo"))
    c.put2(g2, "OVOO",
           0.5 * e("eK,ef,fAIJ->KAIJ", t1("vO"), f("vv"), t2("vVOO"))
           - 0.5 * (x - x.transpose(0, 1, 3, 2))
           + 0.5 * e("eK,Af,efIJ->KAIJ", t1("vO"), f("Vv"), t2("vvOO")))
    # g^{AB}_{CI}
    x = e("Cm,Be,eAIm->ABCI", t1("Vo"), f("Vv"), t2("vVOo"))
    c.put2(g2, "VVVO",
           0.5 * e("Cm,nm,ABnI->ABCI", t1("Vo"), f("oo"), t2("VVoO"))
           - 0.5 * (x - x.transpose(1, 0, 2, 3))
           + 0.5 * e("Cm,nI,ABmn->ABCI", t1("Vo"), f("oO"), t2("VVoo")))
    return g1, g2


def _conjugate(g1, g2):
    return g1.T.copy(), g2.transpose(2, 3, 0, 1).copy()


def _cross_check(c, g1, g2, families, H, T):
    """Compare transposed blocks with the explicitly transcribed de-excitation entries."""
    from ..wick.evaluate import evaluate
    from ..wick.parse import parse_expression, parse_header
    from .tables import corrected_entries

    n = H.n_spin_orbitals
    s1, s2 = T.full_tensors(n)
    arrays = {"f": H.fock, "v": H.v, "s1": s1, "s2": s2}
    if "TFT2" in families:
        f = H.fock.copy()
        o, v = list(H.occupied), list(H.virtual)
        f[np.ix_(o, v)] = 0.0
        f[np.ix_(v, o)] = 0.0
        arrays["f"] = f
    loc = c.AS.local_index()
    for fam, hdr, expr in corrected_entries():
        if fam not in families:
            continue
        up, lo = parse_header(hdr)
        labels = up + lo
        ranges = {x: list(c.full["O" if x.space == "o" else "V"]) for x in labels}
        ref = evaluate(parse_expression(expr), arrays, c.full["o"], c.full["v"], labels, ranges)
        arr = g1 if len(up) == 1 else g2
        got = arr[np.ix_(*[[loc[p] for p in ranges[x]] for x in labels])]
        dev = float(np.abs(got - ref).max(initial=0.0))
        if dev > CROSS_CHECK_TOL:
            raise HermiticityError(f"conjugate block {fam} {hdr}", dev, CROSS_CHECK_TOL)


def gamma_singles_commutator(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, AS: ActiveSpace,
                             cross_check=True) -> GammaTensors:
    """Open parts of (H_N T_ext)_C + (T_ext^+ H_N)_C."""
    _check_external(t_ext, AS)
    c = _Ctx(H, AS, t_ext)
    u1, u2 = _singles_upper(c)
    l1, l2 = _conjugate(u1, u2)
    if cross_check:
        _cross_check(c, l1, l2, ("TH",), H, t_ext)
    return c.make(0.0, u1 + l1, u2 + l2)


def gamma_double_commutator(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, AS: ActiveSpace,
                            cross_check=True) -> GammaTensors:
    """Open parts of 1/2 (T^+ (F_N T)_C)_C + 1/2 ((T^+ F_N)_C T)_C."""
    _check_external(t_ext, AS)
    c = _Ctx(H, AS, t_ext)
    u1, u2 = _double_upper(c)
    l1, l2 = _conjugate(u1, u2)
    if cross_check:
        _cross_check(c, l1, l2, ("TFT2",), H, t_ext)
    return c.make(0.0, u1 + l1, u2 + l2)


def gamma_scalar(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes) -> float:
    """<Phi|Gamma|Phi>: E_ref plus the fully contracted terms of both commutators."""
    e = np.einsum
    o, v = list(H.occupied), list(H.virtual)
    f = H.fock
    fov, foo, fvv = f[np.ix_(o, v)], f[np.ix_(o, o)], f[np.ix_(v, v)]
    t1, t2 = t_ext.t1, t_ext.t2
    single = e("me,em->", fov, t1) + 0.25 * e("mnef,efmn->", H.v[np.ix_(o, o, v, v)], t2)
    double = (
        - 0.25 * e("km,efkn,efmn->", foo, t2, t2)
        - 0.5 * e("mn,em,en->", foo, t1, t1)
        + 0.5 * e("ef,em,fm->", fvv, t1, t1)
        + 0.25 * e("ef,egmn,fgmn->", fvv, t2, t2)
    )
    return float(reference_energy(H) + 2.0 * single + 2.0 * double)


def build_gamma(H: SpinOrbitalHamiltonian, t_ext: ClusterAmplitudes, AS: ActiveSpace,
                cross_check=True) -> GammaTensors:
    """Full DUCC(2) particle-hole Gamma."""
    bare = gamma_bare(H, AS)
    g = bare + gamma_singles_commutator(H, t_ext, AS, cross_check) + gamma_double_commutator(H, t_ext, AS, cross_check)
    return GammaTensors(gamma_scalar(H, t_ext), g.g1, g.g2, g.active, g.active_occupied, g.active_virtual)
