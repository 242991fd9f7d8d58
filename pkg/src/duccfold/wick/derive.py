"""Operand definitions and the commutator families of the DUCC(2) expansion.

Families (all products are connected, outer results truncated at two-body):

==========  ===================================================
``H``       H_N itself (the bare active-space Hamiltonian)
``HT``      (H_N T)_C
``TH``      (T^+ H_N)_C
``FTT``     1/2 ((F_N T)_C T)_C
``TFT``     1/2 (T^+ (F_N T)_C)_C
``TFT2``    1/2 ((T^+ F_N)_C T)_C
``TTF``     1/2 (T^+ (T^+ F_N)_C)_C
==========  ===================================================

``FTT`` and ``TTF`` vanish when the Fock operator has no occupied-virtual
block; ``canonical=True`` drops that block from F_N in the double-commutator
families.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .algebra import OCC, VIR, Index, Op, Tensor, Term, canonicalize, product, sort_ops

SPACES = (OCC, VIR)
FAMILIES = ("H", "HT", "TH", "FTT", "TFT", "TFT2", "TTF")
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _idx(name, space):
    return Index(name, space)


def fock_operator(canonical=False):
    out = []
    for sp, sq in itertools.product(SPACES, SPACES):
        if canonical and sp != sq:
            continue
        p, q = _idx("p", sp), _idx("q", sq)
        out.append(Term(Fraction(1), (Tensor("f", (p,), (q,)),), (Op(p, True), Op(q, False))))
    return out


def two_body_operator():
    out = []
    for sp, sq, sr, ss in itertools.product(SPACES, repeat=4):
        p, q, r, s = _idx("p", sp), _idx("q", sq), _idx("r", sr), _idx("s", ss)
        out.append(
            Term(QUARTER, (Tensor("v", (p, q), (r, s)),), (Op(p, True), Op(q, True), Op(s, False), Op(r, False)))
        )
    return out


def hamiltonian_operator():
    return fock_operator() + two_body_operator()


def cluster_operator():
    a, b, i, j = _idx("a", VIR), _idx("b", VIR), _idx("i", OCC), _idx("j", OCC)
    t1 = Term(Fraction(1), (Tensor("s", (a,), (i,)),), (Op(a, True), Op(i, False)))
    t2 = Term(QUARTER, (Tensor("s", (a, b), (i, j)),), (Op(a, True), Op(b, True), Op(j, False), Op(i, False)))
    return [t1, t2]


def cluster_adjoint():
    a, b, i, j = _idx("a", VIR), _idx("b", VIR), _idx("i", OCC), _idx("j", OCC)
    t1 = Term(Fraction(1), (Tensor("s", (i,), (a,)),), (Op(i, True), Op(a, False)))
    t2 = Term(QUARTER, (Tensor("s", (i, j), (a, b)),), (Op(i, True), Op(j, True), Op(b, False), Op(a, False)))
    return [t1, t2]


def _scale(terms, c):
    return [Term(t.coeff * c, t.tensors, t.ops) for t in terms]


@lru_cache(maxsize=None)
def family_terms(family, canonical_fock=True):
    """Raw (uncanonicalized) operator terms of one family, rank <= 2 plus closed."""
    H, T, Td = hamiltonian_operator(), cluster_operator(), cluster_adjoint()
    F = fock_operator(canonical=canonical_fock)
    if family == "H":
        terms = H
    elif family == "HT":
        terms = product(H, T, open_=False)
    elif family == "TH":
        terms = product(Td, H, open_=False)
    elif family == "FTT":
        terms = _scale(product(product(F, T), T, open_=False), HALF)
    elif family == "TFT":
        terms = _scale(product(Td, product(F, T), open_=False), HALF)
    elif family == "TFT2":
        terms = _scale(product(product(Td, F), T, open_=False), HALF)
    elif family == "TTF":
        terms = _scale(product(Td, product(Td, F), open_=False), HALF)
    else:
        raise ValueError(f"unknown family {family!r}")
    return tuple(t for t in terms if len(t.ops) <= 4)


def _rename_ops(term, ops, targets):
    m = {o.index: t for o, t in zip(ops, targets)}
    return Term(term.coeff, tuple(t.rename(m) for t in term.tensors), ())


def extract_block(terms, upper=(), lower=()):
    """Coefficient expression of one Hamiltonian block.

    ``upper``/``lower`` are free Index labels.  Rank 0 returns the closed part;
    rank 1 returns g^P_Q in  sum g^P_Q N[P+ Q]; rank 2 returns the
    antisymmetric g^{PQ}_{RS} in 1/4 sum g^{PQ}_{RS} N[P+ Q+ S R].
    """
    upper, lower = tuple(upper), tuple(lower)
    rank = len(upper)
    if len(lower) != rank:
        raise ValueError("upper and lower index counts differ")
    out = []
    for t in terms:
        if len(t.ops) != 2 * rank:
            continue
        if rank == 0:
            out.append(t)
            continue
        sign, ops = sort_ops(t.ops)
        if sum(o.dagger for o in ops) != rank:
            continue
        if rank == 1:
            c, a = ops
            if (c.index.space, a.index.space) == (upper[0].space, lower[0].space):
                r = _rename_ops(t, (c, a), (upper[0], lower[0]))
                out.append(Term(r.coeff * sign, r.tensors))
            continue
        c1, c2, a1, a2 = ops
        P, Q = upper
        R, S = lower
        for p, q, r, s, sg in ((P, Q, R, S, 1), (Q, P, R, S, -1), (P, Q, S, R, -1), (Q, P, S, R, 1)):
            if (c1.index.space, c2.index.space, a2.index.space, a1.index.space) != (p.space, q.space, r.space, s.space):
                continue
            rt = _rename_ops(t, (c1, c2, a2, a1), (p, q, r, s))
            out.append(Term(rt.coeff * sign * sg, rt.tensors))
    free = upper + lower
    return canonicalize(out, free)


def block_expression(family, upper=(), lower=(), canonical_fock=True):
    return extract_block(family_terms(family, canonical_fock), upper, lower)


def make_labels(spec):
    """'BA' style label string -> Index tuple (I..N occupied, others virtual)."""
    return tuple(Index(c, OCC if c in "IJKLMN" else VIR) for c in spec)


_BLOCK_LABELS = {OCC: "IJKL", VIR: "ABCD"}
_ONE_BODY = ((VIR, VIR), (OCC, OCC), (OCC, VIR), (VIR, OCC))
_PAIRS = ((OCC, OCC), (OCC, VIR), (VIR, OCC), (VIR, VIR))


def _block_labels(classes):
    used = {OCC: 0, VIR: 0}
    out = []
    for s in classes:
        out.append(Index(_BLOCK_LABELS[s][used[s]], s))
        used[s] += 1
    return tuple(out)


def derive_gamma_expressions(profile="all-occupied-active", families=None):
    """Canonical expressions for every nonzero block of every family.

    Returns ``{(family, upper, lower): [Term, ...]}``; ``upper == lower == ()``
    holds the closed (scalar) part.  Only the all-occupied-active profile
    (active virtual subset) is supported; summation labels run over the full
    occupied and virtual ranges and the zero pattern of the external
    amplitudes does the rest.
    """
    if profile != "all-occupied-active":
        raise ValueError(f"unsupported active-space profile {profile!r}")
    out = {}
    for fam in families or FAMILIES:
        closed = block_expression(fam)
        if closed:
            out[(fam, (), ())] = closed
        for u, l in _ONE_BODY:
            lab = _block_labels((u, l))
            terms = block_expression(fam, lab[:1], lab[1:])
            if terms:
                out[(fam, lab[:1], lab[1:])] = terms
        for up in _PAIRS:
            for lo in _PAIRS:
                if up == (VIR, OCC) or lo == (VIR, OCC):
                    continue  # antisymmetric partner of the (o, v) ordering
                lab = _block_labels(up + lo)
                terms = block_expression(fam, lab[:2], lab[2:])
                if terms:
                    out[(fam, lab[:2], lab[2:])] = terms
    return out
