"""Rewriting particle-hole normal products in physical-vacuum order.

N[...]^ph and the creators-left product differ only by contractions of
occupied pairs:  N[a+_J a_I]^ph - a+_J a_I = -delta_IJ and
N[a_I a+_J]^ph - (-a+_J a_I) = +delta_IJ.  Summing over all patterns of such
contractions (with the fermionic sign of bringing each pair together) gives
the identity.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedRank
from .algebra import OCC, VIR, Index, Op, _matchings, permutation_sign, sort_ops

MAX_OPS = 4


@dataclass(frozen=True)
class PVTerm:
    coeff: int
    deltas: tuple  # sorted pairs of label names
    ops: tuple  # creators left

    def __repr__(self):
        d = "".join(f"d({a},{b})" for a, b in self.deltas)
        o = " ".join(map(repr, self.ops))
        return f"{self.coeff:+d} {d} {o}".strip()


def _pair_value(x: Op, y: Op):
    """Difference N_ph[x y] - N_pv[x y] for x left of y (0 unless an occupied pair)."""
    if x.index.space != OCC or y.index.space != OCC or x.dagger == y.dagger:
        return 0
    return -1 if x.dagger else 1


def _canonical_ops(ops):
    """Creators-left with creators and annihilators each sorted by label; returns (sign, ops)."""
    cre = sorted((k for k, o in enumerate(ops) if o.dagger), key=lambda k: ops[k].index.name)
    ann = sorted((k for k, o in enumerate(ops) if not o.dagger), key=lambda k: ops[k].index.name)
    order = cre + ann
    return permutation_sign(order), tuple(ops[k] for k in order)


def ph_to_pv_identity(ops, canonical=False):
    """Expand N[ops]^ph into physical-vacuum ordered strings times Kronecker deltas.

    ``ops`` is a sequence of :class:`Op`.  Each returned :class:`PVTerm` has
    its operators creators-left, in input order (or label-sorted when
    ``canonical``).
    """
    ops = tuple(ops)
    if len(ops) > MAX_OPS:
        raise UnsupportedRank(f"physical-vacuum translation supports at most two-body strings, got {len(ops)} operators")
    pairs = [(i, j) for i in range(len(ops)) for j in range(i + 1, len(ops)) if _pair_value(ops[i], ops[j])]
    out = {}
    for match in _matchings(pairs):
        used = {k for p in match for k in p}
        if len(used) != 2 * len(match):
            continue
        rest = [k for k in range(len(ops)) if k not in used]
        sign = permutation_sign([k for p in match for k in p] + rest)
        for i, j in match:
            sign *= _pair_value(ops[i], ops[j])
        s2, body = (_canonical_ops if canonical else sort_ops)(tuple(ops[k] for k in rest))
        deltas = tuple(sorted(tuple(sorted((ops[i].index.name, ops[j].index.name))) for i, j in match))
        key = (deltas, body)
        out[key] = out.get(key, 0) + sign * s2
    return [PVTerm(c, d, b) for (d, b), c in out.items() if c]


# --- transcription of the translation table -----------------------------------

def _label(c):
    return Index(c, OCC if c in "IJKLMN" else VIR)


def parse_ops(text):
    """'K+ A+ J I' -> ops (trailing + marks a creator)."""
    return tuple(Op(_label(tok.rstrip("+")), tok.endswith("+")) for tok in text.split())


# (ph string, [(coeff, deltas, pv string), ...]) as printed
PV_IDENTITIES = [
    ("B+ A", [(1, "", "B+ A")]),
    ("J+ I", [(1, "", "J+ I"), (-1, "IJ", "")]),
    ("I+ A", [(1, "", "I+ A")]),
    ("A+ I", [(1, "", "A+ I")]),
    ("B+ C+ A I", [(-1, "", "B+ C+ I A")]),
    ("K+ A+ J I", [(-1, "", "A+ K+ J I"), (-1, "IK", "A+ J"), (1, "JK", "A+ I")]),
    ("C+ I+ B A", [(1, "", "C+ I+ B A")]),
    ("I+ J+ A K", [(-1, "", "I+ J+ K A"), (-1, "IK", "J+ A"), (1, "JK", "I+ A")]),
    ("J+ B+ A I", [(1, "", "B+ J+ I A"), (-1, "IJ", "B+ A")]),
    ("C+ D+ B A", [(1, "", "C+ D+ B A")]),
    ("K+ L+ J I", [
        (1, "", "K+ L+ J I"), (-1, "JL", "K+ I"), (1, "IL", "K+ J"), (1, "JK", "L+ I"),
        (-1, "IK", "L+ J"), (1, "JL IK", ""), (-1, "JK IL", ""),
    ]),
    ("I+ J+ B A", [(1, "", "I+ J+ B A")]),
    ("A+ B+ J I", [(1, "", "A+ B+ J I")]),
]


def table_terms(rhs):
    """Canonical {(deltas, ops): coeff} for a transcribed right-hand side."""
    out = {}
    for coeff, deltas, text in rhs:
        s, body = _canonical_ops(parse_ops(text))
        d = tuple(sorted(tuple(sorted(pair)) for pair in deltas.split()))
        key = (d, body)
        out[key] = out.get(key, 0) + coeff * s
    return {k: c for k, c in out.items() if c}


def identity_terms(ph):
    """Canonical {(deltas, ops): coeff} from :func:`ph_to_pv_identity`."""
    return {(t.deltas, t.ops): t.coeff for t in ph_to_pv_identity(parse_ops(ph), canonical=True)}
