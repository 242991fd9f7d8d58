"""Particle-hole normal products and Wick contractions between them.

A :class:`Term` is ``coeff * prod(tensors) * N[ops]`` where ``N[...]`` is the
normal product with respect to the closed-shell reference.  Summation over any
index that does not appear in ``ops`` is implied.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import UnsupportedRank

OCC, VIR = "o", "v"

_fresh = itertools.count()


@dataclass(frozen=True, order=True)
class Index:
    name: str
    space: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Op:
    index: Index
    dagger: bool

    @property
    def quasi_annihilator(self):
        # a_a (virtual) and a_i^+ (occupied) annihilate the reference
        return (self.index.space == VIR) != self.dagger

    def __repr__(self):
        return f"{self.index.name}{'+' if self.dagger else ''}"


@dataclass(frozen=True)
class Tensor:
    name: str
    upper: tuple
    lower: tuple

    def indices(self):
        return self.upper + self.lower

    def rename(self, m):
        return Tensor(self.name, tuple(m.get(i, i) for i in self.upper), tuple(m.get(i, i) for i in self.lower))

    def __repr__(self):
        up = "".join(i.name for i in self.upper)
        lo = "".join(i.name for i in self.lower)
        return f"{self.name}^{{{up}}}_{{{lo}}}"


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    tensors: tuple
    ops: tuple = ()

    def rename(self, m):
        return Term(
            self.coeff,
            tuple(t.rename(m) for t in self.tensors),
            tuple(Op(m.get(o.index, o.index), o.dagger) for o in self.ops),
        )

    def labels(self):
        seen = []
        for t in self.tensors:
            for i in t.indices():
                if i not in seen:
                    seen.append(i)
        for o in self.ops:
            if o.index not in seen:
                seen.append(o.index)
        return seen

    def free(self):
        return [o.index for o in self.ops]

    def dummies(self):
        free = set(self.free())
        return [i for i in self.labels() if i not in free]

    @property
    def rank(self):
        return len(self.ops)

    def __repr__(self):
        ops = f" N[{' '.join(map(repr, self.ops))}]" if self.ops else ""
        return f"{self.coeff} {' '.join(map(repr, self.tensors))}{ops}"


def fresh(term):
    """Rename every label of ``term`` to globally unique names."""
    m = {i: Index(f"{i.space}{next(_fresh)}", i.space) for i in term.labels()}
    return term.rename(m)


def permutation_sign(perm):
    """Parity of a permutation given as a sequence of distinct integers."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def contracts(x: Op, y: Op):
    """Nonzero ph contraction of ``x`` (left) with ``y`` (right)."""
    return (
        x.quasi_annihilator
        and not y.quasi_annihilator
        and x.index.space == y.index.space
        and x.dagger != y.dagger
    )


def _matchings(pairs, used_l=frozenset(), used_r=frozenset(), start=0):
    yield ()
    for k in range(start, len(pairs)):
        i, j = pairs[k]
        if i in used_l or j in used_r:
            continue
        for rest in _matchings(pairs, used_l | {i}, used_r | {j}, k + 1):
            yield ((i, j),) + rest


def wick_product(left: Term, right: Term, connected=True, max_rank=None):
    """Expand ``left * right`` (both normal products) into normal products.

    Returns a list of Terms.  ``connected`` keeps only patterns with at least
    one contraction between the two factors.  Labels of the two factors must
    be distinct (use :func:`fresh`).
    """
    for t in (left, right):
        if len(t.ops) > 8:
            raise UnsupportedRank(f"operator string of length {len(t.ops)}")
    ops = left.ops + right.ops
    nl = len(left.ops)
    pairs = [
        (i, nl + j)
        for i in range(nl)
        for j in range(len(right.ops))
        if contracts(ops[i], ops[nl + j])
    ]
    out = []
    for match in _matchings(pairs):
        if connected and not match:
            continue
        used = {k for p in match for k in p}
        rest = [k for k in range(len(ops)) if k not in used]
        order = [k for p in match for k in p] + rest
        sign = permutation_sign(order)
        rename = {ops[j].index: ops[i].index for i, j in match}
        t = Term(
            left.coeff * right.coeff * sign,
            left.tensors + right.tensors,
            tuple(ops[k] for k in rest),
        ).rename(rename)
        if max_rank is not None and len(t.ops) > max_rank:
            continue
        out.append(t)
    return out


def product(left_terms, right_terms, connected=True, open_=True, max_rank=None):
    """Wick product of two operator sums with fresh labels per factor."""
    out = []
    for a in left_terms:
        for b in right_terms:
            for t in wick_product(fresh(a), fresh(b), connected=connected, max_rank=max_rank):
                if open_ and not t.ops:
                    continue
                out.append(t)
    return out


def closed_part(terms):
    return [t for t in terms if not t.ops]


def sort_ops(ops):
    """Reorder a normal product to creators-then-annihilators; return (sign, ops)."""
    order = [k for k, o in enumerate(ops) if o.dagger] + [k for k, o in enumerate(ops) if not o.dagger]
    return permutation_sign(order), tuple(ops[k] for k in order)


# --- canonical form -----------------------------------------------------------

OCC_POOL = ("M", "N", "K", "L", "O", "P", "Q")
VIR_POOL = ("e", "f", "g", "h", "x", "y", "z")


def _variants(t: Tensor):
    """(sign, Tensor) images of ``t`` under its real-valued index symmetries."""
    u, l = t.upper, t.lower
    if t.name in ("s", "t"):
        # amplitudes are real, so the conjugate tensor is the transpose
        if u and u[0].space == OCC:
            u, l = l, u
        t = Tensor("s", u, l)
        if len(u) == 1:
            return [(1, t)]
        return [
            (1, t),
            (-1, Tensor("s", u[::-1], l)),
            (-1, Tensor("s", u, l[::-1])),
            (1, Tensor("s", u[::-1], l[::-1])),
        ]
    if t.name == "f":
        return [(1, t), (1, Tensor("f", l, u))]
    if t.name == "v":
        out = []
        for a, b in ((u, l), (l, u)):
            out += [
                (1, Tensor("v", a, b)),
                (-1, Tensor("v", a[::-1], b)),
                (-1, Tensor("v", a, b[::-1])),
                (1, Tensor("v", a[::-1], b[::-1])),
            ]
        return out
    return [(1, t)]


def _tkey(t):
    return (t.name, tuple((i.space, i.name) for i in t.upper), tuple((i.space, i.name) for i in t.lower))


def _canon_tensor(t):
    best = None
    for sign, v in _variants(t):
        k = _tkey(v)
        if best is None or k < best[0]:
            best = (k, sign, v)
    return best


def canonical_key(term: Term, free=()):
    """Return (key, sign, canonical Term with unit coefficient sign applied)."""
    free = set(free) | set(term.free())
    dummies = [i for i in term.labels() if i not in free]
    taken = {i.name for i in free}
    pools = {
        OCC: [n for n in OCC_POOL if n not in taken],
        VIR: [n for n in VIR_POOL if n not in taken],
    }
    groups = {s: [i for i in dummies if i.space == s] for s in (OCC, VIR)}
    for s in groups:
        if len(groups[s]) > len(pools[s]):
            raise UnsupportedRank("too many summation indices")
    best = None
    signs_for_best = set()
    for po in itertools.permutations(pools[OCC][: len(groups[OCC])]):
        for pv in itertools.permutations(pools[VIR][: len(groups[VIR])]):
            m = {i: Index(n, OCC) for i, n in zip(groups[OCC], po)}
            m.update({i: Index(n, VIR) for i, n in zip(groups[VIR], pv)})
            sign = 1
            canon = []
            for t in term.tensors:
                k, sg, v = _canon_tensor(t.rename(m))
                sign *= sg
                canon.append((k, v))
            canon.sort(key=lambda kv: kv[0])
            ops = tuple(Op(m.get(o.index, o.index), o.dagger) for o in term.ops)
            key = (tuple(k for k, _ in canon), tuple((o.index.space, o.index.name, o.dagger) for o in ops))
            if best is None or key < best[0]:
                best = (key, sign, Term(Fraction(1), tuple(v for _, v in canon), ops))
                signs_for_best = {sign}
            elif key == best[0]:
                signs_for_best.add(sign)
    if len(signs_for_best) > 1:
        return best[0], 0, best[2]
    return best


def canonicalize(terms, free=()):
    """Merge like terms into canonical form; zero-coefficient terms are dropped."""
    acc = {}
    rep = {}
    for t in terms:
        key, sign, c = canonical_key(t, free)
        if sign == 0:
            continue
        acc[key] = acc.get(key, Fraction(0)) + Fraction(t.coeff) * sign
        rep[key] = c
    return [replace(rep[k], coeff=acc[k]) for k in sorted(acc) if acc[k] != 0]


def as_dict(terms, free=()):
    """Map canonical key -> coefficient for term-set comparison."""
    return {canonical_key(t, free)[0]: t.coeff for t in canonicalize(terms, free)}
