"""Numerical evaluation of symbolic term sums with einsum."""
from __future__ import annotations

import string

import numpy as np

from .algebra import OCC


def _operand(t, arrays):
    if t.name == "s" or t.name == "t":
        arr = arrays["s1"] if len(t.upper) == 1 else arrays["s2"]
        if t.upper and t.upper[0].space == OCC:
            k = len(t.upper)
            arr = np.moveaxis(arr, list(range(k)), list(range(k, 2 * k)))
        return arr
    return arrays[t.name]


def evaluate(terms, arrays, occ, vir, free=(), free_ranges=None):
    """Evaluate ``sum(terms)`` as a dense array over the ``free`` labels.

    ``arrays`` maps 'f', 'v', 's1', 's2' to tensors over the full spin-orbital
    range (s1[a, i], s2[a, b, i, j]).  Summed labels run over ``occ``/``vir``;
    free labels run over ``free_ranges[label]``.
    """
    free = tuple(free)
    free_ranges = free_ranges or {}
    shape = tuple(len(free_ranges[i]) for i in free)
    out = np.zeros(shape)
    for term in terms:
        letters = {}
        ops, subs = [], []
        for t in term.tensors:
            idx = t.upper + t.lower
            ranges = []
            for i in idx:
                if i not in letters:
                    letters[i] = string.ascii_letters[len(letters)]
                if i in free_ranges:
                    ranges.append(free_ranges[i])
                else:
                    ranges.append(occ if i.space == OCC else vir)
            arr = _operand(t, arrays)[np.ix_(*ranges)]
            ops.append(arr)
            subs.append("".join(letters[i] for i in idx))
        for i in free:
            if i not in letters:
                raise ValueError(f"free label {i} absent from term {term}")
        spec = ",".join(subs) + "->" + "".join(letters[i] for i in free)
        out = out + float(term.coeff) * np.einsum(spec, *ops, optimize=True)
    return out
