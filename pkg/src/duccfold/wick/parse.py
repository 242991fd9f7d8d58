"""Parse LaTeX-like tensor expressions such as ``-\\frac{1}{2} v^{MN}_{eA} s^{eB}_{MN}``.

Labels I-N are occupied, A-D and e-h are virtual.  Tensor names are single
letters; superscript and subscript groups may appear in either order.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import OCC, VIR, Index, Tensor, Term

OCC_LABELS = set("IJKLMN")
VIR_LABELS = set("ABCDefgh")

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<sign>[+-])
      | \\frac\{(?P<fn>\d+)\}\{(?P<fd>\d+)\}
      | (?P<num>\d+(?:/\d+)?)
      | (?P<tensor>[a-zA-Z](?:\s*[\^_]\s*(?:\{[^}]*\}|[A-Za-z]))+)
    )""",
    re.VERBOSE,
)
_SCRIPT = re.compile(r"([\^_])\s*(\{[^}]*\}|[A-Za-z])")


def label(c):
    if c in OCC_LABELS:
        return Index(c, OCC)
    if c in VIR_LABELS:
        return Index(c, VIR)
    raise ValueError(f"unknown index label {c!r}")


def parse_tensor(text):
    text = text.strip()
    name = text[0]
    upper, lower = (), ()
    for kind, grp in _SCRIPT.findall(text[1:]):
        labels = tuple(label(c) for c in grp.strip("{}").replace(" ", ""))
        if kind == "^":
            upper += labels
        else:
            lower += labels
    return Tensor(name, upper, lower)


def parse_expression(text):
    """Return a list of Terms (no operator part)."""
    terms = []
    sign, coeff, tensors = 1, Fraction(1), []

    def flush():
        if tensors:
            terms.append(Term(sign * coeff, tuple(tensors)))

    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression at {text[pos:]!r}")
        pos = m.end()
        if m.group("sign"):
            flush()
            sign, coeff, tensors = (1 if m.group("sign") == "+" else -1), Fraction(1), []
        elif m.group("fn"):
            coeff *= Fraction(int(m.group("fn")), int(m.group("fd")))
        elif m.group("num"):
            coeff *= Fraction(m.group("num"))
        else:
            tensors.append(parse_tensor(m.group("tensor")))
    flush()
    return terms


def parse_header(text):
    """'gamma^{BC}_{IA}' -> (upper labels, lower labels)."""
    t = parse_tensor(text.replace("gamma", "g"))
    return t.upper, t.lower
