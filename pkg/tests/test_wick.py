import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import DATA, antisymmetrize
from duccfold.downfold.tables import ADDED, CORRECTIONS, PRINTED, corrected_entries
from duccfold.errors import UnsupportedRank
from duccfold.fci.operators import apply_string
from duccfold.wick import (
    FAMILIES,
    Index,
    Op,
    Tensor,
    Term,
    as_dict,
    block_expression,
    canonicalize,
    derivation_report,
    derive_gamma_expressions,
    evaluate,
    parse_expression,
    parse_header,
    ph_to_pv_identity,
    wick_product,
)
from duccfold.wick.algebra import OCC, VIR
from duccfold.wick.pv import PV_IDENTITIES, identity_terms, parse_ops, table_terms
from duccfold.wick.report import compare_entry

# toy space: spin orbitals 0, 1 occupied and 2, 3 virtual
TOY_OCC, TOY_VIR, TOY_N = (0, 1), (2, 3), 4


def string_matrix(ops):
    """Dense matrix of the plain product of (orbital, dagger) pairs on the toy Fock space."""
    m = np.zeros((2 ** TOY_N,) * 2)
    for d in range(2 ** TOY_N):
        s, out = apply_string(d, ops)
        if s:
            m[out, d] += s
    return m


def normal_matrix(ops, assign):
    """N[ops]^ph as a dense matrix: quasi-creators moved left with the permutation sign."""
    order = [k for k, o in enumerate(ops) if not o.quasi_annihilator]
    order += [k for k, o in enumerate(ops) if o.quasi_annihilator]
    sign = 1
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return sign * string_matrix([(assign[ops[k].index], ops[k].dagger) for k in order])


def assignments(labels):
    ranges = [TOY_OCC if x.space == OCC else TOY_VIR for x in labels]
    for values in itertools.product(*ranges):
        yield dict(zip(labels, values))


def L(names):
    return tuple(Index(c, OCC if c in "IJKLMN" else VIR) for c in names)


def test_printed_tables_differ_only_where_corrected():
    bad = set()
    for fam, hdr, expr in PRINTED:
        missing, extra = compare_entry(fam, hdr, expr)
        if missing or extra:
            bad.add((fam, hdr))
    # the HT entry differs only in amplitude notation, which the parser already reads as s
    assert bad == set(CORRECTIONS) - {("HT", "gamma^A_I")}
    printed = dict(((f, h), e) for f, h, e in PRINTED)
    assert " t^" in printed[("HT", "gamma^A_I")]


@pytest.mark.parametrize("fam, hdr, expr", corrected_entries(), ids=lambda x: str(x)[:30])
def test_corrected_entry_matches_derivation(fam, hdr, expr):
    up, lo = parse_header(hdr)
    free = up + lo
    assert as_dict(parse_expression(expr), free) == as_dict(block_expression(fam, up, lo), free)


def test_added_blocks_are_nonzero():
    for fam, hdr, _ in ADDED:
        up, lo = parse_header(hdr)
        assert block_expression(fam, up, lo)


def random_arrays(rng, n, occ):
    vir = [p for p in range(n) if p not in occ]
    h = rng.normal(size=(n, n))
    v = antisymmetrize(rng.normal(size=(n,) * 4))
    s1 = np.zeros((n, n))
    s2 = np.zeros((n,) * 4)
    s1[np.ix_(vir, occ)] = rng.normal(size=(len(vir), len(occ)))
    s2[np.ix_(vir, vir, occ, occ)] = antisymmetrize(rng.normal(size=(n,) * 4))[np.ix_(vir, vir, occ, occ)]
    return dict(f=h + h.T, v=v + v.transpose(2, 3, 0, 1), s1=s1, s2=s2), list(occ), vir


def test_tables_numerically_on_random_instances():
    rng = np.random.default_rng(7)
    entries = [(fam, parse_header(hdr), parse_expression(expr)) for fam, hdr, expr in corrected_entries()]
    for _ in range(10):
        arr, occ, vir = random_arrays(rng, 7, [0, 1, 2])
        for fam, (up, lo), written in entries:
            free = up + lo
            rg = {x: occ if x.space == OCC else vir for x in free}
            a = evaluate(written, arr, occ, vir, free, rg)
            b = evaluate(block_expression(fam, up, lo), arr, occ, vir, free, rg)
            assert np.abs(a - b).max(initial=0.0) < 1e-12, (fam, up, lo)


def test_canonicalization_idempotent():
    for key, terms in derive_gamma_expressions().items():
        free = key[1] + key[2]
        once = canonicalize(terms, free)
        assert canonicalize(once, free) == once
        assert as_dict(once, free) == as_dict(terms, free)


def test_canonical_form_ignores_dummy_names():
    e1 = parse_expression(r"\frac{1}{2} v^{MA}_{ef} s^{ef}_{MI}")
    e2 = parse_expression(r"\frac{1}{2} v^{NA}_{gh} s^{gh}_{NI}")
    e3 = parse_expression(r"- \frac{1}{2} v^{MA}_{fe} s^{ef}_{MI}")
    free = L("AI")
    assert as_dict(e1, free) == as_dict(e2, free) == as_dict(e3, free)


def one_and_two_body(fam, arr, occ, vir):
    """Assemble the full-range scalar, one- and two-body coefficients of a family."""
    n = len(occ) + len(vir)
    g1, g2 = np.zeros((n, n)), np.zeros((n,) * 4)
    for pat in itertools.product((OCC, VIR), repeat=2):
        up, lo = L("P" if pat[0] == VIR else "I"), L("Q" if pat[1] == VIR else "J")
        rg = {x: occ if x.space == OCC else vir for x in up + lo}
        g1[np.ix_(rg[up[0]], rg[lo[0]])] = evaluate(block_expression(fam, up, lo), arr, occ, vir, up + lo, rg)
    for pat in itertools.product((OCC, VIR), repeat=4):
        labels = L("".join(("IJKL" if s == OCC else "ABCD")[k] for k, s in enumerate(pat)))
        rg = {x: occ if x.space == OCC else vir for x in labels}
        g2[np.ix_(*[rg[x] for x in labels])] = evaluate(
            block_expression(fam, labels[:2], labels[2:]), arr, occ, vir, labels, rg)
    scalar = evaluate(block_expression(fam), arr, occ, vir) if block_expression(fam) else 0.0
    return float(scalar), g1, g2


@pytest.mark.parametrize("fam, partner", [("HT", "TH"), ("TFT", "TFT2")])
def test_hermitian_pairing(fam, partner):
    rng = np.random.default_rng(11)
    arr, occ, vir = random_arrays(rng, 6, [0, 1])
    a = one_and_two_body(fam, arr, occ, vir)
    b = one_and_two_body(partner, arr, occ, vir)
    assert a[0] == pytest.approx(b[0], abs=1e-12)
    np.testing.assert_allclose(a[1], b[1].T, atol=1e-12)
    np.testing.assert_allclose(a[2], b[2].transpose(2, 3, 0, 1), atol=1e-12)


def test_vanishing_families():
    for fam in ("FTT", "TTF"):
        assert not any(k[0] == fam for k in derive_gamma_expressions(families=(fam,)))


def test_unknown_profile():
    with pytest.raises(ValueError):
        derive_gamma_expressions(profile="general")


def test_wick_product_excitation_deexcitation():
    I, J, A, B = L("IJAB")
    x = Term(Fraction(1), (Tensor("d", (J,), (B,)),), (Op(J, True), Op(B, False)))
    y = Term(Fraction(1), (Tensor("t", (A,), (I,)),), (Op(A, True), Op(I, False)))
    closed = [t for t in wick_product(x, y) if not t.ops]
    assert len(closed) == 1 and closed[0].coeff == 1
    assert closed[0].tensors[1].upper == (B,) and closed[0].tensors[1].lower == (J,)
    assert len(wick_product(x, y)) == 3
    # excitations to the left have nothing to contract with
    assert wick_product(y, x) == []
    assert len(wick_product(y, x, connected=False)) == 1


WICK_CASES = [("JB", "AI"), ("JIBA", "CK"), ("AI", "BJ"), ("BA", "JI"), ("IJBA", "CDLK"), ("IA", "BJ")]


@pytest.mark.parametrize("left, right", WICK_CASES)
def test_wick_product_dense(left, right):
    """N[x] N[y] equals the sum over contraction patterns, checked as toy-space matrices."""
    def make(names, tag):
        idx = L(names)
        labels = tuple(Index(i.name + tag, i.space) for i in idx)
        half = len(labels) // 2
        ops = tuple(Op(x, k < half) for k, x in enumerate(labels))
        return Term(Fraction(1), (Tensor(tag, labels, ()),), ops), labels

    x, lx = make(left, "x")
    y, ly = make(right, "y")
    terms = wick_product(x, y, connected=False)
    for assign in assignments(lx + ly):
        lhs = normal_matrix(x.ops, assign) @ normal_matrix(y.ops, assign)
        rhs = np.zeros_like(lhs)
        for t in terms:
            renamed = t.tensors[1].upper
            if any(assign[o] != assign[r] for o, r in zip(ly, renamed)):
                continue
            rhs += float(t.coeff) * normal_matrix(t.ops, assign)
        np.testing.assert_array_equal(lhs, rhs)


@pytest.mark.parametrize("ph, rhs", PV_IDENTITIES, ids=[r[0] for r in PV_IDENTITIES])
def test_ph_to_pv_symbolic(ph, rhs):
    assert identity_terms(ph) == table_terms(rhs)


@pytest.mark.parametrize("ph, rhs", PV_IDENTITIES, ids=[r[0] for r in PV_IDENTITIES])
def test_ph_to_pv_dense(ph, rhs):
    ops = parse_ops(ph)
    labels = list(dict.fromkeys(o.index for o in ops))
    names = {x.name: x for x in labels}
    for assign in assignments(labels):
        lhs = normal_matrix(ops, assign)
        total = np.zeros_like(lhs)
        for coeff, deltas, text in rhs:
            if any(assign[names[a]] != assign[names[b]] for a, b in deltas.split()):
                continue
            total += coeff * string_matrix([(assign[o.index], o.dagger) for o in parse_ops(text)])
        assert np.abs(lhs - total).max() < 1e-12


def test_ph_to_pv_rank_limit():
    with pytest.raises(UnsupportedRank):
        ph_to_pv_identity(parse_ops("A+ B+ C+ K J I"))


def test_ph_to_pv_virtual_strings_unchanged():
    (t,) = ph_to_pv_identity(parse_ops("C+ D+ B A"))
    assert t.coeff == 1 and not t.deltas


def test_derivation_report_golden():
    text = derivation_report()
    assert text == (DATA / "derivation_report.txt").read_text()
    for fam in FAMILIES:
        assert f"[{fam}]" in text or fam in text
    assert "vanishes identically" in text
