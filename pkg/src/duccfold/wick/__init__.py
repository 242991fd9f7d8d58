"""Symbolic particle-hole Wick algebra for the DUCC(2) commutator families."""
from .algebra import Index, Op, Tensor, Term, as_dict, canonicalize, product, wick_product
from .derive import FAMILIES, block_expression, derive_gamma_expressions, family_terms
from .evaluate import evaluate
from .parse import parse_expression, parse_header
from .pv import PVTerm, ph_to_pv_identity
from .report import derivation_report

__all__ = [
    "FAMILIES",
    "Index",
    "Op",
    "PVTerm",
    "Tensor",
    "Term",
    "as_dict",
    "block_expression",
    "canonicalize",
    "derivation_report",
    "derive_gamma_expressions",
    "evaluate",
    "family_terms",
    "parse_expression",
    "parse_header",
    "ph_to_pv_identity",
    "product",
    "wick_product",
]
