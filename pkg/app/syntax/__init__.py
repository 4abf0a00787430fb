"""
Syntax of the first-order modal language.

Signatures, terms and formulas, the ASCII parser and printer, and the
syntactic side conditions used by axiom schemas.
"""

from .ast import (
    App,
    Atom,
    Box,
    Const,
    Elem,
    Forall,
    Formula,
    Identity,
    IdentityKind,
    Imp,
    Neg,
    Signature,
    SignatureError,
    Term,
    Var,
    boxes,
    conj,
    connective_count,
    diamond,
    disj,
    exists,
    iff,
    is_propositional,
    iter_subformulas,
    rigid_identity,
    strict_imp,
)
from .operations import (
    CaptureError,
    all_vars,
    alpha_normalize,
    free_vars,
    is_free_for,
    is_partial_replacement,
    is_variant,
    rename_bound,
    substitute,
    substitute_term,
    term_vars,
)
from .parser import ParseError, infer_signature, parse_formula, parse_term
from .printer import format_formula, format_term

__all__ = [
    "App",
    "Atom",
    "Box",
    "Const",
    "Elem",
    "Forall",
    "Formula",
    "Identity",
    "IdentityKind",
    "Imp",
    "Neg",
    "Signature",
    "SignatureError",
    "Term",
    "Var",
    "boxes",
    "conj",
    "connective_count",
    "diamond",
    "disj",
    "exists",
    "iff",
    "is_propositional",
    "iter_subformulas",
    "rigid_identity",
    "strict_imp",
    "CaptureError",
    "all_vars",
    "alpha_normalize",
    "free_vars",
    "is_free_for",
    "is_partial_replacement",
    "is_variant",
    "rename_bound",
    "substitute",
    "substitute_term",
    "term_vars",
    "ParseError",
    "infer_signature",
    "parse_formula",
    "parse_term",
    "format_formula",
    "format_term",
]
