"""
Hilbert-style derivation checking.

Axiom schemas with their side conditions, step checking for axioms,
premises, MP and Gen, and the premise ledger for discharging premises.
"""

from .checker import (
    AxiomRule,
    CheckReport,
    Derivation,
    GenRule,
    Justification,
    MPRule,
    PremiseRule,
    Step,
    check_derivation,
    check_step,
)
from .schemas import (
    SCHEMAS,
    AxiomSchema,
    Binding,
    IdentityRole,
    SideCondition,
    barcan_formula,
    converse_barcan_formula,
    match_axiom,
    schemas_for,
    strict_barcan_formula,
    strict_converse_barcan_formula,
)

__all__ = [
    "AxiomRule",
    "CheckReport",
    "Derivation",
    "GenRule",
    "Justification",
    "MPRule",
    "PremiseRule",
    "Step",
    "check_derivation",
    "check_step",
    "SCHEMAS",
    "AxiomSchema",
    "Binding",
    "IdentityRole",
    "SideCondition",
    "barcan_formula",
    "converse_barcan_formula",
    "match_axiom",
    "schemas_for",
    "strict_barcan_formula",
    "strict_converse_barcan_formula",
]
