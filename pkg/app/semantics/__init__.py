"""
Semantics of the first-order modal systems.

Finite structures, ground fingerprints, the choice-consistent valuation
engine, bounded countermodel search and the randomized soundness suite.
"""

from .engine import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExhausted,
    ChoiceRecord,
    EvalVerdict,
    IncompleteValuationError,
    Valuation,
    ValuationEngine,
    check_true,
    eval_formula,
    evaluate,
    possible_values,
    random_valuation,
)
from .fingerprint import fingerprint, ground_formula, ground_term
from .search import Countermodel, SearchResult, Verdict, enumerate_structures, find_countermodel, refute_in
from .soundness import InstanceGenerator, SoundnessReport, check_axiom_soundness, random_structure
from .structure import (
    Assignment,
    FunctionTable,
    PairExtension,
    ShapeMismatchError,
    Structure,
    StructureError,
    TripleExtension,
    denote_term,
    eval_atom,
    extension_from_values,
    iter_assignments,
)

__all__ = [
    "DEFAULT_BUDGET",
    "Budget",
    "BudgetExhausted",
    "ChoiceRecord",
    "EvalVerdict",
    "IncompleteValuationError",
    "Valuation",
    "ValuationEngine",
    "check_true",
    "eval_formula",
    "evaluate",
    "possible_values",
    "random_valuation",
    "fingerprint",
    "ground_formula",
    "ground_term",
    "Countermodel",
    "SearchResult",
    "Verdict",
    "enumerate_structures",
    "find_countermodel",
    "refute_in",
    "InstanceGenerator",
    "SoundnessReport",
    "check_axiom_soundness",
    "random_structure",
    "Assignment",
    "FunctionTable",
    "PairExtension",
    "ShapeMismatchError",
    "Structure",
    "StructureError",
    "TripleExtension",
    "denote_term",
    "eval_atom",
    "extension_from_values",
    "iter_assignments",
]
