"""
Propositional fragments: legal valuations, tautologies and consequence.
"""

from .decision import (
    DecisionResult,
    NotPropositionalError,
    PropValuation,
    ReplacementFailure,
    closure,
    count_valuations,
    is_consequence,
    is_tautology,
    legal_valuations,
    replacement_failure,
)

__all__ = [
    "DecisionResult",
    "NotPropositionalError",
    "PropValuation",
    "ReplacementFailure",
    "closure",
    "count_valuations",
    "is_consequence",
    "is_tautology",
    "legal_valuations",
    "replacement_failure",
]
