"""Axiom schemas and schema matching.

Patterns are written in the formula grammar: the sentence letters A, B
and C stand for arbitrary formulas, the variables x and y for arbitrary
variables. Side conditions the grammar cannot express are checked after
the structural match.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Union

from app.nmatrix import BoxVariant, Carrier, IdentityMode, QuantifierMode, SystemSpec
from app.syntax import (
    App,
    Atom,
    Box,
    Forall,
    Formula,
    Identity,
    IdentityKind,
    Imp,
    Neg,
    Term,
    Var,
    free_vars,
    is_free_for,
    is_partial_replacement,
    is_variant,
    boxes,
    parse_formula,
    substitute,
)

logger = logging.getLogger(__name__)

FORMULA_METAS = ("A", "B", "C")

Binding = Dict[str, Union[Formula, Term, str, None]]


class SideCondition(str, Enum):
    NONE = "none"
    FREE_FOR = "free-for"
    NOT_FREE = "no-free-occurrence"
    VARIANT = "variant"
    PARTIAL_REPLACEMENT = "partial-replacement"


class IdentityRole(str, Enum):
    ANY = "any"
    RIGID = "rigid"
    CONTINGENT = "contingent"


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    text: str
    side_condition: SideCondition = SideCondition.NONE
    identity_role: Optional[IdentityRole] = None
    group: str = "modal"

    @cached_property
    def pattern(self) -> Formula:
        return parse_formula(self.text)

    def identity_kinds(self, sys: Optional[SystemSpec] = None) -> FrozenSet[IdentityKind]:
        """Syntactic identity kinds an instance may use in ``sys``."""
        contingent_mode = sys is not None and sys.identity_mode == IdentityMode.CONTINGENT
        if self.identity_role == IdentityRole.RIGID:
            return frozenset() if contingent_mode else frozenset({IdentityKind.NECESSARY})
        if self.identity_role == IdentityRole.CONTINGENT:
            kinds = {IdentityKind.CONTINGENT}
            if contingent_mode:
                kinds.add(IdentityKind.NECESSARY)
            return frozenset(kinds)
        return frozenset(IdentityKind)

    def match(self, f: Formula, sys: Optional[SystemSpec] = None) -> Optional[Binding]:
        custom = _CUSTOM_MATCHERS.get(self.name)
        if custom is not None:
            return custom(f)
        binding: Binding = {}
        if not _unify(self.pattern, f, binding, self.identity_kinds(sys)):
            return None
        if self.side_condition == SideCondition.NOT_FREE and binding["x"] in free_vars(binding["A"]):
            return None
        if self.side_condition == SideCondition.VARIANT and not is_variant(binding["A"], binding["B"]):
            return None
        return binding

    def build(self, binding: Binding, kind: IdentityKind = IdentityKind.NECESSARY) -> Formula:
        """Instantiate the pattern; side conditions are the caller's concern."""
        if self.name == "Ax4":
            alpha, x, tau = binding["A"], binding["x"], binding["tau"]
            return Imp(Forall(x, alpha), substitute(alpha, x, tau))
        if self.name == "Ax8":
            x, y = binding["x"], binding["y"]
            return Imp(Identity(kind, Var(x), Var(y)), Imp(binding["A"], binding["B"]))
        return _instantiate(self.pattern, binding, kind)


def _unify(pattern: Formula, f: Formula, binding: Binding, kinds: FrozenSet[IdentityKind]) -> bool:
    if isinstance(pattern, Atom) and not pattern.args and pattern.pred in FORMULA_METAS:
        bound = binding.setdefault(pattern.pred, f)
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, Identity):
        return (
            f.kind in kinds
            and _bind_variable(pattern.lhs, f.lhs, binding)
            and _bind_variable(pattern.rhs, f.rhs, binding)
        )
    if isinstance(pattern, (Neg, Box)):
        return _unify(pattern.body, f.body, binding, kinds)
    if isinstance(pattern, Imp):
        return _unify(pattern.left, f.left, binding, kinds) and _unify(pattern.right, f.right, binding, kinds)
    if isinstance(pattern, Forall):
        return _bind_variable(Var(pattern.var), Var(f.var), binding) and _unify(pattern.body, f.body, binding, kinds)
    return pattern == f


def _bind_variable(meta: Term, t: Term, binding: Binding) -> bool:
    if not isinstance(meta, Var) or not isinstance(t, Var):
        return False
    return binding.setdefault(meta.name, t.name) == t.name


def _instantiate(pattern: Formula, binding: Binding, kind: IdentityKind) -> Formula:
    if isinstance(pattern, Atom) and not pattern.args and pattern.pred in FORMULA_METAS:
        return binding[pattern.pred]
    if isinstance(pattern, Identity):
        return Identity(kind, Var(binding[pattern.lhs.name]), Var(binding[pattern.rhs.name]))
    if isinstance(pattern, Neg):
        return Neg(_instantiate(pattern.body, binding, kind))
    if isinstance(pattern, Box):
        return Box(_instantiate(pattern.body, binding, kind))
    if isinstance(pattern, Imp):
        return Imp(_instantiate(pattern.left, binding, kind), _instantiate(pattern.right, binding, kind))
    if isinstance(pattern, Forall):
        return Forall(binding[pattern.var], _instantiate(pattern.body, binding, kind))
    return pattern


# Schemas whose side condition needs more than a structural match


def _match_instantiation(f: Formula) -> Optional[Binding]:
    """∀xα → α[x/τ], recovering τ from the free-x positions of α."""
    if not (isinstance(f, Imp) and isinstance(f.left, Forall)):
        return None
    x, alpha, beta = f.left.var, f.left.body, f.right
    candidates: List[Term] = []
    if not _collect_replacements(alpha, beta, x, False, candidates):
        return None
    if any(c != candidates[0] for c in candidates):
        return None
    tau = candidates[0] if candidates else None
    if tau is None:
        return {"x": x, "A": alpha, "tau": None} if alpha == beta else None
    if not is_free_for(tau, x, alpha) or substitute(alpha, x, tau) != beta:
        return None
    return {"x": x, "A": alpha, "tau": tau}


def _collect_term(s: Term, t: Term, x: str, bound: bool, out: List[Term]) -> bool:
    if isinstance(s, Var) and s.name == x and not bound:
        out.append(t)
        return True
    if isinstance(s, App):
        return (
            isinstance(t, App)
            and s.func == t.func
            and len(s.args) == len(t.args)
            and all(_collect_term(a, b, x, bound, out) for a, b in zip(s.args, t.args))
        )
    return s == t


def _collect_replacements(alpha: Formula, beta: Formula, x: str, bound: bool, out: List[Term]) -> bool:
    if type(alpha) is not type(beta):
        return False
    if isinstance(alpha, Atom):
        return (
            alpha.pred == beta.pred
            and len(alpha.args) == len(beta.args)
            and all(_collect_term(a, b, x, bound, out) for a, b in zip(alpha.args, beta.args))
        )
    if isinstance(alpha, Identity):
        return (
            alpha.kind == beta.kind
            and _collect_term(alpha.lhs, beta.lhs, x, bound, out)
            and _collect_term(alpha.rhs, beta.rhs, x, bound, out)
        )
    if isinstance(alpha, (Neg, Box)):
        return _collect_replacements(alpha.body, beta.body, x, bound, out)
    if isinstance(alpha, Imp):
        return _collect_replacements(alpha.left, beta.left, x, bound, out) and _collect_replacements(
            alpha.right, beta.right, x, bound, out
        )
    if isinstance(alpha, Forall):
        return alpha.var == beta.var and _collect_replacements(
            alpha.body, beta.body, x, bound or alpha.var == x, out
        )
    return False


def _match_leibniz(f: Formula) -> Optional[Binding]:
    """(x ≈ y) → (α → α[x≀y]) for either identity symbol."""
    if not (isinstance(f, Imp) and isinstance(f.left, Identity) and isinstance(f.right, Imp)):
        return None
    identity = f.left
    if not (isinstance(identity.lhs, Var) and isinstance(identity.rhs, Var)):
        return None
    x, y = identity.lhs.name, identity.rhs.name
    alpha, beta = f.right.left, f.right.right
    if not is_partial_replacement(alpha, beta, x, y):
        return None
    return {"x": x, "y": y, "A": alpha, "B": beta}


_CUSTOM_MATCHERS = {
    "Ax4": _match_instantiation,
    "Ax8": _match_leibniz,
}


SCHEMAS: Dict[str, AxiomSchema] = {
    schema.name: schema
    for schema in [
        AxiomSchema("Ax1", "A -> (B -> A)", group="propositional"),
        AxiomSchema("Ax2", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))", group="propositional"),
        AxiomSchema("Ax3", "(~B -> ~A) -> ((~B -> A) -> B)", group="propositional"),
        AxiomSchema("Ax4", "(forall x. A) -> A", SideCondition.FREE_FOR, group="quantifier"),
        AxiomSchema("Ax5", "(forall x. (A -> B)) -> (A -> forall x. B)", SideCondition.NOT_FREE, group="quantifier"),
        AxiomSchema("Ax6", "A -> B", SideCondition.VARIANT, group="quantifier"),
        AxiomSchema("Ax7", "forall x. x = x", identity_role=IdentityRole.ANY, group="identity"),
        AxiomSchema(
            "Ax8",
            "x = y -> (A -> B)",
            SideCondition.PARTIAL_REPLACEMENT,
            identity_role=IdentityRole.ANY,
            group="identity",
        ),
        AxiomSchema("N=", "x = y -> [](x = y)", identity_role=IdentityRole.RIGID, group="identity"),
        AxiomSchema("P=", "~(x = y) -> []~(x = y)", identity_role=IdentityRole.RIGID, group="identity"),
        AxiomSchema("C=1", "~[](x = y)", identity_role=IdentityRole.CONTINGENT, group="identity"),
        AxiomSchema("C=2", "~[]~(x = y)", identity_role=IdentityRole.CONTINGENT, group="identity"),
        AxiomSchema("K", "[](A -> B) -> ([]A -> []B)"),
        AxiomSchema("K1", "[](A -> B) -> (<>A -> <>B)"),
        AxiomSchema("K2", "<>(A -> B) -> ([]A -> <>B)"),
        AxiomSchema("M1", "[]~A -> [](A -> B)"),
        AxiomSchema("M2", "[]B -> [](A -> B)"),
        AxiomSchema("M3", "<>B -> <>(A -> B)"),
        AxiomSchema("M4", "<>~A -> <>(A -> B)"),
        AxiomSchema("T", "[]A -> A"),
        AxiomSchema("D", "[]A -> <>A"),
        AxiomSchema("DN1", "[]A -> []~~A"),
        AxiomSchema("DN2", "[]~~A -> []A"),
        AxiomSchema("BF", "(forall x. []A) -> []forall x. A", group="barcan"),
        AxiomSchema("CBF", "[](forall x. A) -> forall x. []A", group="barcan"),
        AxiomSchema("NBF", "(forall x. <>A) -> <>forall x. A", group="barcan"),
        AxiomSchema("PBF", "<>(forall x. A) -> forall x. <>A", group="barcan"),
        AxiomSchema("4", "[]A -> [][]A", group="iteration"),
        AxiomSchema("5", "<>[]A -> []A", group="iteration"),
    ]
}


def schemas_for(sys: SystemSpec) -> List[AxiomSchema]:
    """The axiom schemas of ``sys``'s Hilbert calculus, in a fixed order."""
    names = ["Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8"]
    if sys.identity_mode == IdentityMode.NECESSARY:
        names += ["N=", "P="]
    names += ["C=1", "C=2", "K", "K1", "K2", "M1", "M2", "M3", "M4"]
    if sys.carrier == Carrier.V4:
        names.append("T")
    elif sys.carrier == Carrier.V6:
        names.append("D")
    names += ["DN1", "DN2", "BF", "CBF"]
    if sys.quantifier_mode == QuantifierMode.DETERMINISTIC:
        names.append("NBF")
    names.append("PBF")
    if sys.box_variant in (BoxVariant.AXIOM4, BoxVariant.AXIOM45):
        names.append("4")
    if sys.box_variant == BoxVariant.AXIOM45:
        names.append("5")
    return [SCHEMAS[name] for name in names]


def match_axiom(f: Formula, schema: AxiomSchema, sys: Optional[SystemSpec] = None) -> Optional[Binding]:
    """Binding that makes f an instance of ``schema``, or None."""
    binding = schema.match(f, sys)
    if binding is not None:
        logger.debug(f"Matched {schema.name}")
    return binding


def barcan_formula(body: Formula, var: str = "x", n: int = 1) -> Formula:
    """BFₙ: ∀x□ⁿα → □ⁿ∀xα."""
    return Imp(Forall(var, boxes(body, n)), boxes(Forall(var, body), n))


def converse_barcan_formula(body: Formula, var: str = "x", n: int = 1) -> Formula:
    """CBFₙ: □ⁿ∀xα → ∀x□ⁿα."""
    return Imp(boxes(Forall(var, body), n), Forall(var, boxes(body, n)))


def strict_barcan_formula(body: Formula, var: str = "x") -> Formula:
    """BF with strict implication: ∀x□α ⥽ □∀xα."""
    return Box(barcan_formula(body, var))


def strict_converse_barcan_formula(body: Formula, var: str = "x") -> Formula:
    return Box(converse_barcan_formula(body, var))
