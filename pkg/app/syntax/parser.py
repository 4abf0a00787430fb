"""Recursive-descent parser for the ASCII formula grammar.

Grammar, loosest binding first::

    formula := disj (('->' | '=>') formula)?
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := ('~' | '[]' | '<>') unary | quant | atomic
    quant   := ('forall' | 'exists') IDENT '.' formula
    atomic  := '(' formula ')' | IDENT ('(' terms ')')? | term ('=' | '=c' | '=!') term

Derived connectives are expanded while parsing.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

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
    conj,
    diamond,
    disj,
    exists,
    iter_subformulas,
    strict_imp,
    term_subterms,
)

logger = logging.getLogger(__name__)

KEYWORDS = {"forall", "exists"}
VARIABLE_INITIALS = set("uvwxyz")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ELEM = re.compile(r"#([0-9]+)")
_SYMBOLS = [
    ("[]", "BOX"),
    ("<>", "DIA"),
    ("->", "IMP"),
    ("=>", "STRICT"),
    ("=!", "EQBANG"),
    ("~", "NOT"),
    ("&", "AND"),
    ("|", "OR"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    (",", "COMMA"),
    (".", "DOT"),
]


class ParseError(ValueError):
    """Malformed formula text; ``offset`` is the 0-based character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("=c", i) and (i + 2 == len(text) or text[i + 2].isspace()):
            tokens.append(Token("EQC", "=c", i))
            i += 2
            continue
        for symbol, kind in _SYMBOLS:
            if text.startswith(symbol, i):
                tokens.append(Token(kind, symbol, i))
                i += len(symbol)
                break
        else:
            if ch == "=":
                tokens.append(Token("EQ", "=", i))
                i += 1
                continue
            match = _ELEM.match(text, i)
            if match:
                tokens.append(Token("ELEM", match.group(1), i))
                i = match.end()
                continue
            match = _IDENT.match(text, i)
            if not match:
                raise ParseError(f"unexpected character '{ch}'", i)
            word = match.group(0)
            tokens.append(Token("KEYWORD" if word in KEYWORDS else "IDENT", word, i))
            i = match.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class FormulaParser:
    """One-shot parser over a token list.

    With a signature every symbol is checked against it; without one the
    symbols are inferred from their position.
    """

    IDENTITY_OPS = {"EQ", "EQC", "EQBANG"}

    def __init__(self, text: str, sig: Optional[Signature] = None):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.pos = 0
        self.bound: List[str] = []

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            raise ParseError(f"expected {what}", self.current.offset)
        return self.advance()

    # entry points

    def parse(self) -> Formula:
        formula = self.parse_formula()
        if self.current.kind != "EOF":
            raise ParseError(f"unexpected '{self.current.text}'", self.current.offset)
        return formula

    def parse_single_term(self) -> Term:
        term = self.parse_term()
        if self.current.kind != "EOF":
            raise ParseError(f"unexpected '{self.current.text}'", self.current.offset)
        return term

    # formulas

    def parse_formula(self) -> Formula:
        left = self.parse_disjunction()
        if self.current.kind == "IMP":
            self.advance()
            return Imp(left, self.parse_formula())
        if self.current.kind == "STRICT":
            self.advance()
            return strict_imp(left, self.parse_formula())
        return left

    def parse_disjunction(self) -> Formula:
        left = self.parse_conjunction()
        while self.current.kind == "OR":
            self.advance()
            left = disj(left, self.parse_conjunction())
        return left

    def parse_conjunction(self) -> Formula:
        left = self.parse_unary()
        while self.current.kind == "AND":
            self.advance()
            left = conj(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        kind = self.current.kind
        if kind == "NOT":
            self.advance()
            return Neg(self.parse_unary())
        if kind == "BOX":
            self.advance()
            return Box(self.parse_unary())
        if kind == "DIA":
            self.advance()
            return diamond(self.parse_unary())
        if kind == "KEYWORD":
            return self.parse_quantifier()
        return self.parse_atomic()

    def parse_quantifier(self) -> Formula:
        keyword = self.advance()
        var = self.expect("IDENT", "a variable after quantifier").text
        self.expect("DOT", "'.' after quantified variable")
        self.bound.append(var)
        try:
            body = self.parse_formula()
        finally:
            self.bound.pop()
        return Forall(var, body) if keyword.text == "forall" else exists(var, body)

    def parse_atomic(self) -> Formula:
        token = self.current
        if token.kind == "LPAREN":
            self.advance()
            inner = self.parse_formula()
            self.expect("RPAREN", "')'")
            return inner
        if token.kind == "ELEM":
            return self.parse_identity(self.parse_term())
        if token.kind != "IDENT":
            raise ParseError("expected a formula", token.offset)

        name = token.text
        if self.peek().kind == "LPAREN":
            if self.sig is not None and name in self.sig.functions:
                return self.parse_identity(self.parse_term())
            self.advance()
            args = self.parse_arguments()
            if self.current.kind in self.IDENTITY_OPS:
                if self.sig is not None and name in self.sig.predicates:
                    raise SignatureError(f"predicate '{name}' used as a function at offset {token.offset}")
                return self.parse_identity(self.check_application(name, args, token))
            return self.make_atom(name, args, token)

        if self.peek().kind in self.IDENTITY_OPS:
            return self.parse_identity(self.parse_term())
        self.advance()
        return self.make_atom(name, (), token)

    def parse_identity(self, lhs: Term) -> Formula:
        op = self.current
        if op.kind not in self.IDENTITY_OPS:
            raise ParseError("expected '=', '=c' or '=!'", op.offset)
        self.advance()
        rhs = self.parse_term()
        if op.kind == "EQ":
            return Identity(IdentityKind.NECESSARY, lhs, rhs)
        if op.kind == "EQC":
            return Identity(IdentityKind.CONTINGENT, lhs, rhs)
        return Box(Identity(IdentityKind.NECESSARY, lhs, rhs))

    def make_atom(self, name: str, args: tuple, token: Token) -> Formula:
        if self.sig is not None:
            kind = self.sig.kind_of(name)
            if not args and kind == "proposition":
                return Atom(name)
            if args and kind == "predicate":
                if self.sig.predicates[name] != len(args):
                    raise SignatureError(
                        f"predicate '{name}' expects {self.sig.predicates[name]} arguments, "
                        f"got {len(args)} at offset {token.offset}"
                    )
                return Atom(name, args)
            raise SignatureError(f"unknown symbol '{name}' at offset {token.offset}")
        return Atom(name, args)

    # terms

    def parse_arguments(self) -> tuple:
        self.expect("LPAREN", "'('")
        args = [self.parse_term()]
        while self.current.kind == "COMMA":
            self.advance()
            args.append(self.parse_term())
        self.expect("RPAREN", "')' or ','")
        return tuple(args)

    def parse_term(self) -> Term:
        token = self.current
        if token.kind == "ELEM":
            self.advance()
            return Elem(int(token.text))
        if token.kind != "IDENT":
            raise ParseError("expected a term", token.offset)
        self.advance()
        name = token.text
        if self.current.kind == "LPAREN":
            return self.check_application(name, self.parse_arguments(), token)
        return self.resolve_name(name, token)

    def check_application(self, name: str, args: tuple, token: Token) -> Term:
        if self.sig is not None:
            if name not in self.sig.functions:
                raise SignatureError(f"unknown function '{name}' at offset {token.offset}")
            if self.sig.functions[name] != len(args):
                raise SignatureError(
                    f"function '{name}' expects {self.sig.functions[name]} arguments, "
                    f"got {len(args)} at offset {token.offset}"
                )
        return App(name, args)

    def resolve_name(self, name: str, token: Token) -> Term:
        if name in self.bound:
            return Var(name)
        if self.sig is not None:
            kind = self.sig.kind_of(name)
            if kind == "constant":
                return Const(name)
            if kind is not None:
                raise SignatureError(f"{kind} '{name}' used as a term at offset {token.offset}")
            return Var(name)
        return Var(name) if name[0] in VARIABLE_INITIALS else Const(name)


def parse_formula(text: str, sig: Optional[Signature] = None) -> Formula:
    """Parse formula text, checking symbols against ``sig`` when given.

    Raises:
        ParseError: malformed text.
        SignatureError: unknown symbol or arity mismatch.
    """
    formula = FormulaParser(text, sig).parse()
    if sig is None:
        infer_signature(formula)
    logger.debug(f"Parsed formula: {text!r}")
    return formula


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    return FormulaParser(text, sig).parse_single_term()


def infer_signature(*formulas: Formula) -> Signature:
    """Collect the symbols used by the given formulas.

    Raises:
        SignatureError: a symbol used with two arities or in two categories.
    """
    predicates: Dict[str, int] = {}
    functions: Dict[str, int] = {}
    constants: Set[str] = set()
    propositions: Set[str] = set()

    def note(table: Dict[str, int], name: str, arity: int, category: str):
        if table.setdefault(name, arity) != arity:
            raise SignatureError(f"{category} '{name}' used with arities {table[name]} and {arity}")

    for formula in formulas:
        for sub in iter_subformulas(formula):
            terms: tuple = ()
            if isinstance(sub, Atom):
                if sub.args:
                    note(predicates, sub.pred, len(sub.args), "predicate")
                else:
                    propositions.add(sub.pred)
                terms = sub.args
            elif isinstance(sub, Identity):
                terms = (sub.lhs, sub.rhs)
            for term in terms:
                for subterm in term_subterms(term):
                    if isinstance(subterm, App):
                        note(functions, subterm.func, len(subterm.args), "function")
                    elif isinstance(subterm, Const):
                        constants.add(subterm.name)
    return Signature(predicates, functions, frozenset(constants), frozenset(propositions))
