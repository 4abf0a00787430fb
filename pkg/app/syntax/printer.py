"""Formula printer; output re-parses to the same AST."""

from .ast import App, Atom, Box, Const, Elem, Forall, Formula, Identity, IdentityKind, Imp, Neg, Term, Var

_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def format_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Elem):
        return f"#{t.index}"
    if isinstance(t, App):
        return f"{t.func}({', '.join(format_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def format_formula(f: Formula, sugar: bool = True) -> str:
    """Render f in the ASCII grammar.

    With ``sugar`` the abbreviations <>, &, exists and =! are restored.
    """
    return _fmt(f, 0, sugar)


def _wrap(text: str, level: int, ctx: int) -> str:
    return f"({text})" if ctx > level else text


def _fmt(f: Formula, ctx: int, sugar: bool) -> str:
    if sugar:
        sugared = _sugared(f, ctx)
        if sugared is not None:
            return sugared

    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(format_term(a) for a in f.args)})"
    if isinstance(f, Identity):
        op = "=" if f.kind == IdentityKind.NECESSARY else "=c"
        return f"{format_term(f.lhs)} {op} {format_term(f.rhs)}"
    if isinstance(f, Neg):
        return "~" + _fmt(f.body, _UNARY, sugar)
    if isinstance(f, Box):
        return "[]" + _fmt(f.body, _UNARY, sugar)
    if isinstance(f, Imp):
        text = f"{_fmt(f.left, _OR, sugar)} -> {_fmt(f.right, _IMP, sugar)}"
        return _wrap(text, _IMP, ctx)
    if isinstance(f, Forall):
        return _wrap(f"forall {f.var}. {_fmt(f.body, 0, sugar)}", 0, ctx)
    raise TypeError(f"not a formula: {f!r}")


def _sugared(f: Formula, ctx: int):
    if isinstance(f, Box) and isinstance(f.body, Identity) and f.body.kind == IdentityKind.NECESSARY:
        return f"{format_term(f.body.lhs)} =! {format_term(f.body.rhs)}"
    if not isinstance(f, Neg):
        return None
    inner = f.body
    if isinstance(inner, Box) and isinstance(inner.body, Neg):
        return "<>" + _fmt(inner.body.body, _UNARY, True)
    if isinstance(inner, Forall) and isinstance(inner.body, Neg):
        return _wrap(f"exists {inner.var}. {_fmt(inner.body.body, 0, True)}", 0, ctx)
    if isinstance(inner, Imp) and isinstance(inner.right, Neg):
        text = f"{_fmt(inner.left, _AND, True)} & {_fmt(inner.right.body, _UNARY, True)}"
        return _wrap(text, _AND, ctx)
    return None
