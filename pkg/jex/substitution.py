"""jex.substitution

Two substitutions live here. `subst_term` is the ordinary capture-avoiding
`[t/x]e`. `subst_expr` is `⟦e/x⟧e'`, which recurses on the substituted
expression `e` rather than on the target `e'`.
"""

from jex.syntax import (
    Ap,
    ApJ,
    Box,
    BoxJ,
    Expression,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    Var,
    free_vars,
    fresh,
    is_term,
)


class SubstitutionError(Exception):
    """Substitution applied outside its domain"""

    def __init__(self, detail: str):
        self.detail = detail


def replace(e: Expression, x: str, s: Expression) -> Expression:
    """Capture-avoiding replacement of free `x` in `e` by any expression `s`.

    No term-hood check; used for inlining definitions and renaming.
    """
    if x not in free_vars(e):
        return e
    return _replace(e, x, s, free_vars(s))


def _replace(e: Expression, x: str, s: Expression, fv_s: frozenset) -> Expression:
    match e:
        case Var(name):
            return s if name == x else e
        case Ap() | ApJ():
            return type(e)(_replace(e.fun, x, s, fv_s), _replace(e.arg, x, s, fv_s))
        case Box() | BoxJ():
            return type(e)(_replace(e.body, x, s, fv_s))
        case Lam() | LamJ():
            if e.var == x:
                return e
            var, body = _away(e.var, e.body, fv_s | {x})
            return type(e)(var, e.annot, _replace(body, x, s, fv_s))
        case LetBox() | LetBoxJ():
            scrutinee = _replace(e.scrutinee, x, s, fv_s)
            if e.var == x:
                return type(e)(e.var, scrutinee, e.body)
            var, body = _away(e.var, e.body, fv_s | {x})
            return type(e)(var, scrutinee, _replace(body, x, s, fv_s))
    raise TypeError(f"not an expression: {e!r}")


def _away(var: str, body: Expression, avoid) -> tuple[str, Expression]:
    """rename binder `var` of `body` so that it is not in `avoid`"""
    if var not in avoid:
        return var, body
    renamed = fresh(set(avoid) | free_vars(body), var)
    return renamed, _replace(body, var, Var(renamed), frozenset((renamed,)))


def subst_term(t: Expression, x: str, e: Expression) -> Expression:
    """[t/x]e"""
    if not is_term(t):
        raise SubstitutionError(
            f"[t/{x}] needs a term for t; use the expression substitution instead"
        )
    return replace(e, x, t)


def subst_expr(e: Expression, x: str, target: Expression) -> Expression:
    """⟦e/x⟧target, by recursion on `e`"""
    if is_term(e):
        return subst_term(e, x, target)

    # the bound variable of `e` ends up scoping over `target`
    avoid = free_vars(target) | {x}
    match e:
        case LetBox(var, scrutinee, body):
            var, body = _away(var, body, avoid)
            return LetBox(var, scrutinee, subst_expr(body, x, target))
        case LetBoxJ(var, scrutinee, body):
            var, body = _away(var, body, avoid)
            return LetBoxJ(var, scrutinee, subst_expr(body, x, target))
        case BoxJ(body):
            return Box(subst_expr(body, x, target))
        case LamJ(var, annot, body):
            var, body = _away(var, body, avoid)
            return LamJ(var, annot, subst_expr(body, x, target))
        case ApJ(fun, arg):
            return ApJ(subst_expr(fun, x, target), arg)
        case Lam() | Ap():
            raise SubstitutionError(
                "malformed substitutee: a lambda or application with a non-term"
                " component"
            )
    raise TypeError(f"not an expression: {e!r}")
