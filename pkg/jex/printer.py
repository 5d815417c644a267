"""jex.printer

Concrete syntax for every value the kernel produces. The ASCII form is the
source syntax accepted by `jex.parser`; `unicode=True` switches to the
mathematical notation for reading alongside hand-written proofs.
"""

from jex.lax import Circle, Implies, LaxAtom
from jex.substitution import replace
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Atom,
    Box,
    BoxJ,
    Exists,
    Expression,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    Var,
    free_vars,
    fresh,
    is_lolli,
)

ASCII = {
    "arrow": "->",
    "lolli": "-o",
    "exists": "Ex ",
    "lam": "\\",
    "lamj": "\\j",
    "open": "[",
    "close": "]",
    "closej": "]j",
    "let": "let [{var}] = ",
    "letj": "let [{var}]j = ",
    "in": " in ",
    "apj": " @j ",
    "turnstile": "|-",
    "implies": "=>",
    "circle": "O ",
}

UNICODE = ASCII | {
    "arrow": "→",
    "lolli": "⊸",
    "exists": "∃",
    "lam": "λ",
    "lamj": "λⱼ",
    "open": "⟨",
    "close": "⟩",
    "closej": "⟩ⱼ",
    "let": "let ⟨{var}⟩ be ",
    "letj": "let ⟨{var}⟩ⱼ be ",
    "turnstile": "⊢",
    "implies": "⇒",
    "circle": "◯",
}


class Printer:
    """Precedence-aware printer; one instance per output style"""

    def __init__(self, unicode: bool = False, resugar: bool = False):
        self.tokens = UNICODE if unicode else ASCII
        self.resugar = resugar

    # propositions

    def prop(self, prop) -> str:
        match prop:
            case Atom(name):
                return name
            case Arrow(domain, codomain):
                if self.resugar and is_lolli(prop):
                    connective, codomain = self.tokens["lolli"], codomain.body
                else:
                    connective = self.tokens["arrow"]
                left = self.prop(domain)
                if isinstance(domain, Arrow):
                    left = f"({left})"
                return f"{left} {connective} {self.prop(codomain)}"
            case Exists(body):
                inner = self.prop(body)
                if isinstance(body, Arrow):
                    inner = f"({inner})"
                return f"{self.tokens['exists']}{inner}"
        raise TypeError(f"not a proposition: {prop!r}")

    def lax(self, prop) -> str:
        match prop:
            case LaxAtom(name):
                return name
            case Implies(domain, codomain):
                left = self.lax(domain)
                if isinstance(domain, Implies):
                    left = f"({left})"
                return f"{left} {self.tokens['implies']} {self.lax(codomain)}"
            case Circle(body):
                inner = self.lax(body)
                if isinstance(body, Implies):
                    inner = f"({inner})"
                return f"{self.tokens['circle']}{inner}"
        raise TypeError(f"not a lax proposition: {prop!r}")

    # expressions

    def expr(self, e: Expression, scope=frozenset()) -> str:
        return self._expr(e, 0, frozenset(scope) | free_vars(e))

    def _binder(self, var, body, scope):
        """rename `var` if printing it would shadow a name already in scope"""
        if var not in scope:
            return var, body
        renamed = fresh(scope | free_vars(body), var)
        return renamed, replace(body, var, Var(renamed))

    # pylint: disable=too-many-return-statements
    def _expr(self, e: Expression, level: int, scope) -> str:
        tokens = self.tokens
        match e:
            case Var(name):
                return name
            case Lam() | LamJ():
                var, body = self._binder(e.var, e.body, scope)
                head = tokens["lam"] if isinstance(e, Lam) else tokens["lamj"]
                text = (
                    f"{head}({var}:{self.prop(e.annot)}). "
                    f"{self._expr(body, 0, scope | {var})}"
                )
                return text if level == 0 else f"({text})"
            case LetBox() | LetBoxJ():
                var, body = self._binder(e.var, e.body, scope)
                head = tokens["let"] if isinstance(e, LetBox) else tokens["letj"]
                text = (
                    head.format(var=var)
                    + self._expr(e.scrutinee, 1, scope)
                    + tokens["in"]
                    + self._expr(body, 0, scope | {var})
                )
                return text if level == 0 else f"({text})"
            case Ap(fun, arg):
                text = f"{self._expr(fun, 1, scope)} {self._expr(arg, 2, scope)}"
                return text if level <= 1 else f"({text})"
            case ApJ(fun, arg):
                fun_text = self._expr(fun, 1, scope)
                text = f"{fun_text}{tokens['apj']}{self._expr(arg, 2, scope)}"
                return text if level <= 1 else f"({text})"
            case Box(body):
                return f"{tokens['open']}{self._expr(body, 0, scope)}{tokens['close']}"
            case BoxJ(body):
                return f"{tokens['open']}{self._expr(body, 0, scope)}{tokens['closej']}"
        raise TypeError(f"not an expression: {e!r}")

    # judgments and derivations

    def judgment(self, j) -> str:
        turnstile = self.tokens["turnstile"]
        if hasattr(j, "subject"):
            hyps = ", ".join(f"{name} : {self.prop(p)}" for name, p in j.context)
            scope = j.context.names()
            subject = self.expr(j.subject, scope)
            rhs = f"{subject} {j.kind.separator} {self.prop(j.prop)}"
        else:
            hyps = ", ".join(self.prop(p) for p in j.hypotheses)
            rhs = f"{self.prop(j.conclusion)} {j.kind.verdict}"
        left = f"{hyps} " if hyps else ""
        return f"({left}{turnstile} {rhs})"

    def derivation(self, d, indent: int = 0) -> str:
        pad = " " * indent
        head = f"{pad}({d.rule} {self.judgment(d.conclusion)}"
        if not d.premises:
            return head + ")"
        body = "\n".join(self.derivation(p, indent + 2) for p in d.premises)
        return f"{head}\n{body})"

    def show(self, value) -> str:
        match value:
            case Atom() | Arrow() | Exists():
                return self.prop(value)
            case LaxAtom() | Implies() | Circle():
                return self.lax(value)
            case Expression():
                return self.expr(value)
        if hasattr(value, "premises"):
            return self.derivation(value)
        if hasattr(value, "kind"):
            return self.judgment(value)
        raise TypeError(f"cannot print {value!r}")


def show(value, unicode: bool = False, resugar: bool = False) -> str:
    """Render a proposition, lax proposition, expression, judgment or
    derivation"""
    return Printer(unicode, resugar).show(value)
