"""jex.parser

Source files, propositions, expressions and derivation trees, parsed with a
single LALR grammar. Every declaration remembers where it starts.
"""

from dataclasses import dataclass

from lark import Lark, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from jex.checker import Derivation, Judgment, Rule
from jex.lax import Circle, Implies, LaxAtom, LaxProposition
from jex.logic import LogicalDerivation, LogicalJudgment, LogicalRule
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Atom,
    Box,
    BoxJ,
    Context,
    ContextError,
    Exists,
    Expression,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    Proposition,
    Var,
    lolli,
)

GRAMMAR = r"""
    program: declaration*

    ?declaration: def_decl
                | hyp_decl
                | check_decl
                | normalize_decl
                | trace_decl
                | translate_decl
                | derive_expr_decl
                | derive_prop_decl
                | proof_decl
                | derivation_decl

    def_decl: "def" NAME "=" expr
    hyp_decl: "hyp" NAME ":" prop
    check_decl: "check" expr sep prop
    normalize_decl: "normalize" expr
    trace_decl: "trace" expr
    translate_decl: "translate" prop
    derive_expr_decl: "derive" EXPR_BUILDER expr
    derive_prop_decl: "derive" PROP_BUILDER prop ("," prop)*
    proof_decl: "proof" ["assuming" ljudgment ("," ljudgment)* "by"] ltree
    derivation_decl: "derivation" ["assuming" cjudgment ("," cjudgment)* "by"] ctree

    !sep: ":" | "::"
    !verdict: "true" | "just"

    // propositions

    ?prop: unary "->" prop -> arrow
         | unary "-o" prop -> lolli
         | unary
    ?unary: "Ex" unary -> exists
          | NAME -> atom
          | "(" prop ")"

    ?lax: lax_unary "=>" lax -> implies
        | lax_unary
    ?lax_unary: "O" lax_unary -> circle
              | NAME -> lax_atom
              | "(" lax ")"

    // expressions

    ?expr: "\\" "(" NAME ":" prop ")" "." expr -> lam
         | "\\j" "(" NAME ":" prop ")" "." expr -> lamj
         | "let" "[" NAME "]" "=" app "in" expr -> let
         | "let" "[" NAME RBRACKJ "=" app "in" expr -> letj
         | app
    ?app: app atom_expr -> ap
        | app "@j" atom_expr -> apj
        | atom_expr
    ?atom_expr: NAME -> var
              | "[" expr "]" -> box
              | "[" expr RBRACKJ -> boxj
              | "(" expr ")"

    // derivation trees

    ltree: "(" RULE ljudgment ltree* ")"
    ljudgment: "(" [prop ("," prop)*] "|-" prop verdict ")"
    ctree: "(" RULE cjudgment ctree* ")"
    cjudgment: "(" [entry ("," entry)*] "|-" expr sep prop ")"
    entry: NAME ":" prop

    // entry points besides `program`

    prop_only: prop
    lax_only: lax
    expr_only: expr

    NAME: /[a-z_][A-Za-z0-9_']*/
    RBRACKJ.2: /\]j(?![A-Za-z0-9_'])/
    EXPR_BUILDER.2: "trunc-intro" | "trunc-elim"
    PROP_BUILDER: /(prop|lax|lolli|axiom|true)-[A-Za-z0-9-]+/
    RULE: /->Ij|->Ej|->I|->E|-oIj|-oEj|-oI|-oE|ExIj|ExEj|ExI|ExE/
        | /hyp|just|sub1|sub2|weaken|exchange|contract|premise|R/

    COMMENT: /--[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(
    GRAMMAR,
    parser="lalr",
    lexer="contextual",
    start=["program", "prop_only", "lax_only", "expr_only"],
    propagate_positions=True,
    maybe_placeholders=True,
)


class ParseError(Exception):
    """Syntax error with its position and the tokens that would have fit"""

    def __init__(
        self,
        detail: str,
        line: int,
        column: int,
        expected: frozenset[str] = frozenset(),
    ):
        self.detail = detail
        self.line = line
        self.column = column
        self.expected = expected

    def __str__(self):
        text = f"{self.line}:{self.column}: {self.detail}"
        if self.expected:
            text += f" (expected one of: {', '.join(sorted(self.expected))})"
        return text


@dataclass(frozen=True)
class Span:
    line: int
    column: int


@dataclass(frozen=True)
class Def:
    name: str
    expression: Expression
    span: Span


@dataclass(frozen=True)
class Hyp:
    name: str
    prop: Proposition
    span: Span


@dataclass(frozen=True)
class Check:
    expression: Expression
    kind: JudgmentKind
    prop: Proposition
    span: Span


@dataclass(frozen=True)
class Normalize:
    expression: Expression
    span: Span


@dataclass(frozen=True)
class Trace:
    expression: Expression
    span: Span


@dataclass(frozen=True)
class Translate:
    prop: Proposition
    span: Span


@dataclass(frozen=True)
class Derive:
    """`derive BUILDER ARGS`; arguments are one expression or propositions"""

    builder: str
    arguments: tuple
    span: Span


@dataclass(frozen=True)
class Proof:
    """`proof [assuming J, ... by] TREE`"""

    derivation: LogicalDerivation
    assumptions: tuple[LogicalJudgment, ...]
    span: Span


@dataclass(frozen=True)
class DerivationDecl:
    derivation: Derivation
    assumptions: tuple[Judgment, ...]
    span: Span


Declaration = (
    Def
    | Hyp
    | Check
    | Normalize
    | Trace
    | Translate
    | Derive
    | Proof
    | DerivationDecl
)


@dataclass(frozen=True)
class SourceFile:
    declarations: tuple[Declaration, ...]


def _span(meta) -> Span:
    return Span(meta.line, meta.column)


def _kind(separator: str) -> JudgmentKind:
    return JudgmentKind.RELEVANT if separator == ":" else JudgmentKind.IRRELEVANT


class _ToAst(Transformer):
    # pylint: disable=missing-function-docstring, too-many-public-methods

    def NAME(self, token):  # pylint: disable=invalid-name
        return str(token)

    # propositions

    @v_args(inline=True)
    def atom(self, name):
        return Atom(name)

    @v_args(inline=True)
    def exists(self, body):
        return Exists(body)

    @v_args(inline=True)
    def arrow(self, domain, codomain):
        return Arrow(domain, codomain)

    @v_args(inline=True)
    def lolli(self, domain, codomain):
        return lolli(domain, codomain)

    @v_args(inline=True)
    def lax_atom(self, name):
        return LaxAtom(name)

    @v_args(inline=True)
    def circle(self, body):
        return Circle(body)

    @v_args(inline=True)
    def implies(self, domain, codomain):
        return Implies(domain, codomain)

    # expressions

    @v_args(inline=True)
    def var(self, name):
        return Var(name)

    @v_args(inline=True)
    def lam(self, var, annot, body):
        return Lam(var, annot, body)

    @v_args(inline=True)
    def lamj(self, var, annot, body):
        return LamJ(var, annot, body)

    @v_args(inline=True)
    def let(self, var, scrutinee, body):
        return LetBox(var, scrutinee, body)

    @v_args(inline=True)
    def letj(self, var, _bracket, scrutinee, body):
        return LetBoxJ(var, scrutinee, body)

    @v_args(inline=True)
    def ap(self, fun, arg):
        return Ap(fun, arg)

    @v_args(inline=True)
    def apj(self, fun, arg):
        return ApJ(fun, arg)

    @v_args(inline=True)
    def box(self, body):
        return Box(body)

    @v_args(inline=True)
    def boxj(self, body, _bracket):
        return BoxJ(body)

    @v_args(inline=True)
    def sep(self, token):
        return _kind(str(token))

    @v_args(inline=True)
    def verdict(self, token):
        return JudgmentKind.RELEVANT if token == "true" else JudgmentKind.IRRELEVANT

    # trees

    def ljudgment(self, children):
        *hypotheses, conclusion, kind = children
        hypotheses = tuple(h for h in hypotheses if h is not None)
        return LogicalJudgment(hypotheses, conclusion, kind)

    @v_args(meta=True)
    def ltree(self, meta, children):
        rule, judgment, *premises = children
        try:
            rule = LogicalRule(str(rule))
        except ValueError as err:
            raise ParseError(f"unknown rule '{rule}'", meta.line, meta.column) from err
        return LogicalDerivation(judgment, rule, tuple(premises))

    @v_args(inline=True)
    def entry(self, name, prop):
        return (name, prop)

    @v_args(meta=True)
    def cjudgment(self, meta, children):
        *entries, subject, kind, prop = children
        try:
            context = Context(tuple(e for e in entries if e is not None))
        except ContextError as err:
            raise ParseError(err.detail, meta.line, meta.column) from err
        return Judgment(context, subject, kind, prop)

    @v_args(meta=True)
    def ctree(self, meta, children):
        rule, judgment, *premises = children
        try:
            rule = Rule(str(rule))
        except ValueError as err:
            raise ParseError(
                f"rule '{rule}' is not a rule of computational derivations",
                meta.line,
                meta.column,
            ) from err
        return Derivation(judgment, rule, tuple(premises))

    # declarations

    @v_args(meta=True)
    def def_decl(self, meta, children):
        name, expression = children
        return Def(name, expression, _span(meta))

    @v_args(meta=True)
    def hyp_decl(self, meta, children):
        name, prop = children
        return Hyp(name, prop, _span(meta))

    @v_args(meta=True)
    def check_decl(self, meta, children):
        expression, kind, prop = children
        return Check(expression, kind, prop, _span(meta))

    @v_args(meta=True)
    def normalize_decl(self, meta, children):
        return Normalize(children[0], _span(meta))

    @v_args(meta=True)
    def trace_decl(self, meta, children):
        return Trace(children[0], _span(meta))

    @v_args(meta=True)
    def translate_decl(self, meta, children):
        return Translate(children[0], _span(meta))

    @v_args(meta=True)
    def derive_expr_decl(self, meta, children):
        builder, expression = children
        return Derive(str(builder), (expression,), _span(meta))

    @v_args(meta=True)
    def derive_prop_decl(self, meta, children):
        builder, *props = children
        return Derive(str(builder), tuple(props), _span(meta))

    @v_args(meta=True)
    def proof_decl(self, meta, children):
        *assumptions, derivation = children
        assumptions = tuple(a for a in assumptions if a is not None)
        return Proof(derivation, assumptions, _span(meta))

    @v_args(meta=True)
    def derivation_decl(self, meta, children):
        *assumptions, derivation = children
        assumptions = tuple(a for a in assumptions if a is not None)
        return DerivationDecl(derivation, assumptions, _span(meta))

    def program(self, children):
        return SourceFile(tuple(children))

    def prop_only(self, children):
        return children[0]

    lax_only = prop_only
    expr_only = prop_only


def _describe(name: str) -> str:
    if name == "$END":
        return "end of input"
    try:
        terminal = _parser.get_terminal(name)
    except KeyError:
        return name
    if terminal.pattern.type == "str":
        return repr(terminal.pattern.value)
    return name


def _end_position(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse(text: str, start: str):
    text = text.removeprefix("\ufeff")
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedEOF as err:
        line, column = _end_position(text)
        expected = frozenset(_describe(name) for name in err.expected)
        raise ParseError("unexpected end of input", line, column, expected) from err
    except UnexpectedToken as err:
        if err.token.type == "$END":
            line, column = _end_position(text)
            detail = "unexpected end of input"
        else:
            line, column = err.line, err.column
            detail = f"unexpected {err.token.value!r}"
        expected = frozenset(_describe(name) for name in err.expected)
        raise ParseError(detail, line, column, expected) from err
    except UnexpectedCharacters as err:
        expected = frozenset(_describe(name) for name in err.allowed or ())
        character = text[err.pos_in_stream] if err.pos_in_stream < len(text) else ""
        raise ParseError(
            f"unexpected character {character!r}", err.line, err.column, expected
        ) from err
    except UnexpectedInput as err:
        raise ParseError(str(err), err.line, err.column) from err
    try:
        return _ToAst().transform(tree)
    except VisitError as err:
        raise err.orig_exc from err


def parse(text: str) -> SourceFile:
    """Parse a whole source file"""
    return _parse(text, "program")


def parse_prop(text: str) -> Proposition:
    return _parse(text, "prop_only")


def parse_lax(text: str) -> LaxProposition:
    return _parse(text, "lax_only")


def parse_expr(text: str) -> Expression:
    return _parse(text, "expr_only")


def parse_hypothesis(text: str) -> tuple[str, Proposition]:
    """`x:A` as given on the command line"""
    name, colon, prop = text.partition(":")
    if not colon or not name.strip():
        raise ParseError(f"expected NAME:PROP, got {text!r}", 1, 1)
    return name.strip(), parse_prop(prop)

