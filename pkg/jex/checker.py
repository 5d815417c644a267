"""jex.checker

Syntax-directed inference for `Γ ⊢ t : φ` and `Γ ⊢ e :: φ`, plus a replay
checker that validates rule-tagged derivation trees node by node.
"""

import enum
from collections.abc import Collection
from dataclasses import dataclass

from jex.substitution import replace
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Box,
    BoxJ,
    Context,
    Exists,
    Expression,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    Proposition,
    Var,
    free_vars,
    fresh,
    is_single_insertion,
    is_single_move,
    is_term,
)

REL = JudgmentKind.RELEVANT
IRR = JudgmentKind.IRRELEVANT


class Rule(enum.StrEnum):
    """Rule tags of computational derivations"""

    HYP = "hyp"
    JUST = "just"
    ARROW_I = "->I"
    ARROW_E = "->E"
    ARROW_IJ = "->Ij"
    ARROW_EJ = "->Ej"
    EXISTS_I = "ExI"
    EXISTS_E = "ExE"
    EXISTS_IJ = "ExIj"
    EXISTS_EJ = "ExEj"
    # only in transcribed trees, never produced by inference
    WEAKEN = "weaken"
    EXCHANGE = "exchange"
    PREMISE = "premise"


@dataclass(frozen=True)
class Judgment:
    context: Context
    subject: Expression
    kind: JudgmentKind
    prop: Proposition


@dataclass(frozen=True)
class Derivation:
    conclusion: Judgment
    rule: Rule
    premises: tuple["Derivation", ...] = ()


@dataclass(frozen=True)
class RuleFailure:
    """First node of a derivation that does not instantiate its rule"""

    path: tuple[int, ...]
    rule: str
    detail: str

    def __str__(self):
        where = ".".join(str(i) for i in self.path) or "root"
        return f"node {where} ({self.rule}): {self.detail}"


class TypeCheckError(Exception):
    """Base class of typing errors"""

    def __init__(self, detail: str, span: tuple[int, int] | None = None):
        self.detail = detail
        self.span = span

    def __str__(self):
        if self.span is None:
            return self.detail
        line, column = self.span
        return f"{line}:{column}: {self.detail}"


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable '{name}'")
        self.name = name


class NotATerm(TypeCheckError):
    def __init__(self, expression: Expression):
        super().__init__(
            f"{_show(expression)} is not a term and cannot be typed relevantly"
        )
        self.expression = expression


class ArrowExpected(TypeCheckError):
    def __init__(self, found: Proposition):
        super().__init__(f"expected an implication, found {_show(found)}")
        self.found = found


class ArgMismatch(TypeCheckError):
    def __init__(self, expected: Proposition, found: Proposition):
        super().__init__(
            f"argument has type {_show(found)} but the function expects"
            f" {_show(expected)}"
        )
        self.expected = expected
        self.found = found


class ExistsExpected(TypeCheckError):
    def __init__(self, found: Proposition):
        super().__init__(f"expected an existence proposition, found {_show(found)}")
        self.found = found


class NonTermArgument(TypeCheckError):
    def __init__(self, expression: Expression):
        super().__init__(f"{_show(expression)} must be a term in this position")
        self.expression = expression


class TypeMismatch(TypeCheckError):
    def __init__(self, expected: Proposition, found: Proposition):
        super().__init__(
            f"type mismatch: expected {_show(expected)}, found {_show(found)}"
        )
        self.expected = expected
        self.found = found


class DerivationError(Exception):
    """A derivation handed to a transformation does not replay"""

    def __init__(self, failure: RuleFailure):
        self.failure = failure
        self.detail = str(failure)


def _show(value) -> str:
    # pylint: disable=import-outside-toplevel
    from jex import printer

    return printer.show(value)


# inference


def _open(ctx: Context, var: str, body: Expression) -> tuple[str, Expression]:
    """rename a binder that would shadow a hypothesis"""
    if var not in ctx.names():
        return var, body
    renamed = fresh(ctx.names() | free_vars(body), var)
    return renamed, replace(body, var, Var(renamed))


def infer_relevant(ctx: Context, e: Expression) -> tuple[Proposition, Derivation]:
    """The unique φ with ctx ⊢ e : φ, and its derivation"""
    match e:
        case Var(name):
            if (prop := ctx.lookup(name)) is None:
                raise UnboundVariable(name)
            return prop, Derivation(Judgment(ctx, e, REL, prop), Rule.HYP)

        case Lam(var, annot, body):
            var, body = _open(ctx, var, body)
            codomain, premise = infer_relevant(ctx.extend(var, annot), body)
            prop = Arrow(annot, codomain)
            return prop, Derivation(
                Judgment(ctx, e, REL, prop), Rule.ARROW_I, (premise,)
            )

        case Ap(fun, arg):
            fun_prop, fun_d = infer_relevant(ctx, fun)
            if not isinstance(fun_prop, Arrow):
                raise ArrowExpected(fun_prop)
            arg_prop, arg_d = infer_relevant(ctx, arg)
            if arg_prop != fun_prop.domain:
                raise ArgMismatch(fun_prop.domain, arg_prop)
            prop = fun_prop.codomain
            return prop, Derivation(
                Judgment(ctx, e, REL, prop), Rule.ARROW_E, (fun_d, arg_d)
            )

        case Box(body):
            body_prop, body_d = infer_irrelevant(ctx, body)
            prop = Exists(body_prop)
            return prop, Derivation(
                Judgment(ctx, e, REL, prop), Rule.EXISTS_I, (body_d,)
            )

    raise NotATerm(e)


def infer_irrelevant(ctx: Context, e: Expression) -> tuple[Proposition, Derivation]:
    """The unique φ with ctx ⊢ e :: φ, and its derivation"""
    match e:
        case LamJ(var, annot, body):
            var, body = _open(ctx, var, body)
            codomain, premise = infer_irrelevant(ctx.extend(var, annot), body)
            prop = Arrow(annot, codomain)
            return prop, Derivation(
                Judgment(ctx, e, IRR, prop), Rule.ARROW_IJ, (premise,)
            )

        case ApJ(fun, arg):
            fun_prop, fun_d = infer_irrelevant(ctx, fun)
            if not isinstance(fun_prop, Arrow):
                raise ArrowExpected(fun_prop)
            if not is_term(arg):
                raise NonTermArgument(arg)
            arg_prop, arg_d = infer_relevant(ctx, arg)
            if arg_prop != fun_prop.domain:
                raise ArgMismatch(fun_prop.domain, arg_prop)
            prop = fun_prop.codomain
            return prop, Derivation(
                Judgment(ctx, e, IRR, prop), Rule.ARROW_EJ, (fun_d, arg_d)
            )

        case BoxJ(body):
            body_prop, body_d = infer_irrelevant(ctx, body)
            prop = Exists(body_prop)
            return prop, Derivation(
                Judgment(ctx, e, IRR, prop), Rule.EXISTS_IJ, (body_d,)
            )

        case LetBox(var, scrutinee, body):
            if not is_term(scrutinee):
                raise NonTermArgument(scrutinee)
            packed, scrutinee_d = infer_relevant(ctx, scrutinee)
            return _let(ctx, e, var, body, packed, scrutinee_d, Rule.EXISTS_E)

        case LetBoxJ(var, scrutinee, body):
            packed, scrutinee_d = infer_irrelevant(ctx, scrutinee)
            return _let(ctx, e, var, body, packed, scrutinee_d, Rule.EXISTS_EJ)

    prop, premise = infer_relevant(ctx, e)
    return prop, Derivation(Judgment(ctx, e, IRR, prop), Rule.JUST, (premise,))


def _let(ctx, e, var, body, packed, scrutinee_d, rule):
    if not isinstance(packed, Exists):
        raise ExistsExpected(packed)
    var, body = _open(ctx, var, body)
    prop, body_d = infer_irrelevant(ctx.extend(var, packed.body), body)
    return prop, Derivation(Judgment(ctx, e, IRR, prop), rule, (scrutinee_d, body_d))


def infer(
    ctx: Context, e: Expression, kind: JudgmentKind
) -> tuple[Proposition, Derivation]:
    if kind is REL:
        return infer_relevant(ctx, e)
    return infer_irrelevant(ctx, e)


def check_against(
    ctx: Context, e: Expression, kind: JudgmentKind, prop: Proposition
) -> Derivation:
    """Derivation of ctx ⊢ e `kind` prop, or TypeMismatch"""
    found, derivation = infer(ctx, e, kind)
    if found != prop:
        raise TypeMismatch(prop, found)
    return derivation


# replay


def find_replay_failure(
    d: Derivation,
    path: tuple[int, ...] = (),
    *,
    assumptions: Collection[Judgment] | None = None,
) -> RuleFailure | None:
    """None if every node instantiates its rule, else the first bad node.

    With `assumptions` given the tree must be closed under them: a `premise`
    leaf whose judgment is not among them fails. Without, premise leaves
    stay open and `open_premises` lists them.
    """
    if (detail := _node_failure(d)) is not None:
        return RuleFailure(path, str(d.rule), detail)
    if (
        d.rule is Rule.PREMISE
        and assumptions is not None
        and d.conclusion not in assumptions
    ):
        return RuleFailure(path, str(d.rule), "premise is not among the assumptions")
    for index, premise in enumerate(d.premises):
        failure = find_replay_failure(
            premise, path + (index,), assumptions=assumptions
        )
        if failure is not None:
            return failure
    return None


def replay_derivation(
    d: Derivation, assumptions: Collection[Judgment] | None = None
) -> bool:
    return find_replay_failure(d, assumptions=assumptions) is None


def _bound_premise(
    concl: Judgment,
    premise: Judgment,
    var: str,
    body: Expression,
    annot: Proposition,
) -> str | None:
    """premise must be concl's context plus one hypothesis `z : annot`
    with subject body[z/var]"""
    entries = premise.context.entries
    if entries[:-1] != concl.context.entries or not entries:
        return "premise context must extend the conclusion context by one hypothesis"
    name, prop = entries[-1]
    if prop != annot:
        return f"bound hypothesis has type {_show(prop)}, expected {_show(annot)}"
    if name in free_vars(concl.subject):
        return f"premise binds '{name}' which is free in the conclusion"
    if premise.subject != replace(body, var, Var(name)):
        return "premise subject is not the body of the binder"
    return None


# pylint: disable=too-many-return-statements, too-many-branches
def _node_failure(d: Derivation) -> str | None:
    concl = d.conclusion
    subject = concl.subject
    premises = [p.conclusion for p in d.premises]
    arity = {Rule.HYP: 0, Rule.PREMISE: 0, Rule.ARROW_E: 2, Rule.ARROW_EJ: 2}
    arity |= {Rule.EXISTS_E: 2, Rule.EXISTS_EJ: 2}
    if len(premises) != arity.get(d.rule, 1):
        return f"wrong number of premises ({len(premises)})"

    if d.rule in (Rule.WEAKEN, Rule.EXCHANGE):
        (premise,) = premises
        if (premise.subject, premise.kind, premise.prop) != (
            subject,
            concl.kind,
            concl.prop,
        ):
            return "structural rules keep the subject and proposition"
        if d.rule is Rule.WEAKEN:
            if not is_single_insertion(premise.context.entries, concl.context.entries):
                return "conclusion context must add exactly one hypothesis"
        elif not is_single_move(premise.context.entries, concl.context.entries):
            return "conclusion context must move exactly one hypothesis"
        return None

    if d.rule is Rule.PREMISE:
        if concl.kind is REL and not is_term(subject):
            return "relevant premise must have a term subject"
        return None

    expected_kind = {
        Rule.HYP: REL,
        Rule.ARROW_I: REL,
        Rule.ARROW_E: REL,
        Rule.EXISTS_I: REL,
    }.get(d.rule, IRR)
    if concl.kind is not expected_kind:
        return f"conclusion must be a {expected_kind} judgment"

    match d.rule, subject:
        case Rule.HYP, Var(name):
            if concl.context.lookup(name) != concl.prop:
                return f"'{name}' is not a hypothesis of type {_show(concl.prop)}"
            return None

        case Rule.JUST, _:
            (premise,) = premises
            if not is_term(subject):
                return "just applies to terms only"
            if premise != Judgment(concl.context, subject, REL, concl.prop):
                return "premise must be the relevant judgment of the same term"
            return None

        case (Rule.ARROW_I, Lam(var, annot, body)) | (
            Rule.ARROW_IJ,
            LamJ(var, annot, body),
        ):
            (premise,) = premises
            if concl.prop != Arrow(annot, premise.prop):
                return "conclusion must be the implication from the annotation"
            if premise.kind is not concl.kind:
                return "premise kind must match"
            return _bound_premise(concl, premise, var, body, annot)

        case (Rule.ARROW_E, Ap(fun, arg)) | (Rule.ARROW_EJ, ApJ(fun, arg)):
            fun_j, arg_j = premises
            if fun_j.context != concl.context or arg_j.context != concl.context:
                return "premises must share the conclusion context"
            if fun_j.subject != fun or arg_j.subject != arg:
                return "premise subjects must be the function and the argument"
            if fun_j.kind is not concl.kind or arg_j.kind is not REL:
                return "premise kinds do not match the rule"
            if fun_j.prop != Arrow(arg_j.prop, concl.prop):
                return "function type must be argument type -> conclusion type"
            return None

        case (Rule.EXISTS_I, Box(body)) | (Rule.EXISTS_IJ, BoxJ(body)):
            (premise,) = premises
            if premise != Judgment(concl.context, body, IRR, premise.prop):
                return "premise must be the irrelevant judgment of the box body"
            if concl.prop != Exists(premise.prop):
                return "conclusion must be Ex of the premise proposition"
            return None

        case (Rule.EXISTS_E, LetBox(var, scrutinee, body)) | (
            Rule.EXISTS_EJ,
            LetBoxJ(var, scrutinee, body),
        ):
            scrutinee_j, body_j = premises
            scrutinee_kind = REL if d.rule is Rule.EXISTS_E else IRR
            if scrutinee_j != Judgment(
                concl.context, scrutinee, scrutinee_kind, scrutinee_j.prop
            ):
                return f"first premise must be the {scrutinee_kind} scrutinee judgment"
            if not isinstance(scrutinee_j.prop, Exists):
                return "scrutinee must have an Ex type"
            if body_j.kind is not IRR or body_j.prop != concl.prop:
                return "second premise must be the irrelevant body judgment"
            return _bound_premise(concl, body_j, var, body, scrutinee_j.prop.body)

    return f"rule does not apply to {_show(subject)}"


def open_premises(d: Derivation) -> list[Judgment]:
    """conclusions of the premise leaves, left to right"""
    if d.rule is Rule.PREMISE:
        return [d.conclusion]
    return [j for premise in d.premises for j in open_premises(premise)]
