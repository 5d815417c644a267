"""jex.reduction

Weak leftmost-outermost reduction. The root redex is contracted first, then
the function position of an application, then the scrutinee of a let. Nothing
reduces under a binder or inside a box.
"""

import enum
import logging
from dataclasses import dataclass

from jex.checker import TypeCheckError, check_against
from jex.substitution import SubstitutionError, subst_expr, subst_term
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
    is_term,
)

logger = logging.getLogger(__name__)


class StepKind(enum.StrEnum):
    """Tag of a reduction step"""

    BETA_ARROW = "BetaArrow"
    BETA_ARROW_J = "BetaArrowJ"
    BETA_EXISTS = "BetaExists"
    BETA_EXISTS_J = "BetaExistsJ"
    CONG_AP_HEAD = "CongApHead"
    CONG_APJ_HEAD = "CongApJHead"
    CONG_LET_SCRUTINEE = "CongLetScrutinee"
    CONG_LETJ_SCRUTINEE = "CongLetJScrutinee"


CONGRUENCES = {
    Ap: StepKind.CONG_AP_HEAD,
    ApJ: StepKind.CONG_APJ_HEAD,
    LetBox: StepKind.CONG_LET_SCRUTINEE,
    LetBoxJ: StepKind.CONG_LETJ_SCRUTINEE,
}


@dataclass(frozen=True)
class Step:
    """One reduction step.

    `path` lists the congruence tags leading to the contracted redex, ending
    with its beta tag; `kind` is the outermost of them.
    """

    expression: Expression
    path: tuple[StepKind, ...]

    @property
    def kind(self) -> StepKind:
        return self.path[0]

    @property
    def redex_kind(self) -> StepKind:
        return self.path[-1]


@dataclass(frozen=True)
class NormalForm:
    expression: Expression
    trace: tuple[Step, ...]


class FuelExhausted(Exception):
    """normalize ran out of steps"""

    def __init__(self, trace: tuple[Step, ...]):
        self.trace = trace
        self.detail = f"no normal form within {len(trace)} steps"


class HeadMismatch(Exception):
    """eta expansion needs an implication or an existence proposition"""

    def __init__(self, detail: str):
        self.detail = detail


class IllTyped(Exception):
    """eta expansion of an expression that does not have the given type"""

    def __init__(self, detail: str):
        self.detail = detail


def contract(e: Expression) -> tuple[Expression, StepKind] | None:
    """Contract `e` if it is a redex at the root.

    The irrelevant eliminations also fire on relevant canonical forms, since
    `e :: φ -> ψ` may be a λ and `e :: Ex φ` may be a ⟨·⟩.
    """
    match e:
        case Ap(Lam(var, _, body), arg) if is_term(arg):
            return subst_term(arg, var, body), StepKind.BETA_ARROW
        case ApJ(LamJ(var, _, body) | Lam(var, _, body), arg) if is_term(arg):
            return subst_term(arg, var, body), StepKind.BETA_ARROW_J
        case LetBox(var, Box(packed), body):
            return _unpack(packed, var, body, StepKind.BETA_EXISTS)
        case LetBoxJ(var, BoxJ(packed) | Box(packed), body):
            return _unpack(packed, var, body, StepKind.BETA_EXISTS_J)
    return None


def _unpack(packed, var, body, kind):
    # only reachable from ill-typed input; the let stays stuck
    try:
        return subst_expr(packed, var, body), kind
    except SubstitutionError as err:
        logger.debug("%s does not fire: %s", kind, err.detail)
        return None


def _inner(e: Expression) -> Expression | None:
    match e:
        case Ap() | ApJ():
            return e.fun
        case LetBox() | LetBoxJ():
            return e.scrutinee
    return None


def _rebuild(e: Expression, inner: Expression) -> Expression:
    match e:
        case Ap() | ApJ():
            return type(e)(inner, e.arg)
        case LetBox() | LetBoxJ():
            return type(e)(e.var, inner, e.body)
    raise TypeError(f"no congruence position in {e!r}")


def step(e: Expression) -> Step | None:
    """The unique next step of `e`, or None if `e` is normal"""
    if (contracted := contract(e)) is not None:
        result, kind = contracted
        return Step(result, (kind,))
    if (inner := _inner(e)) is None:
        return None
    if (inner_step := step(inner)) is None:
        return None
    return Step(
        _rebuild(e, inner_step.expression), (CONGRUENCES[type(e)],) + inner_step.path
    )


def replay_step(e: Expression, path: tuple[StepKind, ...]) -> Expression | None:
    """Apply a recorded step; None if `path` does not fit `e`"""
    if not path:
        return None
    head, rest = path[0], path[1:]
    if not rest:
        contracted = contract(e)
        if contracted is None or contracted[1] is not head:
            return None
        return contracted[0]
    if CONGRUENCES.get(type(e)) is not head:
        return None
    inner = replay_step(_inner(e), rest)
    return None if inner is None else _rebuild(e, inner)


def normalize(e: Expression, fuel: int) -> NormalForm:
    """Iterate `step` at most `fuel` times"""
    if fuel < 1:
        raise ValueError("fuel must be positive")
    trace = []
    current = e
    while (next_step := step(current)) is not None:
        if len(trace) == fuel:
            raise FuelExhausted(tuple(trace))
        trace.append(next_step)
        current = next_step.expression
    return NormalForm(current, tuple(trace))


def is_canonical(e: Expression) -> bool:
    return isinstance(e, (Lam, LamJ, Box, BoxJ))


def canonical_for(e: Expression, prop: Proposition) -> bool:
    """normal form head matches the head connective of `prop`"""
    match prop:
        case Arrow():
            return isinstance(e, (Lam, LamJ))
        case Exists():
            return isinstance(e, (Box, BoxJ))
    return False


def eta_expand(
    ctx: Context, e: Expression, at: Proposition, kind: JudgmentKind
) -> Expression:
    """One-step eta expansion of `e` at `at`"""
    if not isinstance(at, (Arrow, Exists)):
        raise HeadMismatch("eta expansion needs an implication or Ex proposition")
    try:
        check_against(ctx, e, kind, at)
    except TypeCheckError as err:
        raise IllTyped(err.detail) from err

    x = fresh(ctx.names() | free_vars(e), "x")
    match kind, at:
        case JudgmentKind.RELEVANT, Arrow(domain, _):
            return Lam(x, domain, Ap(e, Var(x)))
        case JudgmentKind.RELEVANT, Exists():
            return Box(LetBox(x, e, Var(x)))
        case JudgmentKind.IRRELEVANT, Arrow(domain, _):
            return LamJ(x, domain, ApJ(e, Var(x)))
        case _:
            return BoxJ(LetBoxJ(x, e, Var(x)))
