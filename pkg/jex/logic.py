"""jex.logic

Checker for the pure logical variant (judgments `φ true` / `φ just`) with
explicit structural and substitution rules, the erasure of computational
derivations into it, and the elaboration of j-rules into true rules plus R.
"""

import enum
from collections.abc import Collection
from dataclasses import dataclass

from jex.checker import Derivation, DerivationError, RuleFailure, find_replay_failure
from jex.syntax import (
    Arrow,
    Exists,
    JudgmentKind,
    Proposition,
    is_single_insertion,
    is_single_move,
)

TRUE = JudgmentKind.RELEVANT
JUST = JudgmentKind.IRRELEVANT


class LogicalRule(enum.StrEnum):
    """Rule tags of logical derivations"""

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
    LOLLI_I = "-oI"
    LOLLI_E = "-oE"
    LOLLI_IJ = "-oIj"
    LOLLI_EJ = "-oEj"
    SUB1 = "sub1"
    SUB2 = "sub2"
    WEAKEN = "weaken"
    EXCHANGE = "exchange"
    CONTRACT = "contract"
    R = "R"
    PREMISE = "premise"


J_RULES = frozenset(
    {
        LogicalRule.ARROW_IJ,
        LogicalRule.ARROW_EJ,
        LogicalRule.EXISTS_IJ,
        LogicalRule.EXISTS_EJ,
    }
)
LOLLI_RULES = frozenset(
    {
        LogicalRule.LOLLI_I,
        LogicalRule.LOLLI_E,
        LogicalRule.LOLLI_IJ,
        LogicalRule.LOLLI_EJ,
    }
)


@dataclass(frozen=True)
class LogicalJudgment:
    """`hypotheses ⊢ conclusion true|just`; hypotheses are all `true`"""

    hypotheses: tuple[Proposition, ...]
    conclusion: Proposition
    kind: JudgmentKind

    def extend(self, *props: Proposition) -> tuple[Proposition, ...]:
        return self.hypotheses + props


@dataclass(frozen=True)
class LogicalDerivation:
    conclusion: LogicalJudgment
    rule: LogicalRule
    premises: tuple["LogicalDerivation", ...] = ()


def node(
    rule: LogicalRule,
    hypotheses: tuple[Proposition, ...],
    conclusion: Proposition,
    kind: JudgmentKind,
    *premises: LogicalDerivation,
) -> LogicalDerivation:
    """shorthand constructor used by the tree builders"""
    return LogicalDerivation(
        LogicalJudgment(tuple(hypotheses), conclusion, kind), rule, tuple(premises)
    )


# checking

_ARITY = {
    LogicalRule.HYP: 0,
    LogicalRule.PREMISE: 0,
    LogicalRule.ARROW_E: 2,
    LogicalRule.ARROW_EJ: 2,
    LogicalRule.EXISTS_E: 2,
    LogicalRule.EXISTS_EJ: 2,
    LogicalRule.LOLLI_E: 2,
    LogicalRule.LOLLI_EJ: 2,
    LogicalRule.SUB1: 2,
    LogicalRule.SUB2: 2,
}

# kind of the conclusion, then kinds of the premises; rules missing here keep
# one kind throughout
_KINDS = {
    LogicalRule.HYP: (TRUE, ()),
    LogicalRule.JUST: (JUST, (TRUE,)),
    LogicalRule.ARROW_I: (TRUE, (TRUE,)),
    LogicalRule.ARROW_E: (TRUE, (TRUE, TRUE)),
    LogicalRule.ARROW_IJ: (JUST, (JUST,)),
    LogicalRule.ARROW_EJ: (JUST, (JUST, TRUE)),
    LogicalRule.EXISTS_I: (TRUE, (JUST,)),
    LogicalRule.EXISTS_E: (JUST, (TRUE, JUST)),
    LogicalRule.EXISTS_IJ: (JUST, (JUST,)),
    LogicalRule.EXISTS_EJ: (JUST, (JUST, JUST)),
    LogicalRule.LOLLI_I: (TRUE, (JUST,)),
    LogicalRule.LOLLI_E: (JUST, (TRUE, TRUE)),
    LogicalRule.LOLLI_IJ: (JUST, (JUST,)),
    LogicalRule.LOLLI_EJ: (JUST, (JUST, TRUE)),
    LogicalRule.SUB2: (JUST, (TRUE, JUST)),
    LogicalRule.R: (JUST, (TRUE,)),
}


# pylint: disable=too-many-return-statements, too-many-branches
def _node_failure(d: LogicalDerivation) -> str | None:
    concl = d.conclusion
    hyps, prop = concl.hypotheses, concl.conclusion
    premises = [p.conclusion for p in d.premises]
    if len(premises) != _ARITY.get(d.rule, 1):
        return f"wrong number of premises ({len(premises)})"

    if d.rule is LogicalRule.PREMISE:
        return None

    if d.rule in _KINDS:
        kind, premise_kinds = _KINDS[d.rule]
        if concl.kind is not kind:
            return f"conclusion must be {kind.verdict}"
        if tuple(p.kind for p in premises) != premise_kinds:
            wanted = ", ".join(k.verdict for k in premise_kinds)
            return f"premises must be ({wanted})"
    elif any(p.kind is not concl.kind for p in premises):
        return "premise and conclusion kinds must agree"

    match d.rule:
        case LogicalRule.HYP:
            if prop not in hyps:
                return "conclusion is not among the hypotheses"

        case LogicalRule.JUST:
            if premises[0].hypotheses != hyps or premises[0].conclusion != prop:
                return "premise must be the same proposition, true"

        case LogicalRule.ARROW_I | LogicalRule.ARROW_IJ:
            if not isinstance(prop, Arrow):
                return "conclusion must be an implication"
            if premises[0] != LogicalJudgment(
                concl.extend(prop.domain), prop.codomain, premises[0].kind
            ):
                return "premise must assume the domain and conclude the codomain"

        case LogicalRule.ARROW_E | LogicalRule.ARROW_EJ:
            fun, arg = premises
            if fun.hypotheses != hyps or arg.hypotheses != hyps:
                return "premises must share the hypotheses"
            if fun.conclusion != Arrow(arg.conclusion, prop):
                return "first premise must be argument -> conclusion"

        case LogicalRule.EXISTS_I | LogicalRule.EXISTS_IJ:
            if not isinstance(prop, Exists):
                return "conclusion must be an Ex proposition"
            if premises[0].hypotheses != hyps or premises[0].conclusion != prop.body:
                return "premise must be the body of the Ex proposition"

        case LogicalRule.EXISTS_E | LogicalRule.EXISTS_EJ:
            packed, body = premises
            if packed.hypotheses != hyps or not isinstance(packed.conclusion, Exists):
                return "first premise must be an Ex proposition, same hypotheses"
            if body.hypotheses != concl.extend(packed.conclusion.body):
                return "second premise must assume the unpacked proposition"
            if body.conclusion != prop:
                return "second premise must have the conclusion's proposition"

        case LogicalRule.LOLLI_I | LogicalRule.LOLLI_IJ:
            if not (isinstance(prop, Arrow) and isinstance(prop.codomain, Exists)):
                return "conclusion must be an existential implication"
            if premises[0].hypotheses != concl.extend(prop.domain):
                return "premise must assume the domain"
            if premises[0].conclusion != prop.codomain.body:
                return "premise must conclude the unpacked codomain"

        case LogicalRule.LOLLI_E | LogicalRule.LOLLI_EJ:
            fun, arg = premises
            if fun.hypotheses != hyps or arg.hypotheses != hyps:
                return "premises must share the hypotheses"
            if fun.conclusion != Arrow(arg.conclusion, Exists(prop)):
                return "first premise must be argument -o conclusion"

        case LogicalRule.SUB1 | LogicalRule.SUB2:
            left, right = premises
            if left.hypotheses != hyps:
                return "first premise must share the hypotheses"
            if right.hypotheses != concl.extend(left.conclusion):
                return "second premise must assume the first premise's proposition"
            if right.conclusion != prop:
                return "second premise must have the conclusion's proposition"

        case LogicalRule.R:
            if not isinstance(prop, Arrow):
                return "conclusion must be an implication"
            if premises[0] != LogicalJudgment(hyps, _exists_arrow(prop), TRUE):
                return "premise must be the existential implication, true"

        case LogicalRule.WEAKEN | LogicalRule.EXCHANGE | LogicalRule.CONTRACT:
            (premise,) = premises
            if premise.conclusion != prop:
                return "structural rules keep the conclusion"
            if d.rule is LogicalRule.WEAKEN:
                if not is_single_insertion(premise.hypotheses, hyps):
                    return "conclusion must add exactly one hypothesis"
            elif d.rule is LogicalRule.EXCHANGE:
                if not is_single_move(premise.hypotheses, hyps):
                    return "conclusion must move exactly one hypothesis"
            elif not _is_contraction(premise.hypotheses, hyps):
                return "conclusion must merge one adjacent duplicate hypothesis"
    return None


def _exists_arrow(prop: Arrow) -> Arrow:
    return Arrow(prop.domain, Exists(prop.codomain))


def _is_contraction(before: tuple, after: tuple) -> bool:
    if len(before) != len(after) + 1:
        return False
    return any(
        before[i] == before[i + 1] and before[:i] + before[i + 1 :] == after
        for i in range(len(before) - 1)
    )


def find_logical_failure(
    d: LogicalDerivation,
    path: tuple[int, ...] = (),
    *,
    assumptions: Collection[LogicalJudgment] | None = None,
) -> RuleFailure | None:
    """First node that does not instantiate its rule; with `assumptions`,
    also the first premise leaf that is not assumed"""
    if (detail := _node_failure(d)) is not None:
        return RuleFailure(path, str(d.rule), detail)
    if (
        d.rule is LogicalRule.PREMISE
        and assumptions is not None
        and d.conclusion not in assumptions
    ):
        return RuleFailure(path, str(d.rule), "premise is not among the assumptions")
    for index, premise in enumerate(d.premises):
        failure = find_logical_failure(
            premise, path + (index,), assumptions=assumptions
        )
        if failure is not None:
            return failure
    return None


def check_logical(
    d: LogicalDerivation, assumptions: Collection[LogicalJudgment] | None = None
) -> bool:
    return find_logical_failure(d, assumptions=assumptions) is None


def open_premises(d: LogicalDerivation) -> list[LogicalJudgment]:
    if d.rule is LogicalRule.PREMISE:
        return [d.conclusion]
    return [j for premise in d.premises for j in open_premises(premise)]


def rules_used(d: LogicalDerivation) -> set[LogicalRule]:
    found = {d.rule}
    for premise in d.premises:
        found |= rules_used(premise)
    return found


# erasure


def erase(d: Derivation) -> LogicalDerivation:
    """Forget proof expressions and variable names, node by node"""
    if (failure := find_replay_failure(d)) is not None:
        raise DerivationError(failure)
    return _erase(d)


def _erase(d: Derivation) -> LogicalDerivation:
    concl = d.conclusion
    return LogicalDerivation(
        LogicalJudgment(concl.context.props(), concl.prop, concl.kind),
        LogicalRule(d.rule.value),
        tuple(_erase(p) for p in d.premises),
    )


# elaboration


def elaborate_j(d: LogicalDerivation) -> LogicalDerivation:
    """Rewrite j-rules and existential-implication rules away.

    The result uses only hyp, just, ->I, ->E, ExI, ExE, R, sub1, sub2 and the
    structural rules, and has the same conclusion.
    """
    premises = tuple(elaborate_j(p) for p in d.premises)
    concl = d.conclusion
    match d.rule:
        case LogicalRule.ARROW_IJ:
            return _arrow_ij(concl, *premises)
        case LogicalRule.ARROW_EJ:
            return _arrow_ej(concl, *premises)
        case LogicalRule.EXISTS_IJ:
            return _exists_ij(concl, *premises)
        case LogicalRule.EXISTS_EJ:
            return _exists_ej(concl, *premises)
        case LogicalRule.LOLLI_I | LogicalRule.LOLLI_IJ:
            return _lolli_i(concl, *premises)
        case LogicalRule.LOLLI_E | LogicalRule.LOLLI_EJ:
            return _lolli_e(concl, *premises)
    return LogicalDerivation(concl, d.rule, premises)


def _arrow_ij(concl: LogicalJudgment, body: LogicalDerivation) -> LogicalDerivation:
    hyps, prop = concl.hypotheses, concl.conclusion
    packed = node(
        LogicalRule.EXISTS_I, hyps + (prop.domain,), Exists(prop.codomain), TRUE, body
    )
    lolli = node(LogicalRule.ARROW_I, hyps, _exists_arrow(prop), TRUE, packed)
    return node(LogicalRule.R, hyps, prop, JUST, lolli)


def _arrow_ej(
    concl: LogicalJudgment, fun: LogicalDerivation, arg: LogicalDerivation
) -> LogicalDerivation:
    hyps, prop = concl.hypotheses, concl.conclusion
    implication = fun.conclusion.conclusion
    inner = hyps + (implication,)
    return node(
        LogicalRule.EXISTS_E,
        hyps,
        prop,
        JUST,
        node(LogicalRule.EXISTS_I, hyps, Exists(implication), TRUE, fun),
        node(
            LogicalRule.JUST,
            inner,
            prop,
            JUST,
            node(
                LogicalRule.ARROW_E,
                inner,
                prop,
                TRUE,
                node(LogicalRule.HYP, inner, implication, TRUE),
                node(LogicalRule.WEAKEN, inner, arg.conclusion.conclusion, TRUE, arg),
            ),
        ),
    )


def _exists_ij(concl: LogicalJudgment, body: LogicalDerivation) -> LogicalDerivation:
    hyps, prop = concl.hypotheses, concl.conclusion
    return node(
        LogicalRule.JUST,
        hyps,
        prop,
        JUST,
        node(LogicalRule.EXISTS_I, hyps, prop, TRUE, body),
    )


def _exists_ej(
    concl: LogicalJudgment, packed: LogicalDerivation, body: LogicalDerivation
) -> LogicalDerivation:
    hyps, prop = concl.hypotheses, concl.conclusion
    outer = packed.conclusion.conclusion  # Ex φ
    unpacked = outer.body
    return node(
        LogicalRule.EXISTS_E,
        hyps,
        prop,
        JUST,
        node(LogicalRule.EXISTS_I, hyps, Exists(outer), TRUE, packed),
        node(
            LogicalRule.EXISTS_E,
            hyps + (outer,),
            prop,
            JUST,
            node(LogicalRule.HYP, hyps + (outer,), outer, TRUE),
            node(
                LogicalRule.EXCHANGE,
                hyps + (outer, unpacked),
                prop,
                JUST,
                node(LogicalRule.WEAKEN, hyps + (unpacked, outer), prop, JUST, body),
            ),
        ),
    )


def _lolli_i(concl: LogicalJudgment, body: LogicalDerivation) -> LogicalDerivation:
    hyps, prop, kind = concl.hypotheses, concl.conclusion, concl.kind
    packed = LogicalJudgment(hyps + (prop.domain,), prop.codomain, kind)
    if kind is TRUE:
        inner = LogicalDerivation(packed, LogicalRule.EXISTS_I, (body,))
        return LogicalDerivation(concl, LogicalRule.ARROW_I, (inner,))
    return _arrow_ij(concl, _exists_ij(packed, body))


def _lolli_e(
    concl: LogicalJudgment, fun: LogicalDerivation, arg: LogicalDerivation
) -> LogicalDerivation:
    hyps, prop = concl.hypotheses, concl.conclusion
    kind = fun.conclusion.kind
    packed_judgment = LogicalJudgment(hyps, Exists(prop), kind)
    if kind is TRUE:
        packed = LogicalDerivation(packed_judgment, LogicalRule.ARROW_E, (fun, arg))
    else:
        packed = _arrow_ej(packed_judgment, fun, arg)
    unpack = node(
        LogicalRule.JUST,
        hyps + (prop,),
        prop,
        JUST,
        node(LogicalRule.HYP, hyps + (prop,), prop, TRUE),
    )
    if kind is TRUE:
        return LogicalDerivation(concl, LogicalRule.EXISTS_E, (packed, unpack))
    return _exists_ej(concl, packed, unpack)
