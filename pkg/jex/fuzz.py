"""jex.fuzz

Property suites over generated samples. Case `i` of a run with seed `S` uses
seed `S + i`, once per selected judgment kind, so every case can be rerun on
its own and cases can be spread over worker processes. Results are merged in
seed order and the report holds nothing that depends on timing.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from jex.checker import TypeCheckError, check_against, infer
from jex.generator import (
    GenConfig,
    Sample,
    props_at,
    sample_at,
    substitution_case_at,
)
from jex.lax import from_lax, to_lax
from jex.logic import (
    J_RULES,
    LOLLI_RULES,
    elaborate_j,
    erase,
    find_logical_failure,
    rules_used,
)
from jex.parser import ParseError, parse_expr, parse_lax, parse_prop
from jex.printer import show
from jex.reduction import (
    FuelExhausted,
    canonical_for,
    normalize,
    replay_step,
    step,
)
from jex.schemas import CounterexampleReport, FuzzReport, StatusEnum
from jex.substitution import SubstitutionError, subst_expr, subst_term
from jex.syntax import (
    ContextError,
    Exists,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    children,
    is_term,
)

logger = logging.getLogger(__name__)

REL = JudgmentKind.RELEVANT
IRR = JudgmentKind.IRRELEVANT


class Failure(Exception):
    """A property does not hold for a sample"""

    def __init__(self, detail: str):
        self.detail = detail


@dataclass(frozen=True)
class CaseResult:
    seed: int
    kind: JudgmentKind | None
    passed: bool
    fuel_exhausted: bool = False
    message: str = ""
    program: str = ""


# properties over samples; each raises Failure or FuelExhausted


def _typed(sample: Sample, expression, what: str):
    try:
        check_against(sample.context, expression, sample.kind, sample.proposition)
    except TypeCheckError as err:
        raise Failure(f"{what}: {err.detail}") from err


def subject_reduction(sample: Sample, fuel: int):
    """every step keeps the type; stepping is deterministic and replayable"""
    _typed(sample, sample.expression, "generated sample is ill-typed")
    current = sample.expression
    for _ in range(fuel):
        if (next_step := step(current)) is None:
            return
        if step(current) != next_step:
            raise Failure("step is not deterministic")
        if replay_step(current, next_step.path) != next_step.expression:
            raise Failure(f"step {'/'.join(next_step.path)} does not replay")
        _typed(
            sample, next_step.expression, f"after {next_step.redex_kind} the type"
        )
        current = next_step.expression
    raise FuelExhausted(())


def normalization(sample: Sample, fuel: int):
    """normal form within fuel; closed samples end in a canonical form"""
    result = normalize(sample.expression, fuel)
    _typed(sample, result.expression, "normal form")
    if not len(sample.context) and not canonical_for(
        result.expression, sample.proposition
    ):
        raise Failure(f"closed normal form {show(result.expression)} is not canonical")


def roundtrip(sample: Sample, _fuel: int):
    """printing then parsing gives back an alpha-equivalent value"""
    for resugar in (False, True):
        text = show(sample.expression, resugar=resugar)
        try:
            parsed = parse_expr(text)
        except ParseError as err:
            raise Failure(f"printed expression does not parse: {err}") from err
        if parsed != sample.expression:
            raise Failure(f"{text!r} parses to {show(parsed)!r}")
        prop_text = show(sample.proposition, resugar=resugar)
        if parse_prop(prop_text) != sample.proposition:
            raise Failure(f"proposition {prop_text!r} does not round trip")


def erasure(sample: Sample, _fuel: int):
    """erased inference derivations pass the logical checker"""
    _, derivation = infer(sample.context, sample.expression, sample.kind)
    if (failure := find_logical_failure(erase(derivation))) is not None:
        raise Failure(f"erased derivation fails at {failure}")


def elaboration(sample: Sample, _fuel: int):
    """elaborated derivations check, keep their conclusion and lose j-rules"""
    _, derivation = infer(sample.context, sample.expression, sample.kind)
    erased = erase(derivation)
    elaborated = elaborate_j(erased)
    if (failure := find_logical_failure(elaborated)) is not None:
        raise Failure(f"elaborated derivation fails at {failure}")
    if elaborated.conclusion != erased.conclusion:
        raise Failure("elaboration changed the conclusion")
    if leftover := rules_used(elaborated) & (J_RULES | LOLLI_RULES):
        raise Failure(f"elaboration left {sorted(leftover)}")


SAMPLE_SUITES = {
    "subject-reduction": subject_reduction,
    "normalization": normalization,
    "roundtrip": roundtrip,
    "erasure": erasure,
    "elaboration": elaboration,
}
SUITES = tuple(SAMPLE_SUITES) + ("substitution", "lax")


# shrinking


def _child_samples(sample: Sample):
    """subexpressions as samples of their own, typed in their scope"""
    e, ctx = sample.expression, sample.context
    scoped = []
    match e:
        case Lam() | LamJ():
            scoped.append((ctx.extend(e.var, e.annot), e.body))
        case LetBox() | LetBoxJ():
            scoped.append((ctx, e.scrutinee))
            scrutinee_kind = REL if isinstance(e, LetBox) else IRR
            try:
                packed, _ = infer(ctx, e.scrutinee, scrutinee_kind)
            except TypeCheckError:
                packed = None
            if isinstance(packed, Exists):
                scoped.append((ctx.extend(e.var, packed.body), e.body))
        case _:
            scoped.extend((ctx, child) for child in children(e))
    for child_ctx, child in scoped:
        for kind in (REL, IRR) if is_term(child) else (IRR,):
            try:
                prop, _ = infer(child_ctx, child, kind)
            except TypeCheckError:
                continue
            yield Sample(child_ctx, child, prop, kind)


def _fails(prop_fn, sample: Sample, fuel: int) -> bool:
    try:
        prop_fn(sample, fuel)
    except Failure:
        return True
    except (FuelExhausted, TypeCheckError, ContextError):
        return False
    return False


def shrink(prop_fn, sample: Sample, fuel: int) -> Sample:
    """Greedy descent into failing subexpressions"""
    current = sample
    while True:
        try:
            smaller = next(
                (c for c in _child_samples(current) if _fails(prop_fn, c, fuel)), None
            )
        except ContextError:
            smaller = None
        if smaller is None:
            return current
        current = smaller


def as_program(sample: Sample) -> str:
    lines = [f"hyp {name} : {show(prop)}" for name, prop in sample.context]
    lines.append(
        f"check {show(sample.expression)}"
        f" {sample.kind.separator} {show(sample.proposition)}"
    )
    return "\n".join(lines)


# cases


def _sample_case(suite, cfg, seed, kind, fuel) -> CaseResult:
    prop_fn = SAMPLE_SUITES[suite]
    sample = sample_at(cfg, seed, kind)
    try:
        prop_fn(sample, fuel)
    except FuelExhausted:
        return CaseResult(
            seed, kind, False, True, "no normal form within fuel", as_program(sample)
        )
    except Failure as err:
        smallest = shrink(prop_fn, sample, fuel)
        message = err.detail
        if smallest is not sample:
            try:
                prop_fn(smallest, fuel)
            except Failure as inner:
                message = inner.detail
        return CaseResult(seed, kind, False, False, message, as_program(smallest))
    return CaseResult(seed, kind, True)


def _substitution_case(cfg, seed, kind, _fuel) -> CaseResult:
    mode = {None: "expression", REL: "relevant", IRR: "irrelevant"}[kind]
    case = substitution_case_at(cfg, seed, mode)
    try:
        if mode == "expression":
            result = subst_expr(case.substitutee, case.var, case.target)
        else:
            result = subst_term(case.substitutee, case.var, case.target)
        result_kind = REL if mode == "relevant" else IRR
        check_against(case.context, result, result_kind, case.result)
    except (SubstitutionError, TypeCheckError) as err:
        program = "\n".join(
            [f"hyp {name} : {show(prop)}" for name, prop in case.context]
            + [
                f"def {case.var} = {show(case.substitutee)}",
                f"check {show(case.target)} "
                f"{(REL if mode == 'relevant' else IRR).separator} "
                f"{show(case.result)}",
            ]
        )
        return CaseResult(seed, kind, False, False, f"{mode}: {err.detail}", program)
    return CaseResult(seed, kind, True)


def _lax_case(cfg, seed, _kind, _fuel) -> CaseResult:
    (prop,) = props_at(cfg, seed, 1)
    lax = to_lax(prop)
    checks = [
        (from_lax(lax) == prop, "from_lax(to_lax(A)) differs from A"),
        (to_lax(from_lax(lax)) == lax, "to_lax(from_lax(L)) differs from L"),
        (parse_lax(show(lax)) == lax, "lax proposition does not round trip"),
    ]
    for holds, message in checks:
        if not holds:
            program = f"translate {show(prop)}"
            return CaseResult(seed, None, False, False, message, program)
    return CaseResult(seed, None, True)


def run_case(suite: str, cfg: GenConfig, seed: int, kind, fuel: int) -> CaseResult:
    """One self-contained case; top level so worker processes can pickle it"""
    if suite == "substitution":
        return _substitution_case(cfg, seed, kind, fuel)
    if suite == "lax":
        return _lax_case(cfg, seed, kind, fuel)
    return _sample_case(suite, cfg, seed, kind, fuel)


def _run_packed(args) -> CaseResult:
    return run_case(*args)


def kinds_for(suite: str, kind: str) -> list:
    if suite == "lax":
        return [None]
    selected = {"both": [REL, IRR], "relevant": [REL], "irrelevant": [IRR]}[kind]
    if suite == "substitution" and kind == "both":
        return selected + [None]
    return selected


def run_suite(
    suite: str,
    seed: int,
    count: int,
    kind: str = "both",
    fuel: int = 100000,
    workers: int = 1,
    cfg: GenConfig | None = None,
) -> FuzzReport:
    """Run `count` seeds of `suite` and fold the results into a report"""
    if suite not in SUITES:
        raise ValueError(f"unknown suite '{suite}'")
    cfg = cfg or GenConfig(seed=seed)
    cases = [
        (suite, cfg, case_seed, case_kind, fuel)
        for case_seed in range(seed, seed + count)
        for case_kind in kinds_for(suite, kind)
    ]
    logger.info("fuzz %s: %d cases on %d worker(s)", suite, len(cases), workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_packed, cases, chunksize=64))
    else:
        results = [_run_packed(case) for case in cases]

    failures = [r for r in results if not r.passed and not r.fuel_exhausted]
    exhausted = [r for r in results if r.fuel_exhausted]
    first = (failures or exhausted or [None])[0]
    if failures:
        status = StatusEnum.COUNTEREXAMPLE
    elif exhausted:
        status = StatusEnum.FUEL
    else:
        status = StatusEnum.OK
    counterexample = None
    if first is not None:
        logger.warning("fuzz %s: seed %d fails: %s", suite, first.seed, first.message)
        counterexample = CounterexampleReport(
            seed=first.seed,
            kind=first.kind.value if first.kind else None,
            message=first.message,
            program=first.program,
        )
    return FuzzReport(
        suite=suite,
        seed=seed,
        count=count,
        status=status,
        cases=len(results),
        passed=sum(r.passed for r in results),
        failed=len(failures),
        fuel_exhausted=len(exhausted),
        counterexample=counterexample,
    )


def render_report(report: FuzzReport) -> str:
    lines = [
        f"suite {report.suite}: seeds {report.seed}..{report.seed + report.count - 1}",
        f"{report.cases} cases, {report.passed} passed, {report.failed} failed,"
        f" {report.fuel_exhausted} out of fuel",
    ]
    if (example := report.counterexample) is not None:
        kind = f" ({example.kind})" if example.kind else ""
        lines.append(f"counterexample at seed {example.seed}{kind}: {example.message}")
        lines.append(example.program)
    lines.append(f"status: {report.status}")
    return "\n".join(lines)
