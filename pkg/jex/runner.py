"""jex.runner

Runs the declarations of a source file in order. Definitions are inlined
into every later declaration, `hyp` declarations build the ambient context.
"""

import logging
from dataclasses import dataclass

from jex.checker import (
    Derivation,
    DerivationError,
    TypeCheckError,
    check_against,
    find_replay_failure,
    infer,
    open_premises,
)
from jex.derived import (
    EXPR_BUILDERS,
    BuilderError,
    build_lax,
    build_logical,
    is_lax_builder,
    trunc_elim,
    trunc_intro,
)
from jex.lax import to_lax
from jex.logic import LogicalDerivation, find_logical_failure
from jex.logic import open_premises as open_logical_premises
from jex.parser import (
    Check,
    Def,
    Derive,
    DerivationDecl,
    Hyp,
    Normalize,
    Proof,
    SourceFile,
    Span,
    Trace,
    Translate,
    parse_expr,
    parse_hypothesis,
    parse_prop,
)
from jex.printer import Printer
from jex.reduction import FuelExhausted, Step, normalize
from jex.schemas import CheckReport, DeclarationReport, StatusEnum, StepReport
from jex.substitution import replace
from jex.syntax import Context, ContextError, Expression, JudgmentKind, free_vars

logger = logging.getLogger(__name__)


class SourceError(Exception):
    """Use of a definition before it is made, or a name bound twice"""

    def __init__(self, detail: str, span: Span | None = None):
        self.detail = detail
        self.span = span

    def __str__(self):
        if self.span is None:
            return self.detail
        return f"{self.span.line}:{self.span.column}: {self.detail}"


@dataclass(frozen=True)
class DeriveResult:
    expression: Expression | None
    derivation: Derivation | LogicalDerivation
    open_premises: tuple


def context_of(hypotheses: list[str]) -> Context:
    """Context from `x:A` strings, in order; raises ContextError on duplicates"""
    ctx = Context()
    for text in hypotheses:
        ctx = ctx.extend(*parse_hypothesis(text))
    return ctx


def parse_arguments(builder: str, arguments: list[str]) -> tuple:
    """an expression for the truncation builders, propositions otherwise"""
    parse_one = parse_expr if builder in EXPR_BUILDERS else parse_prop
    return tuple(parse_one(text) for text in arguments)


def run_derive(builder: str, arguments: tuple, ctx: Context) -> DeriveResult:
    """Run a named builder on parsed arguments.

    `trunc-intro` and `trunc-elim` take one expression typed in `ctx`, the
    lax builders and the proof-tree builders take propositions.
    """
    if builder in EXPR_BUILDERS:
        if len(arguments) != 1:
            raise BuilderError(f"{builder} takes one expression")
        build = trunc_intro if builder == "trunc-intro" else trunc_elim
        expression, derivation = build(ctx, arguments[0])
        return DeriveResult(expression, derivation, tuple(open_premises(derivation)))
    if is_lax_builder(builder):
        expression, derivation = build_lax(builder, list(arguments))
        return DeriveResult(expression, derivation, ())
    derivation = build_logical(builder, list(arguments))
    if (failure := find_logical_failure(derivation)) is not None:
        raise DerivationError(failure)
    return DeriveResult(None, derivation, tuple(open_logical_premises(derivation)))


def step_reports(trace: tuple[Step, ...], printer: Printer) -> list[StepReport]:
    return [
        StepReport(
            kind=str(s.kind),
            path=[str(tag) for tag in s.path],
            expression=printer.expr(s.expression),
        )
        for s in trace
    ]


def normalize_expression(
    ctx: Context, expression: Expression, fuel: int, printer: Printer
) -> dict:
    """Normal form, its judgment in `ctx` when it has one, and the trace"""
    try:
        result = normalize(expression, fuel)
    except FuelExhausted as err:
        return {
            "status": StatusEnum.FUEL,
            "message": err.detail,
            "steps": step_reports(err.trace, printer),
        }
    judgment = None
    for kind in JudgmentKind:
        try:
            _, derivation = infer(ctx, result.expression, kind)
        except TypeCheckError:
            continue
        judgment = printer.judgment(derivation.conclusion)
        break
    return {
        "status": StatusEnum.OK,
        "output": printer.expr(result.expression),
        "judgment": judgment,
        "steps": step_reports(result.trace, printer),
    }


class Runner:
    """State of one run over a source file"""

    def __init__(self, printer: Printer | None = None, fuel: int = 100000):
        self.printer = printer or Printer()
        self.fuel = fuel
        self.context = Context()
        self.definitions: dict[str, Expression] = {}
        self.pending: set[str] = set()

    def run(self, source: SourceFile) -> CheckReport:
        self.pending = {d.name for d in source.declarations if isinstance(d, Def)}
        results = [self.run_declaration(d) for d in source.declarations]
        statuses = {r.status for r in results}
        if StatusEnum.FUEL.value in statuses:
            status = StatusEnum.FUEL
        elif StatusEnum.FAIL.value in statuses:
            status = StatusEnum.FAIL
        else:
            status = StatusEnum.OK
        return CheckReport(status=status, results=results)

    # scoping

    def _inline(self, e: Expression, span: Span) -> Expression:
        names = free_vars(e)
        if early := sorted(names & self.pending):
            raise SourceError(f"'{early[0]}' is used before its definition", span)
        for name in names & self.definitions.keys():
            e = replace(e, name, self.definitions[name])
        return e

    def _bind(self, name: str, span: Span):
        if name in self.definitions or name in self.context.names():
            raise SourceError(f"'{name}' is already bound", span)

    # declarations

    def run_declaration(self, decl) -> DeclarationReport:
        keyword = {
            Def: "def",
            Hyp: "hyp",
            Check: "check",
            Normalize: "normalize",
            Trace: "trace",
            Translate: "translate",
            Derive: "derive",
            Proof: "proof",
            DerivationDecl: "derivation",
        }[type(decl)]
        report = {
            "line": decl.span.line,
            "column": decl.span.column,
            "declaration": keyword,
        }
        logger.debug("%d:%d: %s", decl.span.line, decl.span.column, keyword)
        try:
            return DeclarationReport(**report, **self._run(decl))
        except (TypeCheckError, BuilderError, DerivationError) as err:
            return DeclarationReport(
                **report, status=StatusEnum.FAIL, message=err.detail
            )

    # pylint: disable=too-many-return-statements
    def _run(self, decl) -> dict:
        show = self.printer.show
        match decl:
            case Def(name, expression, span):
                self._bind(name, span)
                self.pending.discard(name)
                self.definitions[name] = self._inline(expression, span)
                return {"status": StatusEnum.OK, "output": name}

            case Hyp(name, prop, span):
                self._bind(name, span)
                try:
                    self.context = self.context.extend(name, prop)
                except ContextError as err:
                    raise SourceError(err.detail, span) from err
                return {"status": StatusEnum.OK, "output": f"{name} : {show(prop)}"}

            case Check(expression, kind, prop, span):
                expression = self._inline(expression, span)
                derivation = check_against(self.context, expression, kind, prop)
                return {
                    "status": StatusEnum.OK,
                    "judgment": show(derivation.conclusion),
                }

            case Normalize(expression, span) | Trace(expression, span):
                expression = self._inline(expression, span)
                return normalize_expression(
                    self.context, expression, self.fuel, self.printer
                )

            case Translate(prop, _):
                return {"status": StatusEnum.OK, "output": show(to_lax(prop))}

            case Derive(builder, arguments, span):
                if builder in EXPR_BUILDERS:
                    arguments = tuple(self._inline(a, span) for a in arguments)
                result = run_derive(builder, arguments, self.context)
                output = show(result.derivation)
                if result.expression is not None:
                    output = f"{show(result.expression)}\n{output}"
                return {
                    "status": StatusEnum.OK,
                    "judgment": show(result.derivation.conclusion),
                    "output": output,
                    "open_premises": [show(j) for j in result.open_premises],
                }

            case Proof(derivation, assumptions, _):
                failure = find_logical_failure(derivation, assumptions=assumptions)
                if failure is not None:
                    return {"status": StatusEnum.FAIL, "message": str(failure)}
                return self._closed(derivation, open_logical_premises(derivation))

            case DerivationDecl(derivation, assumptions, _):
                failure = find_replay_failure(derivation, assumptions=assumptions)
                if failure is not None:
                    return {"status": StatusEnum.FAIL, "message": str(failure)}
                return self._closed(derivation, open_premises(derivation))
        raise TypeError(f"not a declaration: {decl!r}")

    def _closed(self, derivation, opened: list) -> dict:
        return {
            "status": StatusEnum.OK,
            "judgment": self.printer.show(derivation.conclusion),
            "output": f"{len(opened)} open premise(s)",
            "open_premises": [self.printer.show(j) for j in opened],
        }


def run_source(
    source: SourceFile, printer: Printer | None = None, fuel: int = 100000
) -> CheckReport:
    return Runner(printer, fuel).run(source)


def render(report: CheckReport, show_steps: bool = False) -> str:
    """Plain text report, one block per declaration"""
    lines = []
    for result in report.results:
        summary = result.judgment or result.message or ""
        if result.status == StatusEnum.OK.value and result.output and not summary:
            summary = result.output.splitlines()[0]
        lines.append(
            f"{result.line}:{result.column}: {result.status}:"
            f" {result.declaration} {summary}".rstrip()
        )
        if result.declaration == "normalize" and result.output:
            lines.append(f"  = {result.output}")
        if result.declaration == "derive" and result.output:
            lines.extend(f"  {line}" for line in result.output.splitlines())
        if result.open_premises is not None:
            lines.append(f"  {len(result.open_premises)} open premise(s)")
            lines.extend(f"    {judgment}" for judgment in result.open_premises)
        if result.steps and (show_steps or result.declaration == "trace"):
            for index, step in enumerate(result.steps, start=1):
                lines.append(f"  {index}. {'/'.join(step.path)}: {step.expression}")
    return "\n".join(lines)
