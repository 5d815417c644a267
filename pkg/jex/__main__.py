"""jex command line"""

import argparse
import logging
import sys

from jex.checker import DerivationError, TypeCheckError
from jex.config import CONFIG
from jex.derived import BUILDERS, BuilderError
from jex.fuzz import SUITES, render_report, run_suite
from jex.lax import from_lax, to_lax
from jex.parser import ParseError, parse, parse_expr, parse_lax, parse_prop
from jex.printer import Printer
from jex.runner import (
    SourceError,
    context_of,
    normalize_expression,
    parse_arguments,
    render,
    run_derive,
    run_source,
)
from jex.schemas import (
    CheckReport,
    DeriveResponse,
    NormalizeResponse,
    StatusEnum,
    TranslateResponse,
)
from jex.syntax import ContextError

logger = logging.getLogger("jex")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SYNTAX = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_FUEL = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as source:
        return source.read()


def _exit_code(status: str) -> int:
    return {
        StatusEnum.OK.value: EXIT_OK,
        StatusEnum.FAIL.value: EXIT_FAIL,
        StatusEnum.ERROR.value: EXIT_SYNTAX,
        StatusEnum.COUNTEREXAMPLE.value: EXIT_COUNTEREXAMPLE,
        StatusEnum.FUEL.value: EXIT_FUEL,
    }[status]


# subcommands


def _check(args, printer: Printer) -> int:
    report = run_source(parse(_read(args.file)), printer, args.fuel)
    if args.command == "normalize":
        report = CheckReport(
            status=report.status,
            results=[
                r for r in report.results if r.declaration in ("normalize", "trace")
            ],
        )
    if args.json:
        print(report.model_dump_json())
    else:
        print(render(report, show_steps=args.steps))
    return _exit_code(report.status)


def _trace(args, printer: Printer) -> int:
    outcome = normalize_expression(
        context_of(args.hyp), parse_expr(args.expr), args.fuel, printer
    )
    response = NormalizeResponse(
        status=outcome["status"],
        normal_form=outcome.get("output"),
        judgment=outcome.get("judgment"),
        steps=outcome["steps"],
    )
    if args.json:
        print(response.model_dump_json())
    else:
        for index, step in enumerate(response.steps, start=1):
            print(f"{index}. {'/'.join(step.path)}: {step.expression}")
        if response.status == StatusEnum.FUEL.value:
            print(outcome["message"])
        else:
            print(f"= {response.normal_form}")
    return _exit_code(response.status)


def _translate(args, printer: Printer) -> int:
    if args.to_lax:
        result = printer.lax(to_lax(parse_prop(args.prop)))
    else:
        result = printer.prop(from_lax(parse_lax(args.prop)))
    if args.json:
        print(TranslateResponse(proposition=result).model_dump_json())
    else:
        print(result)
    return EXIT_OK


def _derive(args, printer: Printer) -> int:
    result = run_derive(
        args.builder, parse_arguments(args.builder, args.args), context_of(args.hyp)
    )
    expression = None
    if result.expression is not None:
        expression = printer.expr(result.expression)
    response = DeriveResponse(
        builder=args.builder,
        expression=expression,
        judgment=printer.judgment(result.derivation.conclusion),
        derivation=printer.derivation(result.derivation),
        open_premises=[printer.judgment(j) for j in result.open_premises],
    )
    if args.json:
        print(response.model_dump_json())
        return EXIT_OK
    if response.expression is not None:
        print(response.expression)
    print(response.derivation)
    return EXIT_OK


def _fuzz(args, _printer: Printer) -> int:
    report = run_suite(
        args.suite,
        args.seed,
        args.count,
        kind=args.kind,
        fuel=args.fuel,
        workers=args.workers,
    )
    print(report.model_dump_json() if args.json else render_report(report))
    return _exit_code(report.status)


def _serve(_args, _printer: Printer) -> int:
    # pylint: disable=import-outside-toplevel
    import uvicorn
    from uvicorn.config import LOGGING_CONFIG

    LOGGING_CONFIG["formatters"]["default"][
        "fmt"
    ] = "%(asctime)s %(levelprefix)s %(message)s"

    LOGGING_CONFIG["formatters"]["access"]["fmt"] = (
        "%(asctime)s %(levelprefix)s %(client_addr)s -"
        ' "%(request_line)s" %(status_code)s'
    )

    uvicorn.run(
        "jex:app",
        host=CONFIG.app_host,
        port=CONFIG.app_port,
        log_level=CONFIG.log_level,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """argument parser for every subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--unicode", action="store_true", help="unicode symbols")
    common.add_argument("--resugar", action="store_true", help="print A -o B")

    fuel = argparse.ArgumentParser(add_help=False)
    fuel.add_argument("--fuel", type=int, default=CONFIG.fuel)

    hyps = argparse.ArgumentParser(add_help=False)
    hyps.add_argument(
        "--hyp", action="append", default=[], metavar="x:A", help="hypothesis"
    )

    parser = argparse.ArgumentParser(prog="jex")
    commands = parser.add_subparsers(dest="command", required=True)

    for name in ("check", "normalize"):
        command = commands.add_parser(name, parents=[common, fuel])
        command.add_argument("file", help="source file, - for stdin")
        command.add_argument("--steps", action="store_true", help="print traces")
        command.set_defaults(run=_check)

    command = commands.add_parser("trace", parents=[common, fuel, hyps])
    command.add_argument("expr")
    command.set_defaults(run=_trace)

    command = commands.add_parser("translate", parents=[common])
    direction = command.add_mutually_exclusive_group(required=True)
    direction.add_argument("--to-lax", action="store_true")
    direction.add_argument("--from-lax", action="store_true")
    command.add_argument("prop")
    command.set_defaults(run=_translate)

    command = commands.add_parser("derive", parents=[common, hyps])
    command.add_argument("builder", choices=BUILDERS)
    command.add_argument("args", nargs="+")
    command.set_defaults(run=_derive)

    command = commands.add_parser("fuzz", parents=[common, fuel])
    command.add_argument("--seed", type=int, default=0)
    command.add_argument("--count", type=int, default=100)
    command.add_argument("--suite", choices=SUITES, default="subject-reduction")
    command.add_argument(
        "--kind", choices=("both", "relevant", "irrelevant"), default="both"
    )
    command.add_argument("--workers", type=int, default=CONFIG.workers)
    command.set_defaults(run=_fuzz)

    command = commands.add_parser("serve")
    command.set_defaults(run=_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    """run a jex subcommand and return its exit code"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=CONFIG.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    logger.debug("jex %s", args.command)
    printer = Printer(
        unicode=getattr(args, "unicode", False),
        resugar=getattr(args, "resugar", False),
    )
    try:
        return args.run(args, printer)
    except ParseError as err:
        where = f"{args.file}:" if hasattr(args, "file") else ""
        print(f"{where}{err}", file=sys.stderr)
        return EXIT_SYNTAX
    except SourceError as err:
        print(f"{args.file}:{err}", file=sys.stderr)
        return EXIT_SYNTAX
    except (ContextError, BuilderError) as err:
        print(f"error: {err.detail}", file=sys.stderr)
        return EXIT_SYNTAX
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SYNTAX
    except (TypeCheckError, DerivationError) as err:
        print(f"fail: {err.detail}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
