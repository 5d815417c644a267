"""jex.routers.derive"""

import logging

from fastapi import APIRouter, HTTPException

from jex.checker import DerivationError, TypeCheckError
from jex.derived import BUILDERS, BuilderError
from jex.parser import ParseError
from jex.printer import Printer
from jex.runner import context_of, parse_arguments, run_derive
from jex.schemas import DeriveRequest, DeriveResponse
from jex.syntax import ContextError

logger = logging.getLogger(__name__)

derive_router = APIRouter(prefix="/derive")


@derive_router.post("")
def derive(payload: DeriveRequest) -> DeriveResponse:
    """Run a named builder and return its witness and derivation"""
    if payload.builder not in BUILDERS:
        raise HTTPException(status_code=404, detail="unknown builder")
    try:
        ctx = context_of(payload.hypotheses)
        arguments = parse_arguments(payload.builder, payload.arguments)
    except ParseError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    except ContextError as err:
        raise HTTPException(status_code=422, detail=err.detail) from err

    try:
        result = run_derive(payload.builder, arguments, ctx)
    except (BuilderError, DerivationError, TypeCheckError) as err:
        logger.info("derive %s: %s", payload.builder, err.detail)
        raise HTTPException(status_code=422, detail=err.detail) from err

    printer = Printer()
    return {
        "builder": payload.builder,
        "expression": (
            None if result.expression is None else printer.expr(result.expression)
        ),
        "judgment": printer.judgment(result.derivation.conclusion),
        "derivation": printer.derivation(result.derivation),
        "open_premises": [printer.judgment(j) for j in result.open_premises],
    }
