"""jex.routers.normalize"""

from fastapi import APIRouter, HTTPException

from jex.config import CONFIG
from jex.parser import ParseError, parse_expr
from jex.printer import Printer
from jex.runner import context_of, normalize_expression
from jex.schemas import NormalizeRequest, NormalizeResponse
from jex.syntax import ContextError

normalize_router = APIRouter(prefix="/normalize")


@normalize_router.post("")
def normalize(payload: NormalizeRequest) -> NormalizeResponse:
    """Normalize an expression and return the full trace"""
    try:
        ctx = context_of(payload.hypotheses)
        expression = parse_expr(payload.expression)
    except ParseError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    except ContextError as err:
        raise HTTPException(status_code=422, detail=err.detail) from err

    outcome = normalize_expression(
        ctx, expression, payload.fuel or CONFIG.fuel, Printer()
    )
    return {
        "status": outcome["status"],
        "normal_form": outcome.get("output"),
        "judgment": outcome.get("judgment"),
        "steps": outcome["steps"],
    }
