"""jex.routers.check"""

import logging

from fastapi import APIRouter, HTTPException

from jex.config import CONFIG
from jex.parser import ParseError, parse
from jex.runner import SourceError, run_source
from jex.schemas import CheckReport, CheckRequest

logger = logging.getLogger(__name__)

check_router = APIRouter(prefix="/check")


@check_router.post("")
def check(payload: CheckRequest) -> CheckReport:
    """Run every declaration of a source text"""
    try:
        source = parse(payload.source)
    except ParseError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    try:
        report = run_source(source, fuel=CONFIG.fuel)
    except SourceError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    logger.info("check: %s over %d declarations", report.status, len(report.results))
    return report
