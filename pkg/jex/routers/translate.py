"""jex.routers.translate"""

from fastapi import APIRouter, HTTPException

from jex.lax import from_lax, to_lax
from jex.parser import ParseError, parse_lax, parse_prop
from jex.printer import show
from jex.schemas import DirectionEnum, TranslateRequest, TranslateResponse

translate_router = APIRouter(prefix="/translate")


@translate_router.post("")
def translate(payload: TranslateRequest) -> TranslateResponse:
    """Translate a proposition to or from lax logic"""
    try:
        if payload.direction == DirectionEnum.TO_LAX:
            result = to_lax(parse_prop(payload.proposition))
        else:
            result = from_lax(parse_lax(payload.proposition))
    except ParseError as err:
        raise HTTPException(status_code=400, detail=str(err)) from err
    return {"proposition": show(result)}
