"""jex.app"""

import importlib.metadata

from fastapi import FastAPI
from fastapi.responses import RedirectResponse

from jex import routers
from jex.config import CONFIG
from jex.derived import BUILDERS
from jex.schemas import BuilderListResponse

app = FastAPI(
    title=CONFIG.app_name,
    version=importlib.metadata.version("jex"),
)

app.include_router(routers.check_router)
app.include_router(routers.normalize_router)
app.include_router(routers.translate_router)
app.include_router(routers.derive_router)


@app.get("/", include_in_schema=False)
async def docs_redirect():
    """Root endpoint"""
    return RedirectResponse(url="/docs")


@app.get("/builders")
async def builders() -> BuilderListResponse:
    """Names accepted by POST /derive"""
    return list(BUILDERS)
