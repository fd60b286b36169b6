"""FastAPI application exposing the computation endpoints."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

import gnskit
from gnskit.core import GnsError
from gnskit.enumeration import LimitExceeded
from gnskit.service import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="gnskit",
        version=gnskit.__version__,
        description="Exact computation with generalized numerical semigroups",
    )

    @app.exception_handler(LimitExceeded)
    async def limit_handler(request: Request, exc: LimitExceeded):
        return JSONResponse(
            status_code=400,
            content=schemas.ErrorDoc(
                error=str(exc), kind=type(exc).__name__
            ).model_dump(),
        )

    @app.exception_handler(GnsError)
    async def gns_handler(request: Request, exc: GnsError):
        return JSONResponse(
            status_code=422,
            content=schemas.ErrorDoc(
                error=str(exc), kind=type(exc).__name__
            ).model_dump(),
        )

    @app.get("/version", response_model=schemas.ToolInfo)
    def version():
        return schemas.ToolInfo(version=gnskit.__version__)

    @app.post("/analyze", response_model=schemas.AnalyzeResponse)
    def analyze(req: schemas.AnalyzeRequest):
        return handlers.analyze(req)

    @app.post("/enumerate", response_model=schemas.EnumerateResponse)
    def enumerate_gns(req: schemas.EnumerateRequest):
        return handlers.enumerate_gns(req)

    @app.post("/construct", response_model=schemas.ConstructResponse)
    def construct(req: schemas.ConstructRequest):
        return handlers.construct(req)

    @app.post("/bounds/sandwich", response_model=schemas.SandwichResponse)
    def sandwich(req: schemas.SandwichRequest):
        return handlers.sandwich(req)

    @app.post("/bounds/constants", response_model=schemas.ConstantsResponse)
    def constants(req: schemas.ConstantsRequest):
        return handlers.constants(req)

    @app.post("/bounds/lpf", response_model=schemas.LpfResponse)
    def lpf(req: schemas.LpfRequest):
        return handlers.lpf(req)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def run_verify(req: schemas.VerifyRequest):
        return handlers.run_verify(req)

    return app


app = create_app()
