"""FastAPI application exposing the analysis handlers over HTTP.

Parse errors map to 400, violated mathematical preconditions (triangles,
loops, caps, bad separation pairs) to 422; verdicts are plain 200
responses.  Run with ``edgedeform serve`` or any ASGI server.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import EdgeDeformError, ParseError
from . import handlers
from .models import (
    AnalyzeRequest,
    CensusRequest,
    CensusResponse,
    GradedReportView,
    OracleRequest,
    PolarizeResponse,
    RegularityRequest,
    RegularityResponse,
    RigidResponse,
    SeparateRequest,
    SeparateResponse,
    SeparationsResponse,
    SimpleVerdictResponse,
    T1Response,
    T2Response,
)


def create_app():
    app = FastAPI(
        title="edgedeform",
        description="Cotangent cohomology data for edge ideals of finite graphs",
        version="0.1.0",
    )

    @app.exception_handler(ParseError)
    async def _parse_error(_request: Request, exc: ParseError):
        return JSONResponse(status_code=400,
                            content={"error": str(exc), "kind": type(exc).__name__})

    @app.exception_handler(EdgeDeformError)
    async def _domain_error(_request: Request, exc: EdgeDeformError):
        return JSONResponse(status_code=422,
                            content={"error": str(exc), "kind": type(exc).__name__})

    @app.post("/t1", response_model=T1Response)
    def t1(req: AnalyzeRequest):
        return handlers.t1_handler(req)

    @app.post("/rigid", response_model=RigidResponse)
    def rigid(req: AnalyzeRequest):
        return handlers.rigid_handler(req)

    @app.post("/rigid-indep", response_model=RigidResponse)
    def rigid_indep(req: AnalyzeRequest):
        return handlers.rigid_indep_handler(req)

    @app.post("/rigid-no456", response_model=RigidResponse)
    def rigid_no456(req: AnalyzeRequest):
        return handlers.rigid_no456_handler(req)

    @app.post("/separations", response_model=SeparationsResponse)
    def separations(req: AnalyzeRequest):
        return handlers.separations_handler(req)

    @app.post("/separate", response_model=SeparateResponse)
    def separate(req: SeparateRequest):
        return handlers.separate_handler(req)

    @app.post("/polarize", response_model=PolarizeResponse)
    def polarize(req: AnalyzeRequest):
        return handlers.polarize_handler(req)

    @app.post("/inseparable", response_model=SimpleVerdictResponse)
    def inseparable(req: AnalyzeRequest):
        return handlers.inseparable_handler(req)

    @app.post("/t2", response_model=T2Response)
    def t2(req: AnalyzeRequest):
        return handlers.t2_handler(req)

    @app.post("/t2-sufficient", response_model=SimpleVerdictResponse)
    def t2_sufficient(req: AnalyzeRequest):
        return handlers.t2_sufficient_handler(req)

    @app.post("/oracle/t1", response_model=GradedReportView)
    def oracle_t1(req: OracleRequest):
        return handlers.oracle_t1_handler(req)

    @app.post("/oracle/t2", response_model=GradedReportView)
    def oracle_t2(req: OracleRequest):
        return handlers.oracle_t2_handler(req)

    @app.post("/regularity", response_model=RegularityResponse)
    def regularity(req: RegularityRequest):
        return handlers.regularity_handler(req)

    @app.post("/census", response_model=CensusResponse)
    def census(req: CensusRequest):
        return handlers.census_handler(req)

    return app


app = create_app()
