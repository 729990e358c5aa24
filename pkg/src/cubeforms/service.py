"""HTTP service exposing the verification suites and the integrators.

The CLI talks to this app in process through an ASGI transport, and the
same app serves standalone under uvicorn. Configuration problems (bad
expressions, dimension mismatches, cost caps) surface as HTTP 400 with a
detail string; malformed request bodies come back as FastAPI's usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .models import (CheckParityRequest, DemoRequest, HealthResponse,
                     IntegrateRequest, IntegrateResponse, Report,
                     VerifyRequest)
from .suites import run_check_parity, run_demo, run_integrate, run_suite


def create_app() -> FastAPI:
    app = FastAPI(title="cubeforms", version=__version__)

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/verify", response_model=Report)
    def verify(req: VerifyRequest) -> Report:
        return run_suite(req.suite, order=req.order, max_n=req.max_n,
                         seed=req.seed)

    @app.post("/demo", response_model=Report)
    def demo(req: DemoRequest) -> Report:
        return run_demo(req.name, order=req.order, seed=req.seed)

    @app.post("/integrate", response_model=IntegrateResponse)
    def integrate(req: IntegrateRequest) -> IntegrateResponse:
        return run_integrate(req)

    @app.post("/check-parity", response_model=Report)
    def check_parity(req: CheckParityRequest) -> Report:
        return run_check_parity(req.max_n)

    return app


app = create_app()
