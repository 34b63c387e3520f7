"""
Plateau HTTP service.

``create_app`` wires routers, CORS, the access log and the error mapping;
``app`` is the instance uvicorn serves (``plateau serve`` or
``uvicorn plateau.main:app``).
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from plateau.api import analysis, health, tables
from plateau.config import configure_logging, get_settings
from plateau.exceptions import InvalidRequest, PlateauError, SpecParseError
from plateau.middleware import RequestTimingMiddleware

logger = logging.getLogger("plateau")


def _error(status_code: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": code, "detail": detail})


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Log the startup configuration and the shutdown."""
    settings = get_settings()
    logger.info(
        "%s v%s starting | env=%s | enumeration_budget=%d | max_field_size=%d",
        settings.app_name,
        settings.app_version,
        settings.environment,
        settings.enumeration_budget,
        settings.max_field_size,
    )
    yield
    logger.info("%s stopped", settings.app_name)


def register_exception_handlers(app: FastAPI) -> None:
    """Map every failure to ``{"error", "detail"}`` with the family's status."""

    @app.exception_handler(PlateauError)
    async def plateau_error(request: Request, exc: PlateauError) -> JSONResponse:
        logger.warning("Request rejected | %s %s | %s | %s", request.method, request.url.path, exc.code, exc)
        return _error(exc.status_code, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def malformed_payload(request: Request, exc: RequestValidationError) -> JSONResponse:
        errors = exc.errors()
        if errors and all(e["loc"][0] == "body" for e in errors):
            err: PlateauError = SpecParseError(f"invalid function spec: {errors}")
        else:
            err = InvalidRequest(f"invalid request parameters: {errors}")
        logger.warning("Malformed payload | %s %s | errors=%d", request.method, request.url.path, len(errors))
        return _error(err.status_code, err.code, str(err))

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception) -> JSONResponse:
        logger.exception("Unhandled error | %s %s", request.method, request.url.path)
        return _error(500, "internal_server_error", "An unexpected error occurred.")


def create_app() -> FastAPI:
    """Build and configure the FastAPI application."""
    configure_logging()
    settings = get_settings()

    app = FastAPI(
        title=settings.app_name,
        version=settings.app_version,
        description="Walsh spectra, plateau classification and three-weight codes of p-ary functions.",
        lifespan=lifespan,
    )
    register_exception_handlers(app)

    # last added runs first
    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.allowed_origins,
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    app.add_middleware(RequestTimingMiddleware)

    for module in (health, analysis, tables):
        app.include_router(module.router)

    return app


app = create_app()
