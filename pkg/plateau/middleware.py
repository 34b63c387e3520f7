"""
Access log for the HTTP service.

One record per request on ``plateau.access``; the measured latency is also
returned to the client as ``X-Elapsed-Ms``. Requests carrying a function
spec are CPU bound, so slow ones are promoted to WARNING.
"""

import logging
import time

from starlette.middleware.base import BaseHTTPMiddleware, RequestResponseEndpoint
from starlette.requests import Request
from starlette.responses import Response

logger = logging.getLogger("plateau.access")

SLOW_REQUEST_MS = 5_000.0


class RequestTimingMiddleware(BaseHTTPMiddleware):
    """Log method, path, status and latency of every request."""

    async def dispatch(self, request: Request, call_next: RequestResponseEndpoint) -> Response:
        started = time.perf_counter()
        try:
            response = await call_next(request)
        except Exception:
            self._log(request, 500, started)
            raise
        elapsed = self._log(request, response.status_code, started)
        response.headers["X-Elapsed-Ms"] = f"{elapsed:.2f}"
        return response

    @staticmethod
    def _log(request: Request, status_code: int, started: float) -> float:
        elapsed = (time.perf_counter() - started) * 1000
        level = logging.WARNING if elapsed >= SLOW_REQUEST_MS else logging.INFO
        logger.log(
            level,
            "%s %s | status=%d | elapsed_ms=%.2f",
            request.method,
            request.url.path,
            status_code,
            elapsed,
        )
        return elapsed
