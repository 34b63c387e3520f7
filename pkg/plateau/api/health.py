"""Health check reporting the active budgets and cache counters."""

import time

from fastapi import APIRouter, Depends

from plateau.config import Settings, get_settings
from plateau.models.reports import BudgetSettings, HealthReport
from plateau.store.result_store import result_store

router = APIRouter(tags=["Health"])

_started = time.monotonic()


@router.get(
    "/health",
    summary="Health Check",
    description="Service status, the budgets requests run under, and result cache size.",
    response_model=HealthReport,
)
async def health_check(settings: Settings = Depends(get_settings)) -> HealthReport:
    """Return service status, budgets and cache counters."""
    return HealthReport(
        version=settings.app_version,
        environment=settings.environment,
        uptime_seconds=round(time.monotonic() - _started, 2),
        budgets=BudgetSettings(
            enumeration=settings.enumeration_budget,
            minimality=settings.minimality_budget,
            search=settings.search_budget,
            max_field_size=settings.max_field_size,
            threads=settings.threads,
        ),
        cache=await result_store.get_stats(),
    )
