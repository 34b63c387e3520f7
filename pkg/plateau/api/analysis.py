"""
Analysis API router.

POST a function spec to analyse it, build its code or run the full
verification. Results are cached per spec fingerprint; the engine work runs
in the threadpool so the event loop stays responsive.
"""

import logging
from typing import Any, Callable

from fastapi import APIRouter, Depends, Query
from pydantic import BaseModel
from starlette.concurrency import run_in_threadpool

from plateau.config import Settings, get_settings
from plateau.models.reports import AnalysisReport, CodeReport, VerifyReport
from plateau.models.spec import FunctionSpecModel
from plateau.service import analysis_report, code_report, verify_report
from plateau.store.result_store import result_store

logger = logging.getLogger(__name__)

router = APIRouter(tags=["Analysis"])


# ── Helpers ────────────────────────────────────────────────────────────

async def _cached(kind: str, payload: FunctionSpecModel, build: Callable[[], BaseModel]) -> BaseModel:
    fingerprint = payload.fingerprint()
    cached = await result_store.get(kind, fingerprint)
    if cached is not None:
        logger.info("Cache hit | kind=%s | fingerprint=%s", kind, fingerprint[:12])
        return cached
    report = await run_in_threadpool(build)
    await result_store.put(kind, fingerprint, getattr(report, "function", ""), report)
    return report


# ── Endpoints ──────────────────────────────────────────────────────────

@router.post(
    "/analyze",
    response_model=AnalysisReport,
    summary="Analyse a function",
    description="Walsh spectrum summary, plateau amplitude r and regularity of Tr(Ψ).",
)
async def analyze_function(
    payload: FunctionSpecModel,
    spectrum: bool = Query(default=False, description="Include every W_f(b)."),
    settings: Settings = Depends(get_settings),
) -> AnalysisReport:
    """Classify Tr(Ψ): spectrum summary, amplitude r, regularity and dual."""
    kind = "analysis+spectrum" if spectrum else "analysis"
    return await _cached(kind, payload, lambda: analysis_report(payload, settings, spectrum))


@router.post(
    "/codes",
    response_model=CodeReport,
    summary="Build the code C_ψ1",
    description="Parameters, weight distribution and weight enumerator.",
)
async def build_code(
    payload: FunctionSpecModel,
    settings: Settings = Depends(get_settings),
) -> CodeReport:
    """Build C_ψ1 and enumerate its weight distribution."""
    return await _cached("code", payload, lambda: code_report(payload, settings)[0])


@router.post(
    "/verify",
    response_model=VerifyReport,
    summary="Verify a function end to end",
    description="Cross-checks classification, tables, the Walsh weight formula and minimality.",
)
async def verify_function(
    payload: FunctionSpecModel,
    settings: Settings = Depends(get_settings),
) -> VerifyReport:
    """Run every cross-check and report each one by name."""
    return await _cached("verify", payload, lambda: verify_report(payload, settings))


@router.get(
    "/analyses",
    summary="List cached specs",
    response_model=list[dict[str, Any]],
)
async def list_analyses() -> list[dict[str, Any]]:
    """List cached fingerprints with their report kinds and hit counts."""
    return await result_store.list_entries()
