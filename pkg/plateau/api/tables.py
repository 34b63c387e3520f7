"""Closed-form weight tables."""

from fastapi import APIRouter, Query

from plateau.models.reports import PredictedDistributionModel
from plateau.service import tables_report

router = APIRouter(prefix="/tables", tags=["Tables"])


@router.get(
    "",
    response_model=PredictedDistributionModel,
    summary="Predicted weight distribution",
    description="Evaluates the table matching p and the parity of m+r.",
)
async def get_table(
    p: int = Query(..., ge=2),
    m: int = Query(..., ge=1),
    r: int = Query(..., ge=0),
    epsilon: int = Query(default=1, description="+1 or -1; ignored for p=2."),
    balanced: bool = Query(default=False, description="Whether the dual g is balanced."),
) -> PredictedDistributionModel:
    """Evaluate the closed-form table for (p, m, r)."""
    return tables_report(p, m, r, epsilon, balanced)
