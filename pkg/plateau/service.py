"""
Report builders shared by the CLI and the HTTP API.

Each function takes a validated ``FunctionSpecModel`` plus ``Settings`` and
returns the pydantic report for one command.
"""

import logging

from plateau.config import Settings
from plateau.engine.code_builder import LinearCode, build_code, weight_distribution
from plateau.engine.pipeline import analyze, verify
from plateau.engine.theory import (
    ParityCase,
    PredictedDistribution,
    parity_case,
    predict_binary,
    predict_odd_even,
    predict_odd_odd,
)
from plateau.engine.walsh import evaluate
from plateau.exceptions import NotPlateaued, RangeViolation
from plateau.models.reports import (
    AnalysisReport,
    CodeReport,
    PredictedDistributionModel,
    VerifyReport,
)
from plateau.models.spec import FunctionSpecModel

logger = logging.getLogger(__name__)


def analysis_report(
    model: FunctionSpecModel, settings: Settings, include_spectrum: bool = False
) -> AnalysisReport:
    spec = model.to_spec(settings.max_field_size)
    try:
        analysis = analyze(spec)
    except NotPlateaued as exc:
        logger.info("Not plateaued | %s | %s", spec.describe(), exc)
        return AnalysisReport(spec=model, function=spec.describe(), error=str(exc))
    return AnalysisReport.from_analysis(analysis, include_spectrum)


def code_report(model: FunctionSpecModel, settings: Settings) -> tuple[CodeReport, LinearCode]:
    spec = model.to_spec(settings.max_field_size)
    code = build_code(spec, evaluate(spec))
    wd = weight_distribution(code, budget=settings.enumeration_budget, max_workers=settings.threads)
    return CodeReport.from_code(code, wd), code


def verify_report(model: FunctionSpecModel, settings: Settings) -> VerifyReport:
    spec = model.to_spec(settings.max_field_size)
    result = verify(
        spec,
        budget=settings.enumeration_budget,
        minimality_budget=settings.minimality_budget,
        max_workers=settings.threads,
    )
    return VerifyReport.from_verification(result)


def table_prediction(p: int, m: int, r: int, epsilon: int = 1, balanced: bool = False) -> PredictedDistribution:
    if epsilon not in (1, -1):
        raise RangeViolation(f"epsilon must be +1 or -1, got {epsilon}")
    case = parity_case(p, m, r)
    if case is ParityCase.BINARY_EVEN:
        return predict_binary(m, r)
    if case is ParityCase.ODD_EVEN:
        return predict_odd_even(p, m, r, epsilon, balanced)
    return predict_odd_odd(p, m, r, epsilon, balanced)


def tables_report(p: int, m: int, r: int, epsilon: int = 1, balanced: bool = False) -> PredictedDistributionModel:
    return PredictedDistributionModel.from_prediction(table_prediction(p, m, r, epsilon, balanced))
