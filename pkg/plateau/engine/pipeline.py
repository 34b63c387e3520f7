"""
End-to-end analysis and verification of one function spec.

``analyze`` runs evaluation, the fast transform, plateau detection and
classification. ``verify`` then cross-checks every derived quantity against
an independent computation and collects the results as named checks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from plateau.engine.classifier import (
    PlateauedReport,
    check_binary_distribution,
    classify,
    detect_plateau,
    ng_predicted,
    verify_dual_inverse,
)
from plateau.engine.code_builder import (
    LinearCode,
    WeightDistribution,
    build_code,
    distribution_from_weights,
    pair_weights,
    walsh_weights,
)
from plateau.engine.minimality import (
    MinimalityVerdict,
    all_minimal_exhaustive,
    ashikhmin_barg,
    range_guarantee,
)
from plateau.engine.theory import (
    DistributionDiff,
    PredictedDistribution,
    compare,
    parity_case,
    predict,
    predicted_weight,
    set_cardinalities,
)
from plateau.engine.walsh import (
    FunctionSpec,
    PAryFunction,
    WalshSpectrum,
    evaluate,
    moment,
    walsh_direct,
    walsh_fast,
)
from plateau.exceptions import (
    AnalysisError,
    BudgetExceeded,
    InputError,
    MismatchAt,
    NotWeaklyRegular,
)

logger = logging.getLogger(__name__)

# Largest field for which the quadratic reference transform is run.
DIRECT_TRANSFORM_LIMIT = 3**7


@dataclass(frozen=True, eq=False)
class Analysis:
    spec: FunctionSpec
    function: PAryFunction
    spectrum: WalshSpectrum
    r: int
    report: PlateauedReport


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    WARN = "warn"
    SKIP = "skip"


@dataclass(frozen=True)
class Check:
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass(eq=False)
class Verification:
    analysis: Analysis
    code: LinearCode
    distribution: WeightDistribution
    predicted: PredictedDistribution | None = None
    diff: DistributionDiff | None = None
    minimality: MinimalityVerdict | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status is not CheckStatus.FAIL for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, CheckStatus.PASS if ok else CheckStatus.FAIL, detail))

    def skip(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, CheckStatus.SKIP, detail))

    def warn(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, CheckStatus.WARN, detail))


def analyze(spec: FunctionSpec) -> Analysis:
    """Evaluate, transform and classify; raises NotPlateaued."""
    function = evaluate(spec)
    spectrum = walsh_fast(function)
    r = detect_plateau(spectrum)
    report = classify(spectrum, r)
    logger.debug(
        "Analysis complete | %s | p=%d | m=%d | %s",
        spec.describe(), spec.field.p, spec.field.m, report.summary(),
    )
    return Analysis(spec=spec, function=function, spectrum=spectrum, r=r, report=report)


def theory_applicable(report: PlateauedReport) -> bool:
    """Whether one of the closed-form tables covers this function."""
    try:
        predict(report)
    except (InputError, NotWeaklyRegular):
        return False
    return True


# ── Verification ──────────────────────────────────────────────────────


def verify(
    spec: FunctionSpec,
    *,
    budget: int | None = None,
    minimality_budget: int | None = None,
    max_workers: int = 1,
) -> Verification:
    analysis = analyze(spec)
    field_ = spec.field
    p, m, q = field_.p, field_.m, field_.q
    s, r, report = analysis.spectrum, analysis.r, analysis.report

    code = build_code(spec, analysis.function)
    weights = pair_weights(code, budget=budget, max_workers=max_workers)
    result = Verification(
        analysis=analysis, code=code, distribution=distribution_from_weights(code, weights)
    )

    _check_spectrum(result, s, q)
    _check_dual(result)
    _check_code(result, weights)
    _check_prediction(result, weights)
    _check_minimality(result, minimality_budget)

    failed = [c.name for c in result.checks if c.status is CheckStatus.FAIL]
    logger.info(
        "Verification complete | %s | p=%d | m=%d | r=%d | checks=%d | failed=%s",
        spec.describe(), p, m, r, len(result.checks), failed or "none",
    )
    return result


def _check_spectrum(result: Verification, s: WalshSpectrum, q: int) -> None:
    analysis = result.analysis
    p, m, r = analysis.report.p, analysis.report.m, analysis.r

    result.add("parseval", moment(s, 1) == q * q, f"S1={moment(s, 1)}")
    if q <= DIRECT_TRANSFORM_LIMIT:
        result.add("fast_matches_direct", walsh_direct(analysis.function) == s)
    else:
        result.skip("fast_matches_direct", f"q={q} above {DIRECT_TRANSFORM_LIMIT}")
    result.add("support_size", len(s.support) == p ** (m - r), f"|S|={len(s.support)}")

    zero_pairs, support_pairs = set_cardinalities(p, m, r)
    measured = (p - 1) * len(s.support)
    result.add(
        "set_cardinalities",
        measured == support_pairs and (p - 1) * q - measured == zero_pairs,
        f"#W={zero_pairs}, #W_S={support_pairs}",
    )
    if p == 2:
        result.add("binary_walsh_distribution", check_binary_distribution(s, analysis.function, r))


def _check_dual(result: Verification) -> None:
    report = result.analysis.report
    if report.p != 2 and not report.weakly_regular:
        result.skip("dual_inverse", "non-weakly regular: no constant sign")
        return
    try:
        verify_dual_inverse(report, result.analysis.function)
        result.add("dual_inverse", True)
    except MismatchAt as exc:
        result.add("dual_inverse", False, str(exc))

    if report.p == 2 or report.r == report.m:
        return
    result.add(
        "dual_sign",
        report.dual_sign_measured == report.dual_sign_expected,
        f"measured={report.dual_sign_measured}, expected={report.dual_sign_expected}",
    )
    if report.sign_discrepancy:
        result.warn(
            "sign_bookkeeping",
            f"ε={report.epsilon}, table_sign={report.table_sign}, dual_sign={report.dual_sign_expected}",
        )
    if report.dual_sign_measured is not None:
        expected = ng_predicted(
            report.p, report.m, report.r, report.dual_sign_measured, report.g_balanced
        )
        result.add("dual_value_counts", expected == report.ng_counts, f"N_g={report.ng_counts}")


def _check_code(result: Verification, weights: np.ndarray) -> None:
    code = result.code
    analysis = result.analysis
    field_ = analysis.spec.field
    p, q = field_.p, field_.q

    if code.degenerate:
        result.warn("dimension", f"k={code.k} < m+1={code.expected_k}")
    else:
        result.add("dimension", True, f"k={code.k}")
    result.add(
        "distribution_total",
        result.distribution.total == p**code.k,
        f"Σ A_w={result.distribution.total}",
    )

    result.add("walsh_weight_formula", np.array_equal(walsh_weights(code, analysis.spectrum), weights))

    # every pair hitting a zero of the spectrum has the central weight
    center = q - q // p
    zero_points = np.array([v.is_zero for v in analysis.spectrum.values])
    central = all(
        np.all(weights[alpha][zero_points[points]] == center)
        for alpha, points in _scaled_points(field_).items()
    )
    result.add("zero_points_central_weight", bool(central))


def _scaled_points(field_) -> dict[int, np.ndarray]:
    """For α ∈ F_p^*, the index of α^{-1}·β for every β index."""
    p = field_.p
    return {
        alpha: np.array([(field_.element_at(b) * pow(alpha, -1, p)).index for b in range(field_.q)])
        for alpha in range(1, p)
    }


def _check_prediction(result: Verification, weights: np.ndarray) -> None:
    report = result.analysis.report
    try:
        predicted = predict(report)
    except (InputError, NotWeaklyRegular) as exc:
        result.skip("tables", f"tables not applicable: {exc}")
        return
    result.predicted = predicted
    result.diff = compare(predicted, result.distribution)
    result.add("tables", result.diff.matches, predicted.provenance)

    support = set(report.support)
    g = report.dual_g.table
    agree = all(
        predicted_weight(
            report.p, report.m, report.r, report.epsilon, int(g[point]), True, int(point) in support
        )
        == weights[alpha, b]
        for alpha, points in _scaled_points(result.analysis.spec.field).items()
        for b, point in enumerate(points)
    )
    result.add("pointwise_weights", agree)


def _check_minimality(result: Verification, budget: int | None) -> None:
    report = result.analysis.report
    p, m, r = report.p, report.m, report.r
    try:
        sufficient = ashikhmin_barg(result.distribution, p)
    except AnalysisError as exc:
        result.skip("minimality", str(exc))
        return

    if result.predicted is not None:
        guaranteed = range_guarantee(p, m, r, parity_case(p, m, r))
        result.add(
            "range_guarantee",
            not guaranteed or sufficient,
            f"in_range={guaranteed}, ashikhmin_barg={sufficient}",
        )

    try:
        verdict = all_minimal_exhaustive(result.code, budget=budget)
    except BudgetExceeded as exc:
        result.skip("minimality_exhaustive", str(exc))
        return
    result.minimality = verdict
    result.add(
        "minimality_exhaustive",
        not sufficient or verdict.all_minimal,
        f"ashikhmin_barg={sufficient}, all_minimal={verdict.all_minimal}",
    )
